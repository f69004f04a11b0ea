#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmcstab/profile.hpp"
#include "cmcstab/spectrum.hpp"

namespace cmcstab {

enum class Verdict { Stable, Unstable, Marginal };

std::string to_string(Verdict v);

/// Outcome of the volume-constrained stability test for one surface.
///
/// u is the unique axisymmetric solution of L u = 1 orthogonal to the
/// kernel of L; the verdict is the sign of u_integral = the integral of u
/// over the surface, with Marginal when |u_integral| <= tol. The closed-form
/// cross-check is the identity u_integral = -dAdH / (4H), recorded as
/// consistency_residual = |u_integral + dAdH / (4H)|.
///
/// For a horizontal slice the first eigenvalue is 0, the sign test does not
/// apply, and u_integral, dAdH, consistency_residual are NaN.
struct StabilityVerdict {
  SpaceForm space = SpaceForm::S2xR;
  double H = 0.0;
  Verdict verdict = Verdict::Marginal;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int kernel_dim = 0;
  int negative_count = 0;
  double u_integral = 0.0;
  double dAdH = 0.0;
  double consistency_residual = 0.0;
  /// Verdict dead band: 100x the estimated discretization error of
  /// u_integral (floored), or the overriding value passed by the caller.
  double tol = 0.0;
  double u_integral_error_estimate = 0.0;
  Eigen::Index n_samples = 0;
};

struct KoisoOptions {
  Eigen::Index n_samples = 2000;
  int m_max = 8;
  Eigen::Index k_per_mode = 4;
  /// Zero threshold override for eigenvalue classification; <= 0 selects the
  /// per-eigenvalue Richardson default.
  double zero_tol = 0.0;
  /// Verdict dead-band override; <= 0 selects 100x the estimated error of
  /// u_integral.
  double verdict_tol = 0.0;
};

/// Solution of L u = 1 on the m = 0 node grid, orthogonal to the m = 0
/// kernel function in the rho-weighted inner product.
struct LuSolution {
  Eigen::ArrayXd u;     // node values on the fine m = 0 grid
  double multiplier;    // Lagrange multiplier of the kernel constraint
  double u_integral;    // integral of u over the surface
};

/// Solves L u = 1 subject to u orthogonal to the m = 0 kernel function of
/// the spectrum, as a bordered symmetric tridiagonal system. The modes
/// m >= 1 contribute nothing: the source is axisymmetric and L preserves
/// Fourier modes. Requires spectrum.m0_kernel to be present (NumericalError
/// otherwise).
LuSolution solve_lu_equals_one(const ProfileCurve& profile, const SpectrumResult& spectrum);

/// Full stability test for a rotational sphere: profile, spectrum,
/// hypothesis verification (lambda1 < 0, lambda2 = 0, kernel functions of
/// zero mean), the L u = 1 solve on two resolutions, and the sign verdict.
/// Throws HypothesisViolationError when the spectral hypotheses fail beyond
/// tolerance and propagates existence and certification errors.
StabilityVerdict koiso_classify(SpaceForm space, double H, const KoisoOptions& options = {});

/// Dedicated branch for the horizontal slice, which is stable with
/// lambda1 = 0; the sign test does not apply to it.
StabilityVerdict classify_horizontal_slice(const KoisoOptions& options = {});

/// Classifies every grid point, fanning out across workers and reducing in
/// grid order, so results are identical to the serial run. On S2xR a
/// Unstable-to-Stable transition bracketed by the grid is checked to
/// contain the critical mean curvature (NumericalError otherwise).
/// n_workers <= 0 selects the hardware concurrency.
std::vector<StabilityVerdict> stability_sweep(SpaceForm space, const std::vector<double>& H_grid,
                                              const KoisoOptions& options = {}, int n_workers = 0);

void to_json(nlohmann::json& j, const StabilityVerdict& verdict);

/// CSV rows `H,verdict,lambda1,lambda2,u_integral,dAdH,consistency_residual`.
void write_stability_csv(std::ostream& out, const std::vector<StabilityVerdict>& verdicts);

}  // namespace cmcstab
