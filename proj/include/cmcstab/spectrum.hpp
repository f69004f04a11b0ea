#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <limits>
#include <vector>

#include "cmcstab/profile.hpp"

namespace cmcstab {

/// Staggered finite-difference grid for one surface: nodes at cell
/// midpoints, weights rho at nodes and at cell edges. The pole edges carry
/// rho = 0, which closes the flux form of the operator without explicit
/// boundary rows.
struct ModeGrid {
  double h = 0.0;            // cell width
  Eigen::ArrayXd node_s;     // cell midpoints, size N
  Eigen::ArrayXd rho_node;   // weight at nodes
  Eigen::ArrayXd q_node;     // Jacobi potential at nodes
  Eigen::ArrayXd rho_edge;   // weight at edges, size N + 1, zero at poles
  Eigen::Index size() const { return node_s.size(); }
};

/// Discretization of the Jacobi operator restricted to the Fourier mode
/// e^{i m theta}:
///
///   L_m f = -(rho f')' / rho + (m^2 / rho^2) f - q f ,
///
/// acting on profile functions f(s), in the rho-weighted inner product.
/// Eigenvalues follow the convention L g + lambda g = 0, so lambda is an
/// eigenvalue of L_m above. Two resolutions of the same problem are kept;
/// comparing them yields Richardson error estimates for the eigenvalues.
struct ModeProblem {
  int m = 0;
  SpaceForm space = SpaceForm::S2xR;
  double H = 0.0;
  ModeGrid fine;
  ModeGrid coarse;
};

/// Eigenpairs of one mode problem. values/error_estimates have k entries;
/// vectors holds the corresponding eigenfunctions at the fine nodes,
/// normalized in the rho-weighted inner product with canonical sign.
struct ModeEigenpairs {
  Eigen::VectorXd values;
  Eigen::VectorXd coarse_values;
  Eigen::VectorXd error_estimates;
  Eigen::MatrixXd vectors;
};

/// Combined spectrum of modes m = 0..m_max, with eigenvalues of modes
/// m >= 1 counted twice. kernel_dim and negative_count use per-eigenvalue
/// zero thresholds (50x the Richardson estimate unless overridden).
struct SpectrumResult {
  SpaceForm space = SpaceForm::S2xR;
  double H = 0.0;
  int m_max = 0;
  Eigen::Index k_per_mode = 0;
  Eigen::Index n_samples = 0;

  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int kernel_dim = 0;
  int negative_count = 0;

  std::vector<std::vector<double>> per_mode;
  std::vector<std::vector<double>> error_estimates;
  std::vector<std::vector<double>> zero_thresholds;

  /// Lowest eigenvalue of the first omitted mode m_max + 1; certifies that
  /// no negative or kernel eigenvalue hides beyond the cutoff.
  double omitted_mode_min = std::numeric_limits<double>::quiet_NaN();

  /// Kernel eigenfunction of the m = 0 problem at the fine nodes; empty when
  /// no m = 0 eigenvalue falls within its zero threshold. On a rotational
  /// sphere this is the vertical translation function, on a slice the
  /// constant.
  Eigen::ArrayXd m0_kernel;
  double m0_kernel_eigenvalue = std::numeric_limits<double>::quiet_NaN();
};

/// Builds the staggered discretization of mode m from a profile, at the
/// profile resolution and at a halved resolution regenerated from the same
/// construction. Requires m >= 0 and at least 32 profile samples.
ModeProblem build_mode_problem(const ProfileCurve& profile, int m);

/// Applies the unsymmetrized mode operator to node values on the fine grid.
Eigen::ArrayXd apply_mode_operator(const ModeProblem& problem, const Eigen::ArrayXd& f);

/// Symmetric tridiagonal matrix of the mode operator on one grid, in the
/// sqrt(rho)-transformed variables.
void mode_tridiagonal(const ModeGrid& grid, int m, Eigen::VectorXd& diag,
                      Eigen::VectorXd& subdiag);

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
Eigen::VectorXd tridiagonal_eigenvalues(const Eigen::VectorXd& diag,
                                        const Eigen::VectorXd& subdiag);

/// Unit eigenvector for an isolated eigenvalue of a symmetric tridiagonal
/// matrix, by inverse iteration with a pivoted tridiagonal factorization.
/// Deterministic for fixed inputs.
Eigen::VectorXd tridiagonal_eigenvector(const Eigen::VectorXd& diag,
                                        const Eigen::VectorXd& subdiag, double lambda);

/// k lowest eigenpairs of one mode problem with Richardson error estimates.
/// Requires 1 <= k < coarse grid size.
ModeEigenpairs eigensolve(const ModeProblem& problem, Eigen::Index k);

/// Solves modes 0..m_max and merges them into a SpectrumResult. zero_tol <= 0
/// selects the per-eigenvalue default threshold. Throws CertificationError
/// when the first omitted mode is not clearly positive.
SpectrumResult assemble_spectrum(const ProfileCurve& profile, int m_max,
                                 Eigen::Index k_per_mode, double zero_tol = 0.0);

void to_json(nlohmann::json& j, const SpectrumResult& result);

}  // namespace cmcstab
