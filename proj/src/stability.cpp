/// Volume-constrained stability of a rotational CMC sphere.
///
/// The test: with lambda1 < 0 and lambda2 = 0, solve L u = 1 for the unique
/// u orthogonal to the kernel of L. The surface is stable when the integral
/// of u over the surface is >= 0 and unstable when it is < 0; the verdict
/// here keeps a dead band around zero where the numerical sign cannot be
/// trusted. Differentiating the CMC family in H gives the cross-check
///
///   integral of u = -A'(H) / (4H),
///
/// against the closed-form area derivative.
///
/// The source 1 is axisymmetric and L preserves Fourier modes, so u lives
/// entirely in the m = 0 sector; the modes m >= 1 of the kernel integrate
/// to zero in theta and impose no constraint. The m = 0 solve is a bordered
/// symmetric tridiagonal system with the kernel vector as the border.
#include "cmcstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <thread>
#include <utility>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "cmcstab/closed_form.hpp"
#include "cmcstab/errors.hpp"

namespace cmcstab {

namespace {

constexpr double kVerdictTolFloor = 1e-10;
// Zero-mean tolerance for kernel functions, relative to ||g|| sqrt(area).
constexpr double kKernelMeanTol = 1e-3;

struct RatedEigenvalue {
  double lambda, tol;
};

// All eigenvalues of the spectrum with their zero thresholds, multiplicity
// expanded, ascending.
std::vector<RatedEigenvalue> rated_eigenvalues(const SpectrumResult& spectrum) {
  std::vector<RatedEigenvalue> merged;
  for (std::size_t m = 0; m < spectrum.per_mode.size(); ++m) {
    const int multiplicity = m == 0 ? 1 : 2;
    for (std::size_t i = 0; i < spectrum.per_mode[m].size(); ++i) {
      for (int c = 0; c < multiplicity; ++c) {
        merged.push_back({spectrum.per_mode[m][i], spectrum.zero_thresholds[m][i]});
      }
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const RatedEigenvalue& a, const RatedEigenvalue& b) { return a.lambda < b.lambda; });
  return merged;
}

struct BorderedSolution {
  Eigen::VectorXd u_hat;
  double multiplier;
};

// Solves [[T, g], [g^T, 0]] [u_hat; mu] = [b; 0] for the symmetric
// tridiagonal T given by (diag, sub).
BorderedSolution solve_bordered(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                                const Eigen::VectorXd& g, const Eigen::VectorXd& b) {
  const Eigen::Index n = diag.size();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(5 * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, diag[i]);
    triplets.emplace_back(i, n, g[i]);
    triplets.emplace_back(n, i, g[i]);
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    triplets.emplace_back(i, i + 1, sub[i]);
    triplets.emplace_back(i + 1, i, sub[i]);
  }
  Eigen::SparseMatrix<double> A(n + 1, n + 1);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("solve_bordered: factorization of the constrained system failed");
  }
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = b;
  rhs[n] = 0.0;
  const Eigen::VectorXd sol = solver.solve(rhs);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("solve_bordered: back substitution failed");
  }
  return {sol.head(n), sol[n]};
}

// Self-contained integral of u on one grid: extracts the kernel vector of
// the m = 0 tridiagonal matrix and runs the bordered solve. Used for the
// coarse-grid repeat behind the error estimate of u_integral.
double u_integral_on_grid(const ModeGrid& grid) {
  Eigen::VectorXd diag, sub;
  mode_tridiagonal(grid, 0, diag, sub);
  const Eigen::VectorXd evals = tridiagonal_eigenvalues(diag, sub);
  Eigen::Index nearest = 0;
  evals.cwiseAbs().minCoeff(&nearest);
  const Eigen::VectorXd g = tridiagonal_eigenvector(diag, sub, evals[nearest]);
  const Eigen::VectorXd sqrt_w = (grid.rho_node * grid.h).sqrt().matrix();
  const BorderedSolution sol = solve_bordered(diag, sub, g, -sqrt_w);
  return 2.0 * M_PI * sqrt_w.dot(sol.u_hat);
}

StabilityVerdict classify_profile(const ProfileCurve& profile, const KoisoOptions& options) {
  const SpectrumResult spectrum =
      assemble_spectrum(profile, options.m_max, options.k_per_mode, options.zero_tol);
  const std::vector<RatedEigenvalue> merged = rated_eigenvalues(spectrum);

  StabilityVerdict out;
  out.space = profile.space;
  out.H = profile.mean_curvature;
  out.lambda1 = spectrum.lambda1;
  out.lambda2 = spectrum.lambda2;
  out.kernel_dim = spectrum.kernel_dim;
  out.negative_count = spectrum.negative_count;
  out.n_samples = profile.n();

  if (!(merged[0].lambda < -merged[0].tol)) {
    throw HypothesisViolationError(
        "koiso_classify: first eigenvalue " + std::to_string(merged[0].lambda) +
            " is not negative beyond its threshold " + std::to_string(merged[0].tol),
        spectrum.lambda1, spectrum.lambda2);
  }
  if (!(std::abs(merged[1].lambda) <= merged[1].tol)) {
    throw HypothesisViolationError(
        "koiso_classify: second eigenvalue " + std::to_string(merged[1].lambda) +
            " is not zero within its threshold " + std::to_string(merged[1].tol),
        spectrum.lambda1, spectrum.lambda2);
  }

  // Zero-mean check for the kernel. Modes m >= 1 integrate to zero in theta
  // identically, so only the m = 0 kernel function needs measuring. In the
  // rho-weighted normalization Sum w g^2 = 1, the bound
  // |Int g dA| < tol ||g|| sqrt(area) reduces to |Sum w g| < tol sqrt(Sum w).
  if (spectrum.m0_kernel.size() > 0) {
    const ModeProblem m0 = build_mode_problem(profile, 0);
    const Eigen::ArrayXd w = m0.fine.rho_node * m0.fine.h;
    const double mean = (w * spectrum.m0_kernel).sum();
    const double bound = kKernelMeanTol * std::sqrt(w.sum());
    if (!(std::abs(mean) < bound)) {
      throw HypothesisViolationError(
          "koiso_classify: m = 0 kernel function has weighted mean " + std::to_string(mean) +
              ", beyond the zero-mean bound " + std::to_string(bound),
          spectrum.lambda1, spectrum.lambda2);
    }
  }

  const LuSolution fine = solve_lu_equals_one(profile, spectrum);

  const ProfileCurve coarse_profile =
      generate_profile(profile.space, profile.mean_curvature, (profile.n() + 1) / 2);
  const ModeProblem coarse_m0 = build_mode_problem(coarse_profile, 0);
  const double coarse_integral = u_integral_on_grid(coarse_m0.fine);

  const ModeProblem fine_m0 = build_mode_problem(profile, 0);
  const double ratio = coarse_m0.fine.h / fine_m0.fine.h;
  out.u_integral = fine.u_integral;
  out.u_integral_error_estimate =
      std::abs(fine.u_integral - coarse_integral) / (ratio * ratio - 1.0);
  out.tol = options.verdict_tol > 0.0
                ? options.verdict_tol
                : std::max(100.0 * out.u_integral_error_estimate, kVerdictTolFloor);

  if (out.u_integral >= out.tol) {
    out.verdict = Verdict::Stable;
  } else if (out.u_integral <= -out.tol) {
    out.verdict = Verdict::Unstable;
  } else {
    out.verdict = Verdict::Marginal;
  }

  out.dAdH = dA_dH(profile.space, profile.mean_curvature);
  out.consistency_residual = std::abs(out.u_integral + out.dAdH / (4.0 * profile.mean_curvature));
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "Stable";
    case Verdict::Unstable:
      return "Unstable";
    case Verdict::Marginal:
      return "Marginal";
  }
  return "Marginal";
}

LuSolution solve_lu_equals_one(const ProfileCurve& profile, const SpectrumResult& spectrum) {
  if (spectrum.m0_kernel.size() == 0) {
    throw NumericalError(
        "solve_lu_equals_one: spectrum carries no m = 0 kernel function; "
        "the orthogonality constraint cannot be imposed");
  }
  const ModeProblem m0 = build_mode_problem(profile, 0);
  const Eigen::Index n = m0.fine.size();
  if (spectrum.m0_kernel.size() != n) {
    throw NumericalError("solve_lu_equals_one: kernel function resolution does not match profile");
  }

  Eigen::VectorXd diag, sub;
  mode_tridiagonal(m0.fine, 0, diag, sub);

  const Eigen::ArrayXd sqrt_w = (m0.fine.rho_node * m0.fine.h).sqrt();
  // The kernel function is rho-weighted normalized, so its symmetrized image
  // is a Euclidean unit vector.
  const Eigen::VectorXd g = (spectrum.m0_kernel * sqrt_w).matrix();
  // T discretizes -L, so L u = 1 reads T u_hat = -sqrt(w) after
  // symmetrization.
  const Eigen::VectorXd b = -sqrt_w.matrix();

  const BorderedSolution sol = solve_bordered(diag, sub, g, b);

  LuSolution out;
  out.u = sol.u_hat.array() / sqrt_w;
  out.multiplier = sol.multiplier;
  out.u_integral = -2.0 * M_PI * b.dot(sol.u_hat);
  return out;
}

StabilityVerdict koiso_classify(SpaceForm space, double H, const KoisoOptions& options) {
  const ProfileCurve profile = generate_profile(space, H, options.n_samples);
  return classify_profile(profile, options);
}

StabilityVerdict classify_horizontal_slice(const KoisoOptions& options) {
  const ProfileCurve profile = horizontal_slice(options.n_samples);
  const SpectrumResult spectrum =
      assemble_spectrum(profile, options.m_max, options.k_per_mode, options.zero_tol);
  const std::vector<RatedEigenvalue> merged = rated_eigenvalues(spectrum);

  // The slice has q = 0, so L is the Laplacian: lambda1 = 0 on the
  // constants and the sign test is vacuous (L u = 1 has no solution on a
  // closed surface). Slices are stable outright.
  if (!(std::abs(merged[0].lambda) <= merged[0].tol)) {
    throw NumericalError("classify_horizontal_slice: lowest eigenvalue " +
                         std::to_string(merged[0].lambda) + " is not zero within tolerance");
  }

  StabilityVerdict out;
  out.space = profile.space;
  out.H = 0.0;
  out.verdict = Verdict::Stable;
  out.lambda1 = spectrum.lambda1;
  out.lambda2 = spectrum.lambda2;
  out.kernel_dim = spectrum.kernel_dim;
  out.negative_count = spectrum.negative_count;
  out.u_integral = std::numeric_limits<double>::quiet_NaN();
  out.dAdH = std::numeric_limits<double>::quiet_NaN();
  out.consistency_residual = std::numeric_limits<double>::quiet_NaN();
  out.tol = std::numeric_limits<double>::quiet_NaN();
  out.u_integral_error_estimate = std::numeric_limits<double>::quiet_NaN();
  out.n_samples = profile.n();
  return out;
}

std::vector<StabilityVerdict> stability_sweep(SpaceForm space, const std::vector<double>& H_grid,
                                              const KoisoOptions& options, int n_workers) {
  std::vector<StabilityVerdict> results(H_grid.size());
  if (H_grid.empty()) return results;

  unsigned workers = n_workers > 0 ? static_cast<unsigned>(n_workers)
                                   : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, H_grid.size());

  if (workers <= 1) {
    for (std::size_t i = 0; i < H_grid.size(); ++i) {
      results[i] = koiso_classify(space, H_grid[i], options);
    }
  } else {
    // Fan out in fixed-size batches and collect in grid order; every point
    // runs the same deterministic code path, so the reduction is identical
    // to the serial sweep.
    for (std::size_t start = 0; start < H_grid.size(); start += workers) {
      const std::size_t stop = std::min(start + workers, H_grid.size());
      std::vector<std::future<StabilityVerdict>> batch;
      batch.reserve(stop - start);
      for (std::size_t i = start; i < stop; ++i) {
        batch.push_back(std::async(std::launch::async, koiso_classify, space, H_grid[i], options));
      }
      for (std::size_t i = start; i < stop; ++i) {
        results[i] = batch[i - start].get();
      }
    }
  }

  // On S2xR the sweep must be consistent with the closed-form critical
  // mean curvature: an Unstable-to-Stable transition bracketed by the grid
  // has to contain it.
  if (space == SpaceForm::S2xR) {
    double last_unstable = -std::numeric_limits<double>::infinity();
    double first_stable = std::numeric_limits<double>::infinity();
    for (const StabilityVerdict& v : results) {
      if (v.verdict == Verdict::Unstable) last_unstable = std::max(last_unstable, v.H);
      if (v.verdict == Verdict::Stable) first_stable = std::min(first_stable, v.H);
    }
    if (std::isfinite(last_unstable) && std::isfinite(first_stable)) {
      if (last_unstable > first_stable) {
        throw NumericalError("stability_sweep: verdicts are not monotone in H (Unstable at " +
                             std::to_string(last_unstable) + " above Stable at " +
                             std::to_string(first_stable) + ")");
      }
      const double h0 = find_H0();
      if (!(last_unstable <= h0 && h0 <= first_stable)) {
        throw NumericalError("stability_sweep: transition bracket [" +
                             std::to_string(last_unstable) + ", " + std::to_string(first_stable) +
                             "] does not contain the critical mean curvature " +
                             std::to_string(h0));
      }
    }
  }
  return results;
}

void to_json(nlohmann::json& j, const StabilityVerdict& verdict) {
  j = nlohmann::json{{"space", to_string(verdict.space)},
                     {"H", verdict.H},
                     {"verdict", to_string(verdict.verdict)},
                     {"lambda1", verdict.lambda1},
                     {"lambda2", verdict.lambda2},
                     {"kernel_dim", verdict.kernel_dim},
                     {"negative_count", verdict.negative_count},
                     {"u_integral", verdict.u_integral},
                     {"dAdH", verdict.dAdH},
                     {"consistency_residual", verdict.consistency_residual},
                     {"tol", verdict.tol},
                     {"u_integral_error_estimate", verdict.u_integral_error_estimate},
                     {"n_samples", verdict.n_samples}};
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityVerdict>& verdicts) {
  out << "H,verdict,lambda1,lambda2,u_integral,dAdH,consistency_residual\n";
  char buf[256];
  for (const StabilityVerdict& v : verdicts) {
    std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g\n", v.H,
                  to_string(v.verdict).c_str(), v.lambda1, v.lambda2, v.u_integral, v.dAdH,
                  v.consistency_residual);
    out << buf;
  }
}

}  // namespace cmcstab
