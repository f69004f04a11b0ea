/// Fourier-mode discretization of the Jacobi operator L = Laplacian + q on a
/// rotational sphere, and its spectrum.
///
/// Separating u = f(s) e^{i m theta} turns L u + lambda u = 0 into the
/// singular Sturm-Liouville problem
///
///   -(rho f')' / rho + (m^2 / rho^2) f - q f = lambda f ,   rho = sn(r),
///
/// on (0, S). The flux form is discretized on a staggered grid whose nodes
/// sit at cell midpoints; the flux through a cell edge carries the edge
/// value of rho, which vanishes at the poles, so the regular (m = 0) and
/// Dirichlet (m >= 1) endpoint behavior is built into the matrix rather
/// than imposed. Substituting g = sqrt(rho) f symmetrizes the matrix, and
/// eigenvalues of each mode are simple.
#include "cmcstab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "cmcstab/errors.hpp"

namespace cmcstab {

namespace {

constexpr Eigen::Index kMinSamplesForModes = 32;
// Floor for the zero-classification threshold, below which estimates are
// dominated by round-off rather than discretization error.
constexpr double kThresholdFloor = 1e-10;

ModeGrid make_grid(const ProfileCurve& profile) {
  ModeGrid g;
  const Eigen::Index cells = profile.n() - 1;
  g.h = profile.total_arclength / static_cast<double>(cells);
  g.node_s = 0.5 * (profile.s.head(cells) + profile.s.tail(cells));
  g.rho_node = 0.5 * (profile.rho.head(cells) + profile.rho.tail(cells));
  g.q_node = 0.5 * (profile.q.head(cells) + profile.q.tail(cells));
  g.rho_edge = profile.rho;
  return g;
}

ProfileCurve regenerate(const ProfileCurve& profile, Eigen::Index n_samples) {
  if (profile.kind == ProfileCurve::Kind::HorizontalSlice) {
    return horizontal_slice(n_samples);
  }
  return generate_profile(profile.space, profile.mean_curvature, n_samples);
}

// Pivoted LU factorization of a tridiagonal matrix, LAPACK gttrf layout:
// dl holds multipliers, d the pivots, du/du2 the two superdiagonals.
struct TridiagLU {
  Eigen::VectorXd dl, d, du, du2;
  std::vector<bool> swapped;
};

TridiagLU factor_tridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                             double shift) {
  const Eigen::Index n = diag.size();
  TridiagLU lu;
  lu.d = diag.array() - shift;
  lu.dl = sub;
  lu.du = sub;
  lu.du2 = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 2, 0));
  lu.swapped.assign(std::max<Eigen::Index>(n - 1, 0), false);

  // Guard for exactly singular pivots; inverse iteration only needs the
  // factorization to be nonsingular at round-off scale.
  const double tiny = std::numeric_limits<double>::epsilon() *
                      (lu.d.cwiseAbs().maxCoeff() + 2.0 * (n > 1 ? sub.cwiseAbs().maxCoeff() : 0.0) + 1.0);

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(lu.d[i]) >= std::abs(lu.dl[i])) {
      if (std::abs(lu.d[i]) < tiny) lu.d[i] = std::copysign(tiny, lu.d[i] == 0.0 ? 1.0 : lu.d[i]);
      const double fact = lu.dl[i] / lu.d[i];
      lu.dl[i] = fact;
      lu.d[i + 1] -= fact * lu.du[i];
    } else {
      const double fact = lu.d[i] / lu.dl[i];
      lu.d[i] = lu.dl[i];
      lu.dl[i] = fact;
      const double temp = lu.du[i];
      lu.du[i] = lu.d[i + 1];
      lu.d[i + 1] = temp - fact * lu.d[i + 1];
      if (i + 2 < n) {
        lu.du2[i] = lu.du[i + 1];
        lu.du[i + 1] *= -fact;
      }
      lu.swapped[i] = true;
    }
  }
  if (std::abs(lu.d[n - 1]) < tiny) {
    lu.d[n - 1] = std::copysign(tiny, lu.d[n - 1] == 0.0 ? 1.0 : lu.d[n - 1]);
  }
  return lu;
}

Eigen::VectorXd solve_tridiagonal(const TridiagLU& lu, Eigen::VectorXd b) {
  const Eigen::Index n = lu.d.size();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (!lu.swapped[i]) {
      b[i + 1] -= lu.dl[i] * b[i];
    } else {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - lu.dl[i] * b[i];
    }
  }
  b[n - 1] /= lu.d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - lu.du[n - 2] * b[n - 1]) / lu.d[n - 2];
  for (Eigen::Index i = n - 3; i >= 0; --i) {
    b[i] = (b[i] - lu.du[i] * b[i + 1] - lu.du2[i] * b[i + 2]) / lu.d[i];
  }
  return b;
}

// Residual ||T x - lambda x||_inf for a symmetric tridiagonal T.
double tridiagonal_residual(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                            double lambda, const Eigen::VectorXd& x) {
  const Eigen::Index n = diag.size();
  double res = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = (diag[i] - lambda) * x[i];
    if (i > 0) v += sub[i - 1] * x[i - 1];
    if (i + 1 < n) v += sub[i] * x[i + 1];
    res = std::max(res, std::abs(v));
  }
  return res;
}

// Deterministic start vector; a fixed linear congruential stream keeps
// repeated runs bitwise identical.
Eigen::VectorXd start_vector(Eigen::Index n, unsigned seed) {
  Eigen::VectorXd v(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL + seed;
  for (Eigen::Index i = 0; i < n; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    v[i] = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }
  return v.normalized();
}

}  // namespace

ModeProblem build_mode_problem(const ProfileCurve& profile, int m) {
  if (m < 0) throw std::invalid_argument("build_mode_problem: m must be nonnegative");
  if (profile.n() < kMinSamplesForModes) {
    throw std::invalid_argument("build_mode_problem: profile needs at least 32 samples");
  }
  ModeProblem problem;
  problem.m = m;
  problem.space = profile.space;
  problem.H = profile.mean_curvature;
  problem.fine = make_grid(profile);
  const ProfileCurve coarse_profile = regenerate(profile, (profile.n() + 1) / 2);
  problem.coarse = make_grid(coarse_profile);
  return problem;
}

void mode_tridiagonal(const ModeGrid& grid, int m, Eigen::VectorXd& diag,
                      Eigen::VectorXd& subdiag) {
  const Eigen::Index n = grid.size();
  const double h2 = grid.h * grid.h;
  const double m2 = static_cast<double>(m) * static_cast<double>(m);
  diag.resize(n);
  subdiag.resize(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    diag[i] = (grid.rho_edge[i] + grid.rho_edge[i + 1]) / (grid.rho_node[i] * h2) +
              m2 / (grid.rho_node[i] * grid.rho_node[i]) - grid.q_node[i];
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    subdiag[i] = -grid.rho_edge[i + 1] / (h2 * std::sqrt(grid.rho_node[i] * grid.rho_node[i + 1]));
  }
}

Eigen::ArrayXd apply_mode_operator(const ModeProblem& problem, const Eigen::ArrayXd& f) {
  const ModeGrid& g = problem.fine;
  const Eigen::Index n = g.size();
  if (f.size() != n) throw std::invalid_argument("apply_mode_operator: size mismatch");
  const double h2 = g.h * g.h;
  const double m2 = static_cast<double>(problem.m) * static_cast<double>(problem.m);
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double flux = (g.rho_edge[i] + g.rho_edge[i + 1]) * f[i];
    if (i > 0) flux -= g.rho_edge[i] * f[i - 1];
    if (i + 1 < n) flux -= g.rho_edge[i + 1] * f[i + 1];
    out[i] = flux / (g.rho_node[i] * h2) +
             (m2 / (g.rho_node[i] * g.rho_node[i]) - g.q_node[i]) * f[i];
  }
  return out;
}

Eigen::VectorXd tridiagonal_eigenvalues(const Eigen::VectorXd& diag,
                                        const Eigen::VectorXd& subdiag) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("tridiagonal_eigenvalues: QL iteration did not converge");
  }
  return solver.eigenvalues();
}

Eigen::VectorXd tridiagonal_eigenvector(const Eigen::VectorXd& diag,
                                        const Eigen::VectorXd& subdiag, double lambda) {
  const Eigen::Index n = diag.size();
  const double scale = diag.cwiseAbs().maxCoeff() +
                       (n > 1 ? 2.0 * subdiag.cwiseAbs().maxCoeff() : 0.0) + std::abs(lambda);
  const double tol = 1024.0 * std::numeric_limits<double>::epsilon() * scale;
  const TridiagLU lu = factor_tridiagonal(diag, subdiag, lambda);

  for (unsigned seed = 0; seed < 3; ++seed) {
    Eigen::VectorXd x = start_vector(n, seed);
    for (int iter = 0; iter < 8; ++iter) {
      Eigen::VectorXd y = solve_tridiagonal(lu, x);
      const double norm = y.norm();
      if (!std::isfinite(norm) || norm == 0.0) break;
      x = y / norm;
      if (tridiagonal_residual(diag, subdiag, lambda, x) <= tol) {
        Eigen::Index imax = 0;
        x.cwiseAbs().maxCoeff(&imax);
        if (x[imax] < 0.0) x = -x;
        return x;
      }
    }
  }
  throw NumericalError("tridiagonal_eigenvector: inverse iteration did not converge at lambda = " +
                       std::to_string(lambda));
}

ModeEigenpairs eigensolve(const ModeProblem& problem, Eigen::Index k) {
  const Eigen::Index n_fine = problem.fine.size();
  const Eigen::Index n_coarse = problem.coarse.size();
  if (k < 1 || k >= std::min(n_fine, n_coarse)) {
    throw std::invalid_argument("eigensolve: k must satisfy 1 <= k < grid size");
  }

  Eigen::VectorXd diag, sub, cdiag, csub;
  mode_tridiagonal(problem.fine, problem.m, diag, sub);
  mode_tridiagonal(problem.coarse, problem.m, cdiag, csub);

  const Eigen::VectorXd fine_all = tridiagonal_eigenvalues(diag, sub);
  const Eigen::VectorXd coarse_all = tridiagonal_eigenvalues(cdiag, csub);

  ModeEigenpairs out;
  out.values = fine_all.head(k);
  out.coarse_values = coarse_all.head(k);

  // A second-order scheme has error C h^2, so the defect against the
  // coarser grid bounds the fine-grid error after dividing by
  // (h_c / h_f)^2 - 1.
  const double ratio = (problem.coarse.h / problem.fine.h) * (problem.coarse.h / problem.fine.h) - 1.0;
  out.error_estimates = (out.values - out.coarse_values).cwiseAbs() / ratio;

  const Eigen::ArrayXd sqrt_w = (problem.fine.rho_node * problem.fine.h).sqrt();
  out.vectors.resize(n_fine, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::VectorXd g = tridiagonal_eigenvector(diag, sub, out.values[i]);
    if (i > 0 && std::abs(out.values[i] - out.values[i - 1]) <
                     1e-7 * (std::abs(out.values[i]) + 1.0)) {
      const Eigen::VectorXd prev = out.vectors.col(i - 1).cwiseProduct(sqrt_w.matrix());
      g -= prev * (prev.dot(g) / prev.squaredNorm());
      g.normalize();
    }
    out.vectors.col(i) = g.array() / sqrt_w;
  }
  return out;
}

SpectrumResult assemble_spectrum(const ProfileCurve& profile, int m_max,
                                 Eigen::Index k_per_mode, double zero_tol) {
  if (m_max < 2) throw std::invalid_argument("assemble_spectrum: m_max must be at least 2");
  if (k_per_mode < 2) throw std::invalid_argument("assemble_spectrum: k_per_mode must be at least 2");

  SpectrumResult result;
  result.space = profile.space;
  result.H = profile.mean_curvature;
  result.m_max = m_max;
  result.k_per_mode = k_per_mode;
  result.n_samples = profile.n();
  result.per_mode.resize(m_max + 1);
  result.error_estimates.resize(m_max + 1);
  result.zero_thresholds.resize(m_max + 1);

  const auto threshold = [zero_tol](double estimate) {
    return zero_tol > 0.0 ? zero_tol : std::max(50.0 * estimate, kThresholdFloor);
  };

  struct Entry {
    double lambda, tol;
  };
  std::vector<Entry> merged;

  for (int m = 0; m <= m_max; ++m) {
    const ModeProblem problem = build_mode_problem(profile, m);
    const ModeEigenpairs eig = eigensolve(problem, k_per_mode);
    auto& values = result.per_mode[m];
    auto& estimates = result.error_estimates[m];
    auto& tols = result.zero_thresholds[m];
    for (Eigen::Index i = 0; i < k_per_mode; ++i) {
      values.push_back(eig.values[i]);
      estimates.push_back(eig.error_estimates[i]);
      tols.push_back(threshold(eig.error_estimates[i]));
      const int multiplicity = m == 0 ? 1 : 2;
      for (int c = 0; c < multiplicity; ++c) merged.push_back({eig.values[i], tols.back()});
    }
    if (m == 0) {
      Eigen::Index best = -1;
      for (Eigen::Index i = 0; i < k_per_mode; ++i) {
        if (std::abs(eig.values[i]) <= tols[i] &&
            (best < 0 || std::abs(eig.values[i]) < std::abs(eig.values[best]))) {
          best = i;
        }
      }
      if (best >= 0) {
        result.m0_kernel = eig.vectors.col(best).array();
        result.m0_kernel_eigenvalue = eig.values[best];
      }
    }
  }

  std::sort(merged.begin(), merged.end(),
            [](const Entry& a, const Entry& b) { return a.lambda < b.lambda; });
  result.lambda1 = merged.front().lambda;
  result.lambda2 = merged[1].lambda;
  for (const Entry& e : merged) {
    if (e.lambda < -e.tol) ++result.negative_count;
    if (std::abs(e.lambda) <= e.tol) ++result.kernel_dim;
  }

  // The omitted mode m_max + 1 dominates all higher modes, so a clearly
  // positive minimum there certifies that no further negative or zero
  // eigenvalue exists.
  const ModeProblem omitted = build_mode_problem(profile, m_max + 1);
  const ModeEigenpairs tail = eigensolve(omitted, 1);
  result.omitted_mode_min = tail.values[0];
  if (!(tail.values[0] > threshold(tail.error_estimates[0]))) {
    throw CertificationError(
        "assemble_spectrum: lowest eigenvalue of omitted mode m = " + std::to_string(m_max + 1) +
        " is " + std::to_string(tail.values[0]) + ", not clearly positive; increase m_max");
  }
  return result;
}

void to_json(nlohmann::json& j, const SpectrumResult& result) {
  j = nlohmann::json{{"H", result.H},
                     {"kappa", kappa(result.space)},
                     {"lambda1", result.lambda1},
                     {"lambda2", result.lambda2},
                     {"kernel_dim", result.kernel_dim},
                     {"negative_count", result.negative_count},
                     {"m_max", result.m_max},
                     {"k_per_mode", result.k_per_mode},
                     {"n_samples", result.n_samples},
                     {"omitted_mode_min", result.omitted_mode_min},
                     {"eigenvalue_convention", "L g + lambda g = 0"}};
  nlohmann::json per_mode = nlohmann::json::object();
  nlohmann::json estimates = nlohmann::json::object();
  nlohmann::json thresholds = nlohmann::json::object();
  for (int m = 0; m < static_cast<int>(result.per_mode.size()); ++m) {
    const std::string key = std::to_string(m);
    per_mode[key] = result.per_mode[m];
    estimates[key] = result.error_estimates[m];
    thresholds[key] = result.zero_thresholds[m];
  }
  j["per_mode"] = per_mode;
  j["error_estimates"] = estimates;
  j["zero_thresholds"] = thresholds;
}

}  // namespace cmcstab
