/// Acceptance gate: one self-checking run per shipped guarantee, one
/// PASS/FAIL line each, nonzero exit when anything fails. Each check states
/// its own tolerances; time budgets are enforced where the guarantee
/// includes one.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmcstab/closed_form.hpp"
#include "cmcstab/errors.hpp"
#include "cmcstab/profile.hpp"
#include "cmcstab/space_form.hpp"
#include "cmcstab/spectrum.hpp"
#include "cmcstab/stability.hpp"
#include "cmcstab/topology.hpp"

using namespace cmcstab;

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

std::string format(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = std::exp(std::log(lo) +
                       (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                           static_cast<double>(n - 1));
  }
  return grid;
}

std::vector<double> linear(double lo, double hi, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

// 1. The critical mean curvature from the closed-form area derivative.
std::string check_critical_mean_curvature() {
  const double h0 = find_H0();
  require(h0 > 0.17 && h0 < 0.19,
          format("critical mean curvature %.12g outside [0.17, 0.19]", h0));
  return format("H0 = %.12g", h0);
}

// 2. Quadrature area against the closed form, 20 mean curvatures per space.
std::string check_area_agreement() {
  double worst = 0.0;
  for (const SpaceForm space : {SpaceForm::S2xR, SpaceForm::H2xR}) {
    const double lo = space == SpaceForm::S2xR ? 0.05 : 0.6;
    for (const double H : log_spaced(lo, 5.0, 20)) {
      const double closed = area_closed_form(space, H);
      const double quad = area_quadrature(generate_profile(space, H, 4000));
      const double rel = std::abs(quad - closed) / closed;
      worst = std::max(worst, rel);
      require(rel < 1e-8, format("area mismatch %.3g at H = %.6g", rel, H));
    }
  }
  return format("worst relative error %.3g over 40 spheres", worst);
}

// 3. The area derivative stays negative across the whole existence range in
// H2xR.
std::string check_h2r_monotonicity() {
  const double lo = std::log(0.51), hi = std::log(50.0);
  for (int i = 1; i <= 100; ++i) {
    const double H = std::exp(lo + (hi - lo) * static_cast<double>(i) / 101.0);
    const double d = dA_dH(SpaceForm::H2xR, H);
    require(d < 0.0, format("dA/dH = %.6g not negative at H = %.6g", d, H));
  }
  return "dA/dH < 0 at 100 log-spaced mean curvatures in (0.51, 50)";
}

// 4. Spectral structure of six spheres: one negative eigenvalue, a
// three-dimensional kernel, and a second eigenvalue that vanishes within
// 50x its Richardson estimate.
std::string check_spectral_structure() {
  const std::vector<std::pair<SpaceForm, double>> points = {
      {SpaceForm::S2xR, 0.2}, {SpaceForm::S2xR, 0.5}, {SpaceForm::S2xR, 1.0},
      {SpaceForm::H2xR, 0.6}, {SpaceForm::H2xR, 1.0}, {SpaceForm::H2xR, 2.0},
  };
  double worst_lambda2 = 0.0;
  for (const auto& [space, H] : points) {
    const ProfileCurve profile = generate_profile(space, H, 2000);
    const SpectrumResult spectrum = assemble_spectrum(profile, 8, 4);
    const std::string tag = to_string(space) + format(" H = %.3g", H);
    require(spectrum.negative_count == 1,
            tag + format(": negative count %.0f, expected 1",
                         static_cast<double>(spectrum.negative_count)));
    require(spectrum.kernel_dim == 3,
            tag + format(": kernel dimension %.0f, expected 3",
                         static_cast<double>(spectrum.kernel_dim)));

    // Locate lambda2 in the per-mode table to read off its own estimate.
    double estimate = -1.0;
    for (std::size_t m = 0; m < spectrum.per_mode.size(); ++m) {
      for (std::size_t i = 0; i < spectrum.per_mode[m].size(); ++i) {
        if (spectrum.per_mode[m][i] == spectrum.lambda2) {
          estimate = spectrum.error_estimates[m][i];
        }
      }
    }
    require(estimate >= 0.0, tag + ": second eigenvalue missing from the mode table");
    require(std::abs(spectrum.lambda2) < 50.0 * estimate,
            tag + format(": |lambda2| = %.3g not below 50x estimate %.3g",
                         std::abs(spectrum.lambda2), estimate));
    worst_lambda2 = std::max(worst_lambda2, std::abs(spectrum.lambda2));
  }
  return format("six spectra: negative count 1, kernel 3, worst |lambda2| %.2g", worst_lambda2);
}

// 5. The slice operator is the sphere Laplacian: eigenvalues l(l+1).
std::string check_slice_oracle() {
  const ProfileCurve slice = horizontal_slice(2000);
  const SpectrumResult spectrum = assemble_spectrum(slice, 3, 4);
  double worst = 0.0;
  for (int m = 0; m <= 3; ++m) {
    for (std::size_t j = 0; j < spectrum.per_mode[m].size(); ++j) {
      const int l = m + static_cast<int>(j);
      if (l > 3) continue;
      const double exact = l * (l + 1);
      const double got = spectrum.per_mode[m][j];
      const double err = l == 0 ? std::abs(got) : std::abs(got - exact) / exact;
      worst = std::max(worst, err);
      require(err < 1e-3, format("slice eigenvalue %.6g off l(l+1) at l = %.0f", got,
                                 static_cast<double>(l)));
    }
  }
  return format("eigenvalues match l(l+1) for l <= 3, worst relative error %.2g", worst);
}

// 6. The integral of u agrees with -A'(H)/(4H) across sweeps, outside a
// +-0.02 band around the critical mean curvature.
std::string check_koiso_consistency() {
  const double h0 = find_H0();
  double worst = 0.0;
  int counted = 0;

  const auto scan = [&](SpaceForm space, const std::vector<double>& grid) {
    const std::vector<StabilityVerdict> verdicts = stability_sweep(space, grid);
    for (const StabilityVerdict& v : verdicts) {
      if (space == SpaceForm::S2xR && std::abs(v.H - h0) < 0.02) continue;
      const double reference = std::abs(v.dAdH / (4.0 * v.H));
      const double rel = v.consistency_residual / reference;
      worst = std::max(worst, rel);
      ++counted;
      require(rel < 1e-3, format("consistency residual %.3g at H = %.6g", rel, v.H));
    }
  };
  scan(SpaceForm::S2xR, linear(0.05, 1.0, 40));
  scan(SpaceForm::H2xR, linear(0.6, 3.0, 20));
  return format("worst relative residual %.3g across %.0f grid points", worst,
                static_cast<double>(counted));
}

// 7. Verdict table on both sides of the critical mean curvature.
std::string check_verdict_table() {
  const std::vector<StabilityVerdict> s2r =
      stability_sweep(SpaceForm::S2xR, {0.05, 0.10, 0.15, 0.25, 0.50, 1.00});
  const std::vector<Verdict> expected = {Verdict::Unstable, Verdict::Unstable, Verdict::Unstable,
                                         Verdict::Stable, Verdict::Stable, Verdict::Stable};
  for (std::size_t i = 0; i < s2r.size(); ++i) {
    require(s2r[i].verdict == expected[i],
            format("s2xr verdict at H = %.3g: ", s2r[i].H) + to_string(s2r[i].verdict));
  }
  const std::vector<StabilityVerdict> h2r =
      stability_sweep(SpaceForm::H2xR, {0.6, 1.0, 2.0});
  for (const StabilityVerdict& v : h2r) {
    require(v.verdict == Verdict::Stable,
            format("h2xr verdict at H = %.3g: ", v.H) + to_string(v.verdict));
  }
  return "s2xr U,U,U,S,S,S and h2xr S,S,S as required";
}

// 8. The conformal energy of every sphere stays above 4 pi and approaches
// it for large mean curvature.
std::string check_conformal_energy() {
  const double floor = 4.0 * M_PI - 1e-6;
  double lowest = std::numeric_limits<double>::infinity();
  for (const SpaceForm space : {SpaceForm::S2xR, SpaceForm::H2xR}) {
    const double lo = space == SpaceForm::S2xR ? 0.05 : 0.6;
    for (const double H : log_spaced(lo, 50.0, 8)) {
      const double energy = willmore_integral(generate_profile(space, H, 2001));
      lowest = std::min(lowest, energy);
      require(energy >= floor,
              format("conformal energy %.12g below 4 pi at H = %.6g", energy, H));
    }
    const double at50 = willmore_integral(generate_profile(space, 50.0, 2001));
    require(std::abs(at50 - 4.0 * M_PI) < 0.01 * 4.0 * M_PI,
            format("conformal energy %.6g not within 1%% of 4 pi at H = 50", at50));
  }
  return format("every sphere >= 4 pi - 1e-6 (lowest %.10g), limit reached at H = 50", lowest);
}

// 9. Pointwise curvature identities on every sample of a family of
// profiles.
std::string check_pointwise_identities() {
  for (const SpaceForm space : {SpaceForm::S2xR, SpaceForm::H2xR}) {
    const double lo = space == SpaceForm::S2xR ? 0.05 : 0.55;
    for (const double H : log_spaced(lo, 20.0, 10)) {
      const ProfileCurve c = generate_profile(space, H, 2000);
      for (Eigen::Index i = 0; i < c.n(); ++i) {
        const double curvature_sum =
            ricci_normal(space, c.sigma[i]) + sectional_tangent(space, c.sigma[i]);
        require(std::abs(curvature_sum - kappa(space)) < 1e-12,
                format("Ric(N) + Ks = %.17g, not the ambient kappa at H = %.6g",
                       curvature_sum, H));
        const double gauss = c.k1[i] * c.k1[i] + c.k2[i] * c.k2[i] -
                             (4.0 * H * H - 2.0 * c.k1[i] * c.k2[i]);
        require(std::abs(gauss) < 1e-10,
                format("principal curvature identity off by %.3g at H = %.6g", gauss, H));
      }
    }
  }
  return "Ric(N) + Ks = kappa to 1e-12 and k1^2 + k2^2 = 4H^2 - 2 k1 k2 to 1e-10";
}

// 10. Genus-bound table in H2xR.
std::string check_genus_table() {
  require(genus_bound_h2r(0.4).kind == GenusBoundReport::Kind::Nonexistence,
          "H = 0.4 must report nonexistence");
  const GenusBoundReport threshold = genus_bound_h2r(1.0 / std::sqrt(3.0));
  require(threshold.kind == GenusBoundReport::Kind::MaxGenus && threshold.max_genus == 2,
          "H = 1/sqrt(3) must cap the genus at 2");
  require(threshold.exact_threshold, "H = 1/sqrt(3) must be flagged as the exact threshold");
  const GenusBoundReport torus = genus_bound_h2r(0.6);
  require(torus.kind == GenusBoundReport::Kind::MaxGenus && torus.max_genus == 1,
          "H = 0.6 must cap the genus at 1");
  require(genus_bound_h2r(0.75).kind == GenusBoundReport::Kind::SphereOnly,
          "H = 0.75 must report rotational spheres only");
  return "nonexistence / 2 (exact) / 1 / sphere-only at 0.4, 1/sqrt(3), 0.6, 0.75";
}

// 11. Property suite: reflection symmetry, second-order convergence under
// grid halving, and parallel determinism.
std::string check_property_suite() {
  // Reflection symmetry through the equatorial plane.
  for (const auto& [space, H] :
       std::vector<std::pair<SpaceForm, double>>{{SpaceForm::S2xR, 0.35},
                                                 {SpaceForm::H2xR, 1.3}}) {
    const ProfileCurve c = generate_profile(space, H, 1777);
    const Eigen::Index n = c.n();
    for (Eigen::Index i = 0; i < n; ++i) {
      require(std::abs(c.r[i] - c.r[n - 1 - i]) < 1e-10, "profile radius not symmetric");
      require(std::abs(c.t[i] + c.t[n - 1 - i]) < 1e-10, "profile height not antisymmetric");
    }
  }

  // Quadrature error must drop by at least the second-order factor under
  // halving.
  const double closed = area_closed_form(SpaceForm::S2xR, 0.7);
  const double err_n = std::abs(area_quadrature(generate_profile(SpaceForm::S2xR, 0.7, 200)) - closed);
  const double err_2n = std::abs(area_quadrature(generate_profile(SpaceForm::S2xR, 0.7, 400)) - closed);
  require(err_2n < err_n / 3.5,
          format("area error ratio %.3g under grid halving, expected >= 3.5", err_n / err_2n));

  // Eigenvalues converge at second order: the error ratio between n and 2n
  // sits near 4.
  const auto lambda1_at = [](Eigen::Index n) {
    const ProfileCurve profile = generate_profile(SpaceForm::S2xR, 0.5, n);
    return eigensolve(build_mode_problem(profile, 0), 1).values[0];
  };
  const double reference = lambda1_at(4000);
  const double e1 = std::abs(lambda1_at(500) - reference);
  const double e2 = std::abs(lambda1_at(1000) - reference);
  const double ratio = e1 / e2;
  require(ratio > 3.0 && ratio < 5.5,
          format("eigenvalue error ratio %.3g under grid halving, expected in [3, 5.5]", ratio));

  // Parallel sweeps reduce to the serial result bitwise.
  KoisoOptions options;
  options.n_samples = 1000;
  const std::vector<double> grid = {0.1, 0.3, 0.7, 1.2};
  const std::vector<StabilityVerdict> serial = stability_sweep(SpaceForm::S2xR, grid, options, 1);
  const std::vector<StabilityVerdict> parallel = stability_sweep(SpaceForm::S2xR, grid, options, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(serial[i].verdict == parallel[i].verdict &&
                serial[i].u_integral == parallel[i].u_integral &&
                serial[i].lambda1 == parallel[i].lambda1,
            format("parallel sweep differs from serial at H = %.3g", grid[i]));
  }
  return format("symmetry, eigenvalue error ratio %.3g, parallel sweep bitwise equal", ratio);
}

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;  // 0 disables the time check
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "critical mean curvature", 1.0, check_critical_mean_curvature},
      {2, "area agreement", 10.0, check_area_agreement},
      {3, "h2xr area monotonicity", 1.0, check_h2r_monotonicity},
      {4, "spectral structure", 60.0, check_spectral_structure},
      {5, "slice Laplacian oracle", 5.0, check_slice_oracle},
      {6, "area-derivative consistency", 120.0, check_koiso_consistency},
      {7, "verdict table", 60.0, check_verdict_table},
      {8, "conformal energy bound", 5.0, check_conformal_energy},
      {9, "pointwise identities", 0.0, check_pointwise_identities},
      {10, "genus bound table", 0.0, check_genus_table},
      {11, "symmetry, convergence, determinism", 0.0, check_property_suite},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
      detail = criterion.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
      ok = false;
      detail += format(" [exceeded %.0f s budget]", criterion.budget_seconds);
    }
    std::printf("%s  %2d  %-34s  %7.2f s  %s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.name, seconds, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  if (failures == 0) {
    std::printf("all %zu checks passed\n", criteria.size());
  } else {
    std::printf("%d of %zu checks failed\n", failures, criteria.size());
  }
  return failures == 0 ? 0 : 1;
}
