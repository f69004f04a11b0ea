#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "cmcstab/errors.hpp"
#include "cmcstab/profile.hpp"
#include "cmcstab/spectrum.hpp"
#include "oracles.hpp"

using namespace cmcstab;

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
  const Eigen::Index n = 40;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 2.0);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -1.0);
  const Eigen::VectorXd values = tridiagonal_eigenvalues(diag, sub);
  REQUIRE(values.size() == n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1));
    CHECK(values[k] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("tridiagonal eigenvector by inverse iteration") {
  Eigen::VectorXd diag(3), sub(2);
  diag << 2.0, 2.0, 2.0;
  sub << -1.0, -1.0;

  // Middle eigenvalue 2 has eigenvector proportional to (1, 0, -1).
  const Eigen::VectorXd v = tridiagonal_eigenvector(diag, sub, 2.0);
  REQUIRE(v.size() == 3);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v[0] == doctest::Approx(M_SQRT1_2).epsilon(1e-12));
  CHECK(std::abs(v[1]) < 1e-12);
  CHECK(v[2] == doctest::Approx(-M_SQRT1_2).epsilon(1e-12));

  const Eigen::VectorXd again = tridiagonal_eigenvector(diag, sub, 2.0);
  CHECK(std::memcmp(v.data(), again.data(), sizeof(double) * 3) == 0);
}

TEST_CASE("mode problem layout") {
  const ProfileCurve profile = generate_profile(SpaceForm::S2xR, 0.5, 400);
  const ModeProblem problem = build_mode_problem(profile, 2);
  CHECK(problem.m == 2);
  CHECK(problem.fine.size() == 399);
  CHECK(problem.coarse.size() < problem.fine.size());
  CHECK(problem.fine.rho_edge[0] == 0.0);
  CHECK(problem.fine.rho_edge[problem.fine.size()] == 0.0);
  CHECK((problem.fine.rho_node > 0.0).all());
  CHECK(problem.fine.h == doctest::Approx(profile.total_arclength / 399).epsilon(1e-14));

  CHECK_THROWS_AS(build_mode_problem(profile, -1), std::invalid_argument);
  const ProfileCurve tiny = generate_profile(SpaceForm::S2xR, 0.5, 16);
  CHECK_THROWS_AS(build_mode_problem(tiny, 0), std::invalid_argument);
}

TEST_CASE("eigenpairs satisfy the unsymmetrized operator equation") {
  const ProfileCurve profile = generate_profile(SpaceForm::H2xR, 0.9, 500);
  for (int m : {0, 1, 3}) {
    CAPTURE(m);
    const ModeProblem problem = build_mode_problem(profile, m);
    const ModeEigenpairs pairs = eigensolve(problem, 3);
    REQUIRE(pairs.values.size() == 3);
    REQUIRE(pairs.vectors.cols() == 3);
    const Eigen::ArrayXd w = problem.fine.rho_node * problem.fine.h;
    for (Eigen::Index k = 0; k < 3; ++k) {
      const Eigen::ArrayXd f = pairs.vectors.col(k).array();
      const Eigen::ArrayXd residual = apply_mode_operator(problem, f) - pairs.values[k] * f;
      CHECK(std::sqrt((residual.square() * w).sum()) < 1e-6);
      // rho-weighted normalization.
      CHECK((f.square() * w).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(pairs.values[0] < pairs.values[1]);
    CHECK((pairs.error_estimates.array() >= 0.0).all());
    CHECK(pairs.coarse_values.size() == 3);
  }
}

TEST_CASE("Richardson estimate tracks the grid refinement shift") {
  const ProfileCurve coarse = generate_profile(SpaceForm::S2xR, 0.5, 1000);
  const ProfileCurve fine = generate_profile(SpaceForm::S2xR, 0.5, 2000);
  const ModeEigenpairs pc = eigensolve(build_mode_problem(coarse, 0), 1);
  const ModeEigenpairs pf = eigensolve(build_mode_problem(fine, 0), 1);
  const double shift = std::abs(pc.values[0] - pf.values[0]);
  const double estimate = pc.error_estimates[0];
  CHECK(estimate > 0.2 * shift);
  CHECK(estimate < 5.0 * shift + 1e-12);
}

TEST_CASE("slice spectrum reproduces l(l+1)") {
  const ProfileCurve slice = horizontal_slice(2000);
  const SpectrumResult spectrum = assemble_spectrum(slice, 3, 4);
  for (int m = 0; m <= 3; ++m) {
    CAPTURE(m);
    for (int j = 0; j < 4; ++j) {
      const int l = m + j;
      if (l > 3) continue;
      const double exact = l * (l + 1);
      const double got = spectrum.per_mode[m][j];
      if (l == 0) {
        CHECK(std::abs(got) < 1e-9);
      } else {
        CHECK(got == doctest::Approx(exact).epsilon(1e-3));
      }
    }
  }
  CHECK(spectrum.kernel_dim == 1);
  CHECK(spectrum.negative_count == 0);
  CHECK(spectrum.m0_kernel.size() > 0);

  // The m = 0 kernel function of the slice is the constant.
  const double mean = spectrum.m0_kernel.mean();
  CHECK((spectrum.m0_kernel - mean).abs().maxCoeff() < 1e-6 * std::abs(mean));
}

TEST_CASE("lowest eigenvalue against independently computed values") {
  struct Point {
    SpaceForm space;
    double H;
    double lambda1;
  };
  const std::vector<Point> points = {
      {SpaceForm::S2xR, 0.2, oracles::kLambda1S2rH02},
      {SpaceForm::S2xR, 0.5, oracles::kLambda1S2rH05},
      {SpaceForm::S2xR, 1.0, oracles::kLambda1S2rH1},
      {SpaceForm::H2xR, 0.6, oracles::kLambda1H2rH06},
      {SpaceForm::H2xR, 1.0, oracles::kLambda1H2rH1},
      {SpaceForm::H2xR, 2.0, oracles::kLambda1H2rH2},
      {SpaceForm::S2xR, 0.05, oracles::kLambda1S2rH005},
  };
  for (const auto& point : points) {
    CAPTURE(to_string(point.space));
    CAPTURE(point.H);
    const ProfileCurve profile = generate_profile(point.space, point.H, 2000);
    const ModeEigenpairs pairs = eigensolve(build_mode_problem(profile, 0), 1);
    const double tol = std::max(2e-5, 1e-5 * std::abs(point.lambda1));
    CHECK(std::abs(pairs.values[0] - point.lambda1) < tol);
  }
}

TEST_CASE("sphere spectrum structure") {
  for (const auto& [space, H] :
       std::vector<std::pair<SpaceForm, double>>{{SpaceForm::S2xR, 0.5}, {SpaceForm::H2xR, 1.0}}) {
    CAPTURE(to_string(space));
    CAPTURE(H);
    const ProfileCurve profile = generate_profile(space, H, 1200);
    const SpectrumResult spectrum = assemble_spectrum(profile, 8, 4);

    CHECK(spectrum.negative_count == 1);
    CHECK(spectrum.kernel_dim == 3);
    CHECK(spectrum.lambda1 < 0.0);
    CHECK(std::abs(spectrum.lambda2) < 1e-4);
    CHECK(spectrum.omitted_mode_min > 0.0);
    CHECK(spectrum.m0_kernel.size() == 1199);
    CHECK(std::abs(spectrum.m0_kernel_eigenvalue) < 1e-4);

    // The kernel splits as one vertical-translation function in m = 0 plus a
    // doubled m = 1 pair, so the m = 1 ground eigenvalue is a zero too.
    CHECK(std::abs(spectrum.per_mode[1][0]) <= spectrum.zero_thresholds[1][0]);
  }
}

TEST_CASE("argument validation and certification") {
  const ProfileCurve profile = generate_profile(SpaceForm::S2xR, 0.5, 64);
  CHECK_THROWS_AS(assemble_spectrum(profile, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(assemble_spectrum(profile, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(eigensolve(build_mode_problem(profile, 0), 0), std::invalid_argument);
  CHECK_THROWS_AS(eigensolve(build_mode_problem(profile, 0), 1000), std::invalid_argument);

  // An absurd zero threshold swallows the whole computed spectrum, so the
  // omitted-mode certificate must refuse.
  CHECK_THROWS_AS(assemble_spectrum(profile, 2, 2, 1e6), CertificationError);
}

TEST_CASE("spectrum assembly is deterministic") {
  const ProfileCurve profile = generate_profile(SpaceForm::H2xR, 0.8, 500);
  const SpectrumResult a = assemble_spectrum(profile, 4, 3);
  const SpectrumResult b = assemble_spectrum(profile, 4, 3);
  CHECK(a.lambda1 == b.lambda1);
  CHECK(a.lambda2 == b.lambda2);
  CHECK(a.omitted_mode_min == b.omitted_mode_min);
  REQUIRE(a.m0_kernel.size() == b.m0_kernel.size());
  CHECK(std::memcmp(a.m0_kernel.data(), b.m0_kernel.data(),
                    sizeof(double) * a.m0_kernel.size()) == 0);
}

TEST_CASE("spectrum JSON shape") {
  const ProfileCurve profile = generate_profile(SpaceForm::S2xR, 0.5, 200);
  const SpectrumResult spectrum = assemble_spectrum(profile, 2, 2);
  const nlohmann::json j = spectrum;
  for (const char* key : {"H", "kappa", "lambda1", "lambda2", "kernel_dim", "negative_count",
                          "m_max", "k_per_mode", "n_samples", "omitted_mode_min",
                          "eigenvalue_convention", "per_mode", "error_estimates",
                          "zero_thresholds"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["eigenvalue_convention"] == "L g + lambda g = 0");
  CHECK(j["kappa"] == 1);
  CHECK(j["per_mode"].contains("0"));
  CHECK(j["per_mode"].contains("2"));
  CHECK(j["per_mode"]["0"].size() == 2);
}
