#include <doctest.h>

#include <cmath>

#include "cmcstab/closed_form.hpp"
#include "cmcstab/errors.hpp"
#include "oracles.hpp"

using namespace cmcstab;

TEST_CASE("areas match frozen references") {
  CHECK(area_s2r(0.5) == doctest::Approx(oracles::kAreaS2rH05).epsilon(1e-14));
  CHECK(area_h2r(M_SQRT1_2) == doctest::Approx(oracles::kAreaH2rInvSqrt2).epsilon(1e-14));
  CHECK(area_closed_form(SpaceForm::S2xR, 0.5) == area_s2r(0.5));
  CHECK(area_closed_form(SpaceForm::H2xR, 1.0) == area_h2r(1.0));
}

TEST_CASE("area limits") {
  // Small spheres in either space approach round spheres of area 4 pi / H^2.
  for (SpaceForm space : {SpaceForm::S2xR, SpaceForm::H2xR}) {
    const double H = 80.0;
    const double round = 4.0 * M_PI / (H * H);
    CHECK(area_closed_form(space, H) == doctest::Approx(round).epsilon(1e-3));
  }
  // Flat-ball limit in S2xR: the sphere flattens onto a double equatorial
  // disk of total area 8 pi.
  CHECK(area_s2r(1e-6) == doctest::Approx(8.0 * M_PI).epsilon(1e-6));
}

TEST_CASE("derivative matches frozen references and the finite difference") {
  CHECK(dA_dH(SpaceForm::S2xR, 0.5) == doctest::Approx(oracles::kDadhS2rH05).epsilon(1e-13));
  CHECK(dA_dH(SpaceForm::H2xR, 1.0) == doctest::Approx(oracles::kDadhH2rH1).epsilon(1e-13));

  for (double H : {0.07, 0.19, 0.6, 1.3, 4.0}) {
    CHECK(dA_dH(SpaceForm::S2xR, H) ==
          doctest::Approx(dA_dH_central_difference(SpaceForm::S2xR, H)).epsilon(1e-8));
  }
  for (double H : {0.55, 0.8, 1.3, 4.0}) {
    CHECK(dA_dH(SpaceForm::H2xR, H) ==
          doctest::Approx(dA_dH_central_difference(SpaceForm::H2xR, H)).epsilon(1e-8));
  }
}

TEST_CASE("critical mean curvature") {
  const double h0 = find_H0();
  CHECK(h0 > 0.17);
  CHECK(h0 < 0.19);
  CHECK(std::abs(h0 - oracles::kH0) < 1e-11);
  // Sign change of the derivative across the root.
  CHECK(dA_dH(SpaceForm::S2xR, h0 - 1e-6) > 0.0);
  CHECK(dA_dH(SpaceForm::S2xR, h0 + 1e-6) < 0.0);
}

TEST_CASE("H2xR derivative is negative everywhere") {
  for (double H = 0.51; H < 20.0; H *= 1.17) {
    CHECK(dA_dH(SpaceForm::H2xR, H) < 0.0);
  }
}

TEST_CASE("existence domain errors") {
  CHECK_THROWS_AS(area_s2r(0.0), NoSuchSphereError);
  CHECK_THROWS_AS(area_s2r(-0.2), NoSuchSphereError);
  CHECK_THROWS_AS(area_h2r(0.5), NoSuchSphereError);
  CHECK_THROWS_AS(dA_dH(SpaceForm::H2xR, 0.3), NoSuchSphereError);
  CHECK_THROWS_AS(area_s2r(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}
