/// Closed-form area of rotational CMC spheres and its derivative.
///
/// With x = 4H^2 + kappa, the area of the rotational sphere is
///
///   A(H) = 8 pi [ 1/x + (4H^2 / x^{3/2}) T(1/sqrt(x)) ],
///
/// where T = artanh for kappa = +1 and T = arctan for kappa = -1.
///
/// Differentiating by hand (recorded here so the code below can be audited
/// term by term; d x/dH = 8H):
///
///   d/dH [1/x]              = -8H / x^2
///   d/dH [4H^2 x^{-3/2}]    =  8H x^{-5/2} (x - 6H^2) = 8H x^{-5/2} (kappa - 2H^2)
///   d/dH [artanh(x^{-1/2})] = -4H x^{-3/2} x/(x - 1) = -x^{-1/2} / H   (kappa = +1)
///   d/dH [arctan(x^{-1/2})] = -4H x^{-3/2} x/(x + 1) = -x^{-1/2} / H   (kappa = -1)
///
/// and combining terms gives, for kappa = +1,
///
///   dA/dH = 8 pi [ 8H(1 - 2H^2) x^{-5/2} artanh(1/sqrt(x)) - 12H / x^2 ],
///
/// and for kappa = -1,
///
///   dA/dH = -8 pi [ 12H / x^2 + 8H(1 + 2H^2) x^{-5/2} arctan(1/sqrt(x)) ],
///
/// which is manifestly negative on H > 1/2. Both forms were checked against
/// high-precision numerical differentiation of A.
///
/// artanh(1/sqrt(x)) is evaluated as log1p of the exact rearrangement
/// (sqrt(x) + 1 - 2H) / (2H) with sqrt(x) - 2H = 1/(sqrt(x) + 2H), which is
/// free of cancellation both as H -> 0 and H -> infinity.
#include "cmcstab/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cmcstab/errors.hpp"

namespace cmcstab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_domain(SpaceForm space, double H) {
  if (!std::isfinite(H)) throw std::invalid_argument("mean curvature must be finite");
  if (H > existence_min_H(space)) return;
  if (space == SpaceForm::S2xR) {
    throw NoSuchSphereError("no rotational CMC sphere in S2xR for H <= 0 (requires H > 0)");
  }
  throw NoSuchSphereError("no rotational CMC sphere in H2xR for H <= 1/2 (requires H > 1/2)");
}

// artanh(1/sqrt(x)) for x = 4H^2 + 1, H > 0. Equal to
// log((sqrt(x) + 1) / (2H)) after rationalizing, rearranged through log1p
// with sqrt(x) - 2H = 1/(sqrt(x) + 2H) so no difference of large terms
// appears at either end of the H range.
double artanh_inv_sqrt(double H) {
  const double root = std::sqrt(4.0 * H * H + 1.0);
  return std::log1p((1.0 + 1.0 / (root + 2.0 * H)) / (2.0 * H));
}

}  // namespace

double area_s2r(double H) {
  check_domain(SpaceForm::S2xR, H);
  const double x = 4.0 * H * H + 1.0;
  return 8.0 * kPi * (1.0 / x + 4.0 * H * H / (x * std::sqrt(x)) * artanh_inv_sqrt(H));
}

double area_h2r(double H) {
  check_domain(SpaceForm::H2xR, H);
  const double x = 4.0 * H * H - 1.0;
  const double root = std::sqrt(x);
  return 8.0 * kPi * (1.0 / x + 4.0 * H * H / (x * root) * std::atan(1.0 / root));
}

double area_closed_form(SpaceForm space, double H) {
  return space == SpaceForm::S2xR ? area_s2r(H) : area_h2r(H);
}

double dA_dH(SpaceForm space, double H) {
  check_domain(space, H);
  if (space == SpaceForm::S2xR) {
    const double x = 4.0 * H * H + 1.0;
    const double x2 = x * x;
    return 8.0 * kPi *
           (8.0 * H * (1.0 - 2.0 * H * H) / (x2 * std::sqrt(x)) * artanh_inv_sqrt(H) -
            12.0 * H / x2);
  }
  const double x = 4.0 * H * H - 1.0;
  const double x2 = x * x;
  const double root = std::sqrt(x);
  return -8.0 * kPi *
         (12.0 * H / x2 +
          8.0 * H * (1.0 + 2.0 * H * H) / (x2 * root) * std::atan(1.0 / root));
}

double dA_dH_central_difference(SpaceForm space, double H) {
  check_domain(space, H);
  // Two central differences, steps delta and delta/2, combined by one
  // Richardson step: (4 D_{delta/2} - D_delta) / 3 has O(delta^4) error.
  const double delta = std::max(1e-4, 1e-4 * H);
  if (H - delta <= existence_min_H(space)) {
    throw std::invalid_argument("dA_dH_central_difference: H too close to the existence threshold");
  }
  const auto central = [&](double d) {
    return (area_closed_form(space, H + d) - area_closed_form(space, H - d)) / (2.0 * d);
  };
  return (4.0 * central(0.5 * delta) - central(delta)) / 3.0;
}

double find_H0() {
  // Sign scan on a logarithmic grid to confirm a single crossing of dA/dH.
  const double lo_end = 1e-3, hi_end = 50.0;
  const int scan = 200;
  double lo = 0.0, hi = 0.0;
  int crossings = 0;
  double prev_h = lo_end;
  double prev_sign = dA_dH(SpaceForm::S2xR, lo_end) > 0.0 ? 1.0 : -1.0;
  for (int i = 1; i <= scan; ++i) {
    const double h = lo_end * std::pow(hi_end / lo_end, static_cast<double>(i) / scan);
    const double sign = dA_dH(SpaceForm::S2xR, h) > 0.0 ? 1.0 : -1.0;
    if (sign != prev_sign) {
      ++crossings;
      lo = prev_h;
      hi = h;
    }
    prev_h = h;
    prev_sign = sign;
  }
  if (crossings != 1) {
    throw NumericalError("find_H0: expected exactly one sign change of dA/dH, found " +
                         std::to_string(crossings));
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (dA_dH(SpaceForm::S2xR, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cmcstab
