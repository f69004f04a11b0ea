#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmcstab {

/// Ambient product space M^2(kappa) x R. The base is the round sphere S^2
/// (kappa = +1) or the hyperbolic plane H^2 (kappa = -1), both of unit
/// curvature. kappa equals the ambient scalar curvature in the normalization
/// used throughout this library.
enum class SpaceForm : int {
  S2xR = +1,
  H2xR = -1,
};

constexpr int kappa(SpaceForm space) { return static_cast<int>(space); }

inline std::string to_string(SpaceForm space) {
  return space == SpaceForm::S2xR ? "s2xr" : "h2xr";
}

inline SpaceForm parse_space_form(const std::string& name) {
  if (name == "s2xr") return SpaceForm::S2xR;
  if (name == "h2xr") return SpaceForm::H2xR;
  throw std::invalid_argument("unknown space form '" + name + "' (expected s2xr or h2xr)");
}

/// Rotational CMC spheres exist for H > existence_min_H(space):
/// every H > 0 in S^2 x R, only H > 1/2 in H^2 x R.
constexpr double existence_min_H(SpaceForm space) {
  return space == SpaceForm::S2xR ? 0.0 : 0.5;
}

/// Metric coefficient of the distance circle of radius r in the base:
/// sin r on the sphere, sinh r in the hyperbolic plane.
inline double sn(SpaceForm space, double r) {
  if (r < 0.0) throw std::invalid_argument("sn: r must be nonnegative");
  if (space == SpaceForm::S2xR) {
    if (r > std::acos(-1.0)) throw std::invalid_argument("sn: r must not exceed pi on S2xR");
    return std::sin(r);
  }
  return std::sinh(r);
}

/// Derivative of sn: cos r or cosh r.
inline double cs(SpaceForm space, double r) {
  return space == SpaceForm::S2xR ? std::cos(r) : std::cosh(r);
}

/// Geodesic curvature of the distance circle: cot r or coth r.
inline double ct(SpaceForm space, double r) {
  if (r <= 0.0) throw std::invalid_argument("ct: r must be positive");
  return cs(space, r) / sn(space, r);
}

/// Ricci curvature of the ambient space in the unit normal direction of a
/// rotational surface whose profile makes angle sigma with the horizontal:
/// Ric(N) = kappa * sin^2(sigma). Vanishes for vertical normals, equals
/// kappa for horizontal ones.
inline double ricci_normal(SpaceForm space, double sigma) {
  const double s = std::sin(sigma);
  return kappa(space) * s * s;
}

/// Sectional curvature of the ambient space along the tangent plane of the
/// same surface: K_s = kappa * cos^2(sigma). Together with ricci_normal it
/// sums to the ambient scalar curvature kappa.
inline double sectional_tangent(SpaceForm space, double sigma) {
  const double c = std::cos(sigma);
  return kappa(space) * c * c;
}

}  // namespace cmcstab
