#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "cmcstab/space_form.hpp"

namespace cmcstab {

/// One point of the generating curve of a rotational surface, parameterized
/// by arclength s. r is the base distance from the rotation axis, t the
/// height, sigma the tangent angle (r' = cos sigma, t' = sin sigma).
/// k1 is the principal curvature along the profile, k2 the one along the
/// parallel circle, rho the circumferential radius sn(r), and
/// q = k1^2 + k2^2 + Ric(N) the zeroth-order coefficient of the Jacobi
/// operator L = Laplacian + q.
struct ProfileSample {
  double s, r, t, sigma, k1, k2, rho, q;
};

/// Discretized generating curve on a uniform arclength grid. Column arrays
/// hold one quantity per sample; sample(i) extracts a row.
struct ProfileCurve {
  enum class Kind { RotationalSphere, HorizontalSlice };

  SpaceForm space = SpaceForm::S2xR;
  Kind kind = Kind::RotationalSphere;
  double mean_curvature = 0.0;
  double total_arclength = 0.0;

  Eigen::ArrayXd s, r, t, sigma, k1, k2, rho, q;

  /// Maximum residual of the conserved quantity
  /// sin(sigma) sn(r) - 2H * \int_0^r sn, recorded by the integrator as a
  /// drift diagnostic.
  double first_integral_drift = 0.0;

  Eigen::Index n() const { return s.size(); }
  ProfileSample sample(Eigen::Index i) const {
    return {s[i], r[i], t[i], sigma[i], k1[i], k2[i], rho[i], q[i]};
  }
};

/// Integrates the profile ODE
///   r' = cos sigma,  t' = sin sigma,  sigma' = 2H - sin(sigma) ct(r)
/// from the bottom pole with a fixed-step fourth-order scheme and returns
/// n_samples points spanning one full pole-to-pole meridian.
/// Throws NoSuchSphereError when H is outside the existence range and
/// std::invalid_argument when n_samples < 16.
ProfileCurve generate_profile(SpaceForm space, double H, Eigen::Index n_samples);

/// The totally geodesic horizontal slice S^2 x {0}, laid out in the same
/// sample format (r = s on [0, pi], sigma = 0, q = 0). Used as an exactly
/// solvable reference surface for the spectral machinery.
ProfileCurve horizontal_slice(Eigen::Index n_samples);

/// Surface area  2 pi \int rho ds  by composite Simpson quadrature.
double area_quadrature(const ProfileCurve& curve);

/// Enclosed volume by disk slicing: \int D(r) dt with D the area of the
/// base disk of radius r, integrated as \int D(r(s)) sin(sigma) ds.
double volume_quadrature(const ProfileCurve& curve);

/// Willmore-type energy \int (H^2 + K_s) dA. Bounded below by 4 pi on
/// spheres and approaches it in the small-sphere limit.
double willmore_integral(const ProfileCurve& curve);

/// Total intrinsic curvature \int K dA with K = k1 k2 + K_s (Gauss
/// equation). Equals 4 pi on any sphere, up to quadrature error.
double gauss_bonnet_integral(const ProfileCurve& curve);

/// Writes the samples as CSV with header s,r,t,sigma,k1,k2,rho,q at full
/// double precision (17 significant digits).
void write_profile_csv(const ProfileCurve& curve, std::ostream& out);

}  // namespace cmcstab
