/// Rotational CMC profile curves.
///
/// The generating curve of a rotational surface of constant mean curvature H
/// in M^2(kappa) x R satisfies, in arclength parameterization,
///
///   r' = cos sigma,   t' = sin sigma,   sigma' = 2H - sin(sigma) ct(r),
///
/// with the regular start r ~ s, sigma ~ H s at the bottom pole. The flow
/// conserves
///
///   sin(sigma) sn(r) - 2H (1 - cs(r)) / kappa = 0,
///
/// which pins the tangent angle to the radius along the curve. Eliminating r
/// through that relation gives sigma' = H + kappa sin^2(sigma) / (4H), and
/// integrating d(sigma)/sigma' over sigma in [0, pi] yields the exact
/// meridian length
///
///   S_total = 2 pi / sqrt(4 H^2 + kappa).
///
/// The curve itself is produced by a fixed-step RK4 march of the (r, t,
/// sigma) system; the conserved quantity is only monitored, as a drift
/// diagnostic. For kappa = -1 the closure condition requires H > 1/2.
#include "cmcstab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "cmcstab/errors.hpp"

namespace cmcstab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr Eigen::Index kMinSamples = 16;
// Fraction of the total arclength at which the series start replaces the
// singular pole point.
constexpr double kPoleOffsetFraction = 1e-6;

struct State {
  double r, t, sigma;
};

// ODE right-hand side. Uses raw trig ratios: stage points sit strictly
// between the poles, where sn(r) > 0.
State derivative(int kap, double H, const State& y) {
  const double snr = kap > 0 ? std::sin(y.r) : std::sinh(y.r);
  const double csr = kap > 0 ? std::cos(y.r) : std::cosh(y.r);
  return {std::cos(y.sigma), std::sin(y.sigma),
          2.0 * H - std::sin(y.sigma) * csr / snr};
}

State rk4_step(int kap, double H, const State& y, double h) {
  const State k1 = derivative(kap, H, y);
  const State k2 = derivative(kap, H, {y.r + 0.5 * h * k1.r, y.t + 0.5 * h * k1.t, y.sigma + 0.5 * h * k1.sigma});
  const State k3 = derivative(kap, H, {y.r + 0.5 * h * k2.r, y.t + 0.5 * h * k2.t, y.sigma + 0.5 * h * k2.sigma});
  const State k4 = derivative(kap, H, {y.r + h * k3.r, y.t + h * k3.t, y.sigma + h * k3.sigma});
  return {y.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
          y.t + h / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t),
          y.sigma + h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma)};
}

// Composite Simpson rule on a uniform grid; odd interval counts close with
// the 3/8 rule. Falls back to the trapezoid rule below four points.
double simpson(const Eigen::ArrayXd& y, double h) {
  const Eigen::Index n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  if (n == 3) return h / 3.0 * (y[0] + 4.0 * y[1] + y[2]);
  Eigen::Index m = n - 1;
  double total = 0.0;
  if (m % 2 == 1) {
    total += 3.0 * h / 8.0 * (y[m - 3] + 3.0 * y[m - 2] + 3.0 * y[m - 1] + y[m]);
    m -= 3;
  }
  for (Eigen::Index i = 0; i < m; i += 2) {
    total += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  }
  return total;
}

void fill_sample(ProfileCurve& curve, Eigen::Index i, double s, const State& y) {
  const int kap = kappa(curve.space);
  const double H = curve.mean_curvature;
  const double sins = std::sin(y.sigma);
  curve.s[i] = s;
  curve.r[i] = y.r;
  curve.t[i] = y.t;
  curve.sigma[i] = y.sigma;
  curve.rho[i] = kap > 0 ? std::sin(y.r) : std::sinh(y.r);
  const double k2 = sins * (kap > 0 ? std::cos(y.r) : std::cosh(y.r)) / curve.rho[i];
  curve.k2[i] = k2;
  curve.k1[i] = 2.0 * H - k2;
  curve.q[i] = curve.k1[i] * curve.k1[i] + curve.k2[i] * curve.k2[i] + kap * sins * sins;
}

void fill_pole(ProfileCurve& curve, Eigen::Index i, double s, double t, double sigma) {
  const double H = curve.mean_curvature;
  curve.s[i] = s;
  curve.r[i] = 0.0;
  curve.t[i] = t;
  curve.sigma[i] = sigma;
  curve.rho[i] = 0.0;
  curve.k1[i] = H;  // poles are umbilic
  curve.k2[i] = H;
  curve.q[i] = 2.0 * H * H;
}

}  // namespace

ProfileCurve generate_profile(SpaceForm space, double H, Eigen::Index n_samples) {
  if (!(H > existence_min_H(space))) {
    if (space == SpaceForm::S2xR) {
      throw NoSuchSphereError("no rotational CMC sphere in S2xR for H <= 0 (requires H > 0)");
    }
    throw NoSuchSphereError("no rotational CMC sphere in H2xR for H <= 1/2 (requires H > 1/2)");
  }
  if (!std::isfinite(H)) throw std::invalid_argument("generate_profile: H must be finite");
  if (n_samples < kMinSamples) {
    throw std::invalid_argument("generate_profile: n_samples must be at least 16");
  }

  const int kap = kappa(space);
  ProfileCurve curve;
  curve.space = space;
  curve.kind = ProfileCurve::Kind::RotationalSphere;
  curve.mean_curvature = H;
  const double S = 2.0 * kPi / std::sqrt(4.0 * H * H + kap);
  curve.total_arclength = S;

  const Eigen::Index n = n_samples;
  for (Eigen::ArrayXd* a : {&curve.s, &curve.r, &curve.t, &curve.sigma,
                            &curve.k1, &curve.k2, &curve.rho, &curve.q}) {
    a->resize(n);
  }

  const double h = S / static_cast<double>(n - 1);
  const double s0 = kPoleOffsetFraction * S;

  fill_pole(curve, 0, 0.0, 0.0, 0.0);

  // Series start just off the pole: sigma = H s + O(s^3), r = s + O(s^3),
  // t = H s^2 / 2 + O(s^4). At s0 the omitted terms are below double
  // precision.
  State y{s0 - H * H / 6.0 * s0 * s0 * s0,
          0.5 * H * s0 * s0,
          H * s0 + kap * H / 12.0 * s0 * s0 * s0};
  double s = s0;
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    const double target = static_cast<double>(j) * h;
    y = rk4_step(kap, H, y, target - s);
    s = target;
    fill_sample(curve, j, s, y);
  }
  // Stop the march a series-start short of the top pole and close the last
  // gap analytically; sigma reaches pi and r returns to zero there.
  y = rk4_step(kap, H, y, (S - s0) - s);
  fill_pole(curve, n - 1, S, y.t + 0.5 * H * s0 * s0, kPi);

  // Center the height so the equator sits at t = 0.
  curve.t -= 0.5 * (curve.t[0] + curve.t[n - 1]);

  // Drift of the conserved quantity sin(sigma) sn(r) - 2H (1 - cs(r)) / kappa,
  // evaluated with the cancellation-free forms 1 - cos r = 2 sin^2(r/2) and
  // cosh r - 1 = 2 sinh^2(r/2).
  double drift = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double half = 0.5 * curve.r[i];
    const double f = kap > 0 ? 2.0 * std::sin(half) * std::sin(half)
                             : 2.0 * std::sinh(half) * std::sinh(half);
    drift = std::max(drift, std::abs(std::sin(curve.sigma[i]) * curve.rho[i] - 2.0 * H * f));
  }
  curve.first_integral_drift = drift;
  return curve;
}

ProfileCurve horizontal_slice(Eigen::Index n_samples) {
  if (n_samples < kMinSamples) {
    throw std::invalid_argument("horizontal_slice: n_samples must be at least 16");
  }
  ProfileCurve curve;
  curve.space = SpaceForm::S2xR;
  curve.kind = ProfileCurve::Kind::HorizontalSlice;
  curve.mean_curvature = 0.0;
  curve.total_arclength = kPi;

  const Eigen::Index n = n_samples;
  curve.s = Eigen::ArrayXd::LinSpaced(n, 0.0, kPi);
  curve.r = curve.s;
  curve.t = Eigen::ArrayXd::Zero(n);
  curve.sigma = Eigen::ArrayXd::Zero(n);
  curve.k1 = Eigen::ArrayXd::Zero(n);
  curve.k2 = Eigen::ArrayXd::Zero(n);
  curve.rho = curve.s.sin();
  curve.q = Eigen::ArrayXd::Zero(n);
  curve.first_integral_drift = 0.0;
  return curve;
}

double area_quadrature(const ProfileCurve& curve) {
  const double h = curve.total_arclength / static_cast<double>(curve.n() - 1);
  return simpson(2.0 * kPi * curve.rho, h);
}

double volume_quadrature(const ProfileCurve& curve) {
  const int kap = kappa(curve.space);
  const double h = curve.total_arclength / static_cast<double>(curve.n() - 1);
  // Base disk area D(r) = 2 pi kappa (1 - cs(r)), written through half-angle
  // squares to stay exact near the poles.
  Eigen::ArrayXd disk(curve.n());
  for (Eigen::Index i = 0; i < curve.n(); ++i) {
    const double half = 0.5 * curve.r[i];
    disk[i] = 2.0 * kPi * (kap > 0 ? 2.0 * std::sin(half) * std::sin(half)
                                   : 2.0 * std::sinh(half) * std::sinh(half));
  }
  return simpson(disk * curve.sigma.sin(), h);
}

double willmore_integral(const ProfileCurve& curve) {
  const int kap = kappa(curve.space);
  const double H = curve.mean_curvature;
  const double h = curve.total_arclength / static_cast<double>(curve.n() - 1);
  const Eigen::ArrayXd ks = kap * curve.sigma.cos().square();
  return simpson((H * H + ks) * 2.0 * kPi * curve.rho, h);
}

double gauss_bonnet_integral(const ProfileCurve& curve) {
  const int kap = kappa(curve.space);
  const double h = curve.total_arclength / static_cast<double>(curve.n() - 1);
  const Eigen::ArrayXd gauss = curve.k1 * curve.k2 + kap * curve.sigma.cos().square();
  return simpson(gauss * 2.0 * kPi * curve.rho, h);
}

void write_profile_csv(const ProfileCurve& curve, std::ostream& out) {
  out << "s,r,t,sigma,k1,k2,rho,q\n";
  char buf[256];
  for (Eigen::Index i = 0; i < curve.n(); ++i) {
    const ProfileSample p = curve.sample(i);
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.s, p.r, p.t, p.sigma, p.k1, p.k2, p.rho, p.q);
    out << buf;
  }
}

}  // namespace cmcstab
