#pragma once

#include "cmcstab/space_form.hpp"

namespace cmcstab {

/// Area of the rotational CMC sphere with mean curvature H in S^2 x R.
/// Requires H > 0.
double area_s2r(double H);

/// Area of the rotational CMC sphere with mean curvature H in H^2 x R.
/// Requires H > 1/2.
double area_h2r(double H);

/// Dispatches to area_s2r / area_h2r.
double area_closed_form(SpaceForm space, double H);

/// Analytic derivative dA/dH of the closed-form area. In H^2 x R it is
/// negative on the whole existence range; in S^2 x R it changes sign once,
/// at the critical mean curvature returned by find_H0().
double dA_dH(SpaceForm space, double H);

/// Central-difference estimate of dA/dH with one Richardson extrapolation
/// step. Serves as a self-check of the analytic derivative; the two agree
/// to better than 1e-7 relative away from the zero crossing.
double dA_dH_central_difference(SpaceForm space, double H);

/// The unique zero of dA/dH in S^2 x R, located by bisection to 1e-12 after
/// a sign scan that confirms a single crossing. Rotational spheres are
/// volume-constrained stable exactly for H >= H0; numerically
/// H0 = 0.185408754439...
double find_H0();

/// Isoperimetric threshold for S^2 x R reported in the literature:
/// rotational spheres bound isoperimetric regions for H above roughly this
/// value. Not derivable from the area function alone; stored for reference.
inline constexpr double kIsoperimetricThresholdS2R = 0.33;

}  // namespace cmcstab
