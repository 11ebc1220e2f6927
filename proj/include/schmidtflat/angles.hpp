#pragma once

#include "schmidtflat/numeric.hpp"

#include <cmath>

namespace schmidtflat {

// Directions of saddle connections live on the circle R / pi*Z: a holonomy
// vector and its negative define the same direction.

inline double wrap_mod_pi(double theta) {
    double t = std::fmod(theta, kPi);
    if (t < 0) t += kPi;
    if (t >= kPi) t -= kPi;
    return t;
}

// Distance on [0, pi) with wraparound.
inline double angle_dist(double a, double b) {
    double d = std::fabs(wrap_mod_pi(a) - wrap_mod_pi(b));
    return std::min(d, kPi - d);
}

// Angle theta in [0, pi) such that rotating (h, v) by r_theta makes it
// vertical: first component of r_theta * (h, v) vanishes. The direction of
// slope v/h = tan(pi/2 - theta); e.g. (1,1) is vertical after rotating by
// pi/4.
inline double vertical_angle(double h, double v) {
    return wrap_mod_pi(std::atan2(h, v));
}

// Components of r_theta (counterclockwise) applied to (h, v).
inline void rotate_holonomy(double h, double v, double theta, double& h_out, double& v_out) {
    double c = std::cos(theta), s = std::sin(theta);
    h_out = c * h - s * v;
    v_out = s * h + c * v;
}

// Representative of angle a closest to the reference point ref on R / pi*Z.
inline double unwrap_near(double a, double ref) {
    double t = wrap_mod_pi(a);
    double k = std::round((ref - t) / kPi);
    return t + k * kPi;
}

// Distance from the direction theta to the closed arc of center c, radius r.
inline double angle_interval_dist(double theta, double center, double radius) {
    double d = angle_dist(theta, center);
    return d <= radius ? 0.0 : d - radius;
}

}  // namespace schmidtflat
