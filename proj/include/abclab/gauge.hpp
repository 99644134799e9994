#pragma once

#include <complex>

#include "abclab/geometry.hpp"

namespace abclab::gauge {

// Polar angle of x around b with values in [0, 2*pi) and branch cut along
// the horizontal ray {x1 >= b1, x2 = b2}.
double theta_b(const Vec2& x, const Vec2& b);

// Same angle after rotating x about b by alpha (CCW), i.e. the branch cut
// now runs along the ray from b in direction -alpha.  On the circle
// b + r e(t) the value is t + alpha reduced to [0, 2*pi).
double theta_b_alpha(const Vec2& x, const Vec2& b, double alpha);

// Aharonov-Bohm potential of a half-flux pole at b:
//   A_b(x) = (1/2) * (-(x2-b2), (x1-b1)) / |x-b|^2,
// so that A_b = grad(theta_b / 2) away from the cut.
Vec2 A_b(const Vec2& x, const Vec2& b);

// Gauge phase for the eps-scaled configuration:
//   Theta_eps = (1/2) sum_j (-1)^(j+1) theta_j,
// where pole j < k1+k2 uses the cut through the origin (direction
// alpha_j - pi) and partner poles cut away from the origin.  exp(2i Theta)
// is continuous across every cut; exp(i Theta) flips sign exactly on the
// crack set.
double Theta_eps(const Vec2& x, const PoleConfiguration& cfg, double eps);

// Limit phase for the solo poles sitting at the origin.
double Theta_0(const Vec2& x, const PoleConfiguration& cfg);

// Total vector potential sum_j (-1)^(j+1) A_{a_j} = grad Theta_eps.
Vec2 A_total(const Vec2& x, const PoleConfiguration& cfg, double eps);

// Line integral of A_total around pole j on a circle of the given radius,
// composite midpoint rule with nseg segments.  Equals +-pi when the circle
// encloses exactly that pole.
double holonomy(const PoleConfiguration& cfg, double eps, int pole_index, double radius, int nseg);

// exp(2 i Theta_eps); continuous across cuts and cracks.
std::complex<double> double_phase(const Vec2& x, const PoleConfiguration& cfg, double eps);

}  // namespace abclab::gauge
