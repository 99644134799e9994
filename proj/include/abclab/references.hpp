#pragma once

#include <vector>

#include "abclab/geometry.hpp"

namespace abclab::references {

// Dirichlet eigenpair of -Laplace on the box (0,a) x (0,b):
//   lambda = pi^2 (p^2/a^2 + q^2/b^2),
//   u(X,Y) = 2/sqrt(a b) sin(p pi X / a) sin(q pi Y / b)   (L2-normalized).
struct RectangleMode {
    int p = 1, q = 1;
    double a = 1.0, b = 1.0;
    double lambda = 0.0;

    double value(double X, double Y) const;
    Vec2 gradient(double X, double Y) const;
    // mixed partial d^(ix+iy) u / dX^ix dY^iy
    double partial(int ix, int iy, double X, double Y) const;
};

// The `count` smallest modes, ascending by eigenvalue (ties broken by p).
std::vector<RectangleMode> rectangle_modes(double a, double b, int count);

// s-th positive zero of the Bessel function J_n (n >= 0, s >= 1), found by
// bisection between consecutive extrema brackets.
double bessel_zero(int n, int s);

// Dirichlet eigenvalue of the disk of the given radius built from a Bessel
// zero: lambda_{n,s} = (j_{n,s} / radius)^2.
double disk_eigenvalue(int n, int s, double radius);

}  // namespace abclab::references
