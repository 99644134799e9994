#pragma once

#include <boost/rational.hpp>

namespace abclab::twopole {

using Rational = boost::rational<long long>;

// Fourier cosine coefficients of cos^m on [0, 2*pi):
//   cos^m(eta) = c_0/2 + sum_{j>=1} c_j cos(j eta),
//   c_j = binom(m, (m-j)/2) / 2^(m-1) when j <= m and j == m (mod 2), else 0.
// Exact rationals; m up to 12 stays well inside 64-bit range.
Rational fourier_c(int m, int j);

// Coefficients of cos^(m-1)(eta) sin(eta) = sum_{j>=1} d_j sin(j eta),
// d_j = (j/m) c_j.
Rational fourier_d(int m, int j);

// Weighted sums entering the segment energy, by direct summation.
Rational sum_jc2(int m);       // sum_{j=1..m} j c_j^2
Rational sum_d2_over_j(int m); // sum_{j=1..m} d_j^2 / j

// The same sums in closed form via a central binomial coefficient:
//   sum j c_j^2      = m / 4^(m-1) * binom(m-1, floor((m-1)/2))^2
//   sum d_j^2 / j    = 1 / (m 4^(m-1)) * binom(m-1, floor((m-1)/2))^2
Rational sum_jc2_closed(int m);
Rational sum_d2_over_j_closed(int m);

// Energy of the segment potential for polynomial data
//   h = l0 x^m + l1 x^(m-1) y + ...  (only l0, l1 matter on the segment)
// on the ellipse with foci +-(eps r1, 0) and semi-minor axis L, cut along the
// segment between the foci.  Exact up to the truncation of nothing: the
// Fourier series in elliptic coordinates terminates at mode m.
//   E = pi (eps r1)^(2m) [ l0^2 c0^2 / (4 xi)
//        + sum_j ( (j/2) l0^2 c_j^2 coth(j xi) - (l1^2/2) (d_j^2/j) tanh(j xi) ) ],
//   xi = asinh(L / (eps r1)).
double series_energy(int m, double l0, double l1, double eps, double r1, double L);

// Leading coefficient of the eigenvalue variation 2 E_eps as eps -> 0:
//   lambda_eps - lambda_0 ~ coeff * eps^(2m),
//   coeff = pi r1^(2m) (l0^2 sum_jc2 - l1^2 sum_d2_over_j).
double leading_coefficient(int m, double l0, double l1, double r1);

// Local profile of a smooth eigenfunction at the collision point from its
// m-th order Taylor data: u = beta r^m sin(m(t - alpha0)) + O(r^(m+1)) with
//   l0 = d^m u / dx^m / m!,   l1/m = d^m u / dx^(m-1) dy / m!.
struct TaylorProfile {
    double beta = 0, alpha0 = 0, l0 = 0, l1 = 0;
};
TaylorProfile profile_from_taylor(int m, double dm_dxm, double dm_dxm1dy);

}  // namespace abclab::twopole
