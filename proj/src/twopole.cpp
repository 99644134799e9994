#include "abclab/twopole.hpp"

#include <cmath>
#include <stdexcept>

#include "abclab/geometry.hpp"

namespace abclab::twopole {

namespace {

long long binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    long long acc = 1;
    for (int i = 0; i < r; ++i) acc = acc * (n - i) / (i + 1);
    return acc;
}

long long pow2(int e) { return 1LL << e; }

void check_m(int m) {
    if (m < 1 || m > 12) throw std::invalid_argument("two-pole coefficients: need 1 <= m <= 12");
}

}  // namespace

Rational fourier_c(int m, int j) {
    check_m(m);
    if (j < 0 || j > m || (m - j) % 2 != 0) return Rational(0);
    return Rational(binom(m, (m - j) / 2), pow2(m - 1));
}

Rational fourier_d(int m, int j) {
    check_m(m);
    if (j < 1) return Rational(0);
    return Rational(j, m) * fourier_c(m, j);
}

Rational sum_jc2(int m) {
    check_m(m);
    Rational acc(0);
    for (int j = 1; j <= m; ++j) {
        Rational c = fourier_c(m, j);
        acc += Rational(j) * c * c;
    }
    return acc;
}

Rational sum_d2_over_j(int m) {
    check_m(m);
    Rational acc(0);
    for (int j = 1; j <= m; ++j) {
        Rational d = fourier_d(m, j);
        if (d != Rational(0)) acc += d * d / Rational(j);
    }
    return acc;
}

Rational sum_jc2_closed(int m) {
    check_m(m);
    long long b = binom(m - 1, (m - 1) / 2);
    return Rational(m) * Rational(b * b, pow2(2 * (m - 1)));
}

Rational sum_d2_over_j_closed(int m) {
    check_m(m);
    long long b = binom(m - 1, (m - 1) / 2);
    return Rational(b * b, pow2(2 * (m - 1))) / Rational(m);
}

double series_energy(int m, double l0, double l1, double eps, double r1, double L) {
    check_m(m);
    if (!(eps > 0 && r1 > 0 && L > 0)) throw std::invalid_argument("series_energy: need eps, r1, L > 0");
    double c = eps * r1;             // focal half-distance
    double xi = std::asinh(L / c);   // boundary coordinate of the confocal ellipse
    double acc = 0.0;
    if (m % 2 == 0) {
        double c0 = boost::rational_cast<double>(fourier_c(m, 0));
        acc += l0 * l0 * c0 * c0 / (4.0 * xi);
    }
    for (int j = (m % 2 == 0) ? 2 : 1; j <= m; j += 2) {
        double cj = boost::rational_cast<double>(fourier_c(m, j));
        double dj = boost::rational_cast<double>(fourier_d(m, j));
        double th = std::tanh(j * xi);
        acc += 0.5 * j * l0 * l0 * cj * cj / th;  // coth
        acc -= 0.5 * l1 * l1 * dj * dj / j * th;
    }
    return PI * std::pow(c, 2 * m) * acc;
}

double leading_coefficient(int m, double l0, double l1, double r1) {
    check_m(m);
    double s1 = boost::rational_cast<double>(sum_jc2_closed(m));
    double s2 = boost::rational_cast<double>(sum_d2_over_j_closed(m));
    return PI * std::pow(r1, 2 * m) * (l0 * l0 * s1 - l1 * l1 * s2);
}

TaylorProfile profile_from_taylor(int m, double dm_dxm, double dm_dxm1dy) {
    check_m(m);
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    // P_m = A Re(z^m) + B Im(z^m) = beta r^m sin(m(t - alpha0))
    double A = dm_dxm / fact;
    double B = dm_dxm1dy / fact;
    TaylorProfile p;
    p.beta = std::hypot(A, B);
    p.alpha0 = (p.beta > 0) ? wrap_2pi(std::atan2(-A, B) / m) : 0.0;
    // keep alpha0 in the fundamental sector [0, 2 pi / m)
    double sector = 2.0 * PI / m;
    p.alpha0 = std::fmod(p.alpha0, sector);
    if (p.alpha0 < 0) p.alpha0 += sector;
    p.l0 = A;
    p.l1 = m * B;
    return p;
}

}  // namespace abclab::twopole
