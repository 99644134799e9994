#include "abclab/references.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abclab::references {

double RectangleMode::value(double X, double Y) const {
    double n = 2.0 / std::sqrt(a * b);
    return n * std::sin(p * PI * X / a) * std::sin(q * PI * Y / b);
}

Vec2 RectangleMode::gradient(double X, double Y) const {
    return {partial(1, 0, X, Y), partial(0, 1, X, Y)};
}

double RectangleMode::partial(int ix, int iy, double X, double Y) const {
    // each derivative of sin adds pi/2 to the phase and one factor p*pi/a
    double n = 2.0 / std::sqrt(a * b);
    double wx = p * PI / a, wy = q * PI / b;
    double fx = std::pow(wx, ix) * std::sin(wx * X + 0.5 * PI * ix);
    double fy = std::pow(wy, iy) * std::sin(wy * Y + 0.5 * PI * iy);
    return n * fx * fy;
}

std::vector<RectangleMode> rectangle_modes(double a, double b, int count) {
    if (!(a > 0 && b > 0) || count < 1) throw std::invalid_argument("rectangle_modes: bad input");
    // enough index range to cover `count` smallest values
    int pm = 2 + static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)) * 4));
    std::vector<RectangleMode> all;
    for (int p = 1; p <= pm; ++p)
        for (int q = 1; q <= pm; ++q) {
            RectangleMode m;
            m.p = p;
            m.q = q;
            m.a = a;
            m.b = b;
            m.lambda = PI * PI * (p * p / (a * a) + q * q / (b * b));
            all.push_back(m);
        }
    std::sort(all.begin(), all.end(), [](const RectangleMode& l, const RectangleMode& r) {
        if (l.lambda != r.lambda) return l.lambda < r.lambda;
        return l.p < r.p;
    });
    all.resize(static_cast<size_t>(count));
    return all;
}

double bessel_zero(int n, int s) {
    if (n < 0 || s < 1) throw std::invalid_argument("bessel_zero: need n >= 0, s >= 1");
    auto J = [n](double x) { return std::cyl_bessel_j(static_cast<double>(n), x); };
    // Walk in small steps to find the s-th sign change; McMahon says zeros of
    // J_n are roughly pi apart beyond the first, starting near n + 2.
    double x = std::max(1e-3, 0.5 * n);
    double step = 0.1;
    double prev = J(x);
    int found = 0;
    double lo = 0, hi = 0;
    while (found < s) {
        double xn = x + step;
        double cur = J(xn);
        if ((prev < 0) != (cur < 0)) {
            ++found;
            lo = x;
            hi = xn;
        }
        x = xn;
        prev = cur;
        if (x > 1e4) throw std::runtime_error("bessel_zero: bracket search ran away");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((J(lo) < 0) != (J(mid) < 0))
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double disk_eigenvalue(int n, int s, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("disk_eigenvalue: radius must be positive");
    double j = bessel_zero(n, s);
    return (j / radius) * (j / radius);
}

}  // namespace abclab::references
