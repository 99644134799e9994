#include "abclab/gauge.hpp"

#include <cmath>
#include <stdexcept>

namespace abclab::gauge {

double theta_b(const Vec2& x, const Vec2& b) {
    double dx = x.x - b.x, dy = x.y - b.y;
    if (dx == 0.0 && dy == 0.0) throw std::domain_error("theta_b: evaluation at the pole");
    return wrap_2pi(std::atan2(dy, dx));
}

double theta_b_alpha(const Vec2& x, const Vec2& b, double alpha) {
    // rotate x about b by alpha, then take the plain branch
    double c = std::cos(alpha), s = std::sin(alpha);
    double dx = x.x - b.x, dy = x.y - b.y;
    Vec2 rot{b.x + c * dx - s * dy, b.y + s * dx + c * dy};
    return theta_b(rot, b);
}

Vec2 A_b(const Vec2& x, const Vec2& b) {
    double dx = x.x - b.x, dy = x.y - b.y;
    double r2 = dx * dx + dy * dy;
    if (r2 == 0.0) throw std::domain_error("A_b: evaluation at the pole");
    return {-0.5 * dy / r2, 0.5 * dx / r2};
}

double Theta_eps(const Vec2& x, const PoleConfiguration& cfg, double eps) {
    double acc = 0.0;
    int k = cfg.k();
    for (int j = 0; j < k; ++j) {
        Vec2 b = cfg.pole(j, eps);
        double rot;
        if (j < cfg.k1 + cfg.k2) {
            // cut from the pole back through the origin
            rot = PI - cfg.pole_angle(j);
        } else {
            // partner pole: cut continues away from the origin
            rot = -cfg.pole_angle(j);
        }
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sgn * theta_b_alpha(x, b, rot);
    }
    return 0.5 * acc;
}

double Theta_0(const Vec2& x, const PoleConfiguration& cfg) {
    double acc = 0.0;
    for (int j = 0; j < cfg.k1; ++j) {
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sgn * theta_b_alpha(x, Vec2{0, 0}, PI - cfg.angles[static_cast<size_t>(j)]);
    }
    return 0.5 * acc;
}

Vec2 A_total(const Vec2& x, const PoleConfiguration& cfg, double eps) {
    Vec2 acc{0, 0};
    for (int j = 0; j < cfg.k(); ++j) {
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        acc = acc + sgn * A_b(x, cfg.pole(j, eps));
    }
    return acc;
}

double holonomy(const PoleConfiguration& cfg, double eps, int pole_index, double radius, int nseg) {
    if (nseg < 8) throw std::invalid_argument("holonomy: need at least 8 segments");
    Vec2 c = cfg.pole(pole_index, eps);
    double acc = 0.0;
    double dt = 2.0 * PI / nseg;
    for (int i = 0; i < nseg; ++i) {
        double t = dt * (i + 0.5);
        Vec2 p{c.x + radius * std::cos(t), c.y + radius * std::sin(t)};
        Vec2 tang{-radius * std::sin(t), radius * std::cos(t)};
        acc += A_total(p, cfg, eps).dot(tang) * dt;
    }
    return acc;
}

std::complex<double> double_phase(const Vec2& x, const PoleConfiguration& cfg, double eps) {
    double th = Theta_eps(x, cfg, eps);
    return {std::cos(2.0 * th), std::sin(2.0 * th)};
}

}  // namespace abclab::gauge
