#include "abclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace abclab {

double wrap_2pi(double t) {
    double r = std::fmod(t, 2.0 * PI);
    if (r < 0) r += 2.0 * PI;
    // fmod can return exactly 2*pi after the correction when t is a tiny
    // negative number; fold that back to 0.
    if (r >= 2.0 * PI) r = 0.0;
    return r;
}

double wrap_pi(double t) {
    double r = wrap_2pi(t);
    if (r > PI) r -= 2.0 * PI;
    return r;
}

double PoleConfiguration::pole_angle(int j) const {
    if (j < 0 || j >= k()) throw std::out_of_range("pole index");
    if (j < k1 + k2) return angles[static_cast<size_t>(j)];
    // partner pole of pair j - k2, on the opposite side of the origin
    return wrap_pi(angles[static_cast<size_t>(j - k2)] + PI);
}

Vec2 PoleConfiguration::pole(int j, double eps) const {
    double a = pole_angle(j);
    double r = eps * pole_radius(j);
    return {r * std::cos(a), r * std::sin(a)};
}

void PoleConfiguration::validate() const {
    if (k1 < 0 || k2 < 0 || k() == 0)
        throw std::invalid_argument("pole configuration: need k1, k2 >= 0 and k1 + 2 k2 > 0");
    if (angles.size() != static_cast<size_t>(k1 + k2))
        throw std::invalid_argument("pole configuration: angles must have k1 + k2 entries");
    if (radii.size() != static_cast<size_t>(k()))
        throw std::invalid_argument("pole configuration: radii must have k1 + 2 k2 entries");
    for (double a : angles)
        if (!(a > -PI && a <= PI))
            throw std::invalid_argument("pole configuration: angles must lie in (-pi, pi]");
    for (double r : radii) {
        if (!(r > 0)) throw std::invalid_argument("pole configuration: radii must be positive");
        if (!(r < R)) throw std::invalid_argument("pole configuration: radii must stay below R");
    }
    // Directions must be pairwise distinct, including pair partners at
    // alpha + pi: otherwise two cracks overlap.
    std::vector<double> dirs;
    for (int j = 0; j < k(); ++j) dirs.push_back(wrap_2pi(pole_angle(j)));
    std::sort(dirs.begin(), dirs.end());
    for (size_t i = 0; i < dirs.size(); ++i) {
        double next = (i + 1 < dirs.size()) ? dirs[i + 1] : dirs[0] + 2.0 * PI;
        if (next - dirs[i] < 1e-12)
            throw std::invalid_argument("pole configuration: coincident pole directions");
    }
}

int sign_f(double t, const PoleConfiguration& cfg) {
    double tt = wrap_2pi(t);
    int s = 1;
    for (int j = 0; j < cfg.k1; ++j) {
        double flip = wrap_2pi(cfg.angles[static_cast<size_t>(j)] + PI);
        if (tt >= flip) s = -s;
    }
    return s;
}

PointValue psi0(const Vec2& x, const BlowupProfile& prof, const PoleConfiguration& cfg) {
    double r = x.norm();
    double mu = prof.mu();
    PointValue out;
    if (r == 0.0) {
        if (mu < 1.0) throw std::domain_error("psi0 gradient is singular at the origin");
        out.value = (mu == 0.0) ? prof.beta * static_cast<double>(sign_f(0.0, cfg)) : 0.0;
        return out;
    }
    double t = wrap_2pi(std::atan2(x.y, x.x));
    double f = static_cast<double>(prof.k_odd ? sign_f(t, cfg) : 1);
    double s = std::sin(mu * (t - prof.alpha0));
    double c = std::cos(mu * (t - prof.alpha0));
    double rp = std::pow(r, mu);
    out.value = prof.beta * rp * f * s;
    double amp = prof.beta * mu * rp / r * f;
    double ct = x.x / r, st = x.y / r;
    // grad = d/dr e_r + (1/r) d/dt e_t in polar coordinates
    out.grad = {amp * (s * ct - c * st), amp * (s * st + c * ct)};
    return out;
}

DomainSpec DomainSpec::rectangle(double a, double b, double cx, double cy) {
    if (!(a > 0 && b > 0)) throw std::invalid_argument("rectangle: sides must be positive");
    if (!(cx > 0 && cx < a && cy > 0 && cy < b))
        throw std::invalid_argument("rectangle: collision point must be interior");
    DomainSpec d;
    d.kind = Kind::Rectangle;
    d.rect_a = a;
    d.rect_b = b;
    d.rect_cx = cx;
    d.rect_cy = cy;
    d.poly = {{-cx, -cy}, {a - cx, -cy}, {a - cx, b - cy}, {-cx, b - cy}};
    return d;
}

DomainSpec DomainSpec::disk(double radius, int nseg) {
    if (!(radius > 0) || nseg < 8) throw std::invalid_argument("disk: bad radius or segment count");
    DomainSpec d;
    d.kind = Kind::Polygon;
    for (int i = 0; i < nseg; ++i) {
        double t = 2.0 * PI * i / nseg;
        d.poly.push_back({radius * std::cos(t), radius * std::sin(t)});
    }
    return d;
}

DomainSpec DomainSpec::ellipse(double sa, double sb, int nseg) {
    if (!(sa > 0 && sb > 0) || nseg < 8) throw std::invalid_argument("ellipse: bad axes or segment count");
    DomainSpec d;
    d.kind = Kind::Polygon;
    for (int i = 0; i < nseg; ++i) {
        double t = 2.0 * PI * i / nseg;
        d.poly.push_back({sa * std::cos(t), sb * std::sin(t)});
    }
    return d;
}

DomainSpec DomainSpec::annulus(double rin, double rout) {
    if (!(rin > 0 && rout > rin)) throw std::invalid_argument("annulus: need 0 < rin < rout");
    DomainSpec d;
    d.kind = Kind::Annulus;
    d.inner_radius = rin;
    d.outer_radius = rout;
    return d;
}

double DomainSpec::boundary_radius(double phi) const {
    if (kind == Kind::Annulus) return outer_radius;
    // Ray from the origin in direction phi against each polygon edge.
    Vec2 dir{std::cos(phi), std::sin(phi)};
    double best = std::numeric_limits<double>::infinity();
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        Vec2 e = q - p;
        double denom = dir.cross(e);
        if (std::abs(denom) < 1e-15) continue;  // ray parallel to edge
        // origin + t*dir = p + s*e
        double t = p.cross(e) / denom;
        double s = p.cross(dir) / denom;
        if (t > 0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::min(best, t);
    }
    if (!std::isfinite(best)) throw std::runtime_error("boundary_radius: ray misses polygon");
    return best;
}

double DomainSpec::inradius() const {
    if (kind == Kind::Annulus) throw std::logic_error("inradius: annulus has no center");
    double best = std::numeric_limits<double>::infinity();
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        Vec2 e = q - p;
        double len = e.norm();
        // distance from origin to segment pq
        double t = std::clamp(-p.dot(e) / (len * len), 0.0, 1.0);
        best = std::min(best, (p + e * t).norm());
    }
    return best;
}

std::vector<double> DomainSpec::corner_angles() const {
    std::vector<double> out;
    for (const Vec2& p : poly) out.push_back(wrap_2pi(std::atan2(p.y, p.x)));
    return out;
}

double DomainSpec::area() const {
    if (kind == Kind::Annulus)
        return PI * (outer_radius * outer_radius - inner_radius * inner_radius);
    double a = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) a += poly[i].cross(poly[(i + 1) % n]);
    return 0.5 * a;
}

bool DomainSpec::contains(const Vec2& p) const {
    if (kind == Kind::Annulus) {
        double r = p.norm();
        return r > inner_radius && r < outer_radius;
    }
    double r = p.norm();
    if (r == 0) return true;
    return r < boundary_radius(std::atan2(p.y, p.x));
}

CrackLayout build_crack_layout(const PoleConfiguration& cfg, double eps, const DomainSpec& dom) {
    cfg.validate();
    if (!(eps > 0)) throw std::invalid_argument("build_crack_layout: eps must be positive");
    CrackLayout lay;
    lay.eps = eps;

    for (int j = 0; j < cfg.k1 + cfg.k2; ++j) {
        CrackLayout::Crack c;
        c.j = j;
        c.is_pair = (j >= cfg.k1);
        c.alpha = cfg.angles[static_cast<size_t>(j)];
        c.nu = {-std::sin(c.alpha), std::cos(c.alpha)};
        c.stub_plus = eps * cfg.pole_radius(j);
        if (c.is_pair) {
            c.stub_minus = eps * cfg.pole_radius(j + cfg.k2);
        } else {
            c.ray_end = dom.boundary_radius(c.alpha + PI);
        }

        if (dom.kind != DomainSpec::Kind::Annulus) {
            if (!(c.stub_plus < dom.boundary_radius(c.alpha)))
                throw std::invalid_argument("build_crack_layout: pole outside the domain");
            if (c.is_pair && !(c.stub_minus < dom.boundary_radius(c.alpha + PI)))
                throw std::invalid_argument("build_crack_layout: partner pole outside the domain");
        }

        int ci = static_cast<int>(lay.cracks.size());
        CrackSpoke plus;
        plus.angle = wrap_2pi(c.alpha);
        plus.r_end = c.stub_plus;
        plus.tip = true;
        plus.affine_side = true;
        plus.crack = ci;
        plus.plus_is_ccw = true;  // +nu side is the CCW side of the alpha spoke
        lay.spokes.push_back(plus);

        CrackSpoke minus;
        minus.angle = wrap_2pi(c.alpha + PI);
        minus.crack = ci;
        minus.plus_is_ccw = false;  // +nu side is the CW side of the alpha+pi spoke
        if (c.is_pair) {
            minus.r_end = c.stub_minus;
            minus.tip = true;
            minus.affine_side = true;
        } else {
            minus.r_end = c.ray_end;
            minus.tip = false;
            minus.affine_side = false;
        }
        lay.spokes.push_back(minus);

        lay.cracks.push_back(c);
    }

    std::vector<double> ang;
    for (const auto& s : lay.spokes) ang.push_back(s.angle);
    std::sort(ang.begin(), ang.end());
    for (size_t i = 0; i + 1 < ang.size(); ++i)
        if (ang[i + 1] - ang[i] < 1e-12)
            throw std::invalid_argument("build_crack_layout: overlapping crack spokes");
    if (ang.size() > 1 && ang.front() + 2.0 * PI - ang.back() < 1e-12)
        throw std::invalid_argument("build_crack_layout: overlapping crack spokes");

    return lay;
}

}  // namespace abclab
