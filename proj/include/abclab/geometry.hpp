#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace abclab {

constexpr double PI = 3.141592653589793238462643383279502884;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Reduce an angle to [0, 2*pi).
double wrap_2pi(double t);

// Reduce an angle to (-pi, pi].
double wrap_pi(double t);

// Pole layout: k1 poles that collapse toward the origin alone, k2 pairs of
// poles that collapse jointly along a line through the origin.  The first
// k1 + k2 entries of `angles` give the direction alpha^j of pole j; the
// partner of pair pole j (k1 <= j < k1+k2) sits at angle alpha^j + pi with
// its own radius.  Scaled positions are a_eps^j = eps * r_j * (cos, sin).
struct PoleConfiguration {
    int k1 = 0;
    int k2 = 0;
    std::vector<double> angles;  // size k1 + k2, values in (-pi, pi]
    std::vector<double> radii;   // size k1 + 2*k2, positive
    double R = 0.5;              // containment radius, all radii < R

    int k() const { return k1 + 2 * k2; }

    // Direction angle of pole j, 0 <= j < k.
    double pole_angle(int j) const;
    double pole_radius(int j) const { return radii.at(static_cast<size_t>(j)); }
    Vec2 pole(int j, double eps) const;

    // Throws std::invalid_argument when sizes, ranges or distinctness fail.
    void validate() const;
};

// Sign factor f(t): flips across the ray opposite each solo pole direction.
// t is any angle; internally reduced to [0, 2*pi).
int sign_f(double t, const PoleConfiguration& cfg);

// Leading local profile of the limit eigenfunction at the collision point:
//   psi0 = beta * r^mu * f(t) * sin(mu * (t - alpha0)),  mu = m/2 (k odd) or m.
struct BlowupProfile {
    int m = 1;
    double beta = 1.0;
    double alpha0 = 0.0;
    bool k_odd = true;

    double mu() const { return k_odd ? 0.5 * m : static_cast<double>(m); }
};

struct PointValue {
    double value = 0.0;
    Vec2 grad{0.0, 0.0};
};

// Evaluate the profile and its gradient away from the origin (throws at 0
// when the gradient is singular there, i.e. mu < 1).
PointValue psi0(const Vec2& x, const BlowupProfile& prof, const PoleConfiguration& cfg);

// Computational domain.  Polygonal, star shaped with respect to the origin,
// which is always the collision point of the poles.  Rectangles remember the
// original axis-aligned box (0,a)x(0,b) and the interior point mapped to the
// origin, so analytic reference modes can be evaluated in box coordinates.
struct DomainSpec {
    enum class Kind { Rectangle, Polygon, Annulus };

    Kind kind = Kind::Polygon;
    std::vector<Vec2> poly;  // CCW vertices, origin strictly inside (not Annulus)

    // Rectangle bookkeeping (box (0,a)x(0,b), collision point (cx,cy)).
    double rect_a = 0, rect_b = 0, rect_cx = 0, rect_cy = 0;

    // Annulus bookkeeping (circles are meshed as rings, no polygon needed).
    double inner_radius = 0, outer_radius = 0;

    static DomainSpec rectangle(double a, double b, double cx, double cy);
    static DomainSpec disk(double radius, int nseg);
    static DomainSpec ellipse(double sa, double sb, int nseg);
    static DomainSpec annulus(double rin, double rout);

    // Radius of the boundary in direction phi (polygon kinds).
    double boundary_radius(double phi) const;
    // Largest rho with D_rho contained in the domain.
    double inradius() const;
    // Angles of polygon vertices (sector breakpoints for meshing).
    std::vector<double> corner_angles() const;
    double area() const;
    bool contains(const Vec2& p) const;
};

// One meshed half-line of a crack.  A crack contributes one or two spokes:
// the segment sides near the poles (affine data in potential problems) and,
// for solo poles, the ray running from the origin to the boundary.
struct CrackSpoke {
    double angle = 0;       // direction of the spoke
    double r_end = 0;       // spoke covers radii [0, r_end]
    bool tip = false;       // r_end is an interior crack tip
    bool affine_side = true;// carries inhomogeneous trace data for potentials
    int crack = 0;          // owning crack index
    bool plus_is_ccw = true;// which duplicated sheet is the +nu side
};

struct CrackLayout {
    struct Crack {
        int j = 0;           // pole index of the defining pole
        bool is_pair = false;
        double alpha = 0;    // crack line direction alpha^j
        Vec2 nu{0, 1};       // unit normal (-sin alpha, cos alpha)
        double stub_plus = 0;  // crack extent along alpha (eps * r_j)
        double stub_minus = 0; // pair partner extent along alpha + pi (0 for solo)
        double ray_end = 0;    // solo only: boundary radius along alpha + pi
    };

    double eps = 0;
    std::vector<Crack> cracks;
    std::vector<CrackSpoke> spokes;  // all spoke angles pairwise distinct
};

// Assemble the crack geometry for the eps-scaled configuration inside the
// given domain.  Solo poles cut from the boundary through the origin to the
// pole; pairs cut between the two poles through the origin.  Throws when two
// spokes would coincide or a pole leaves the domain.
CrackLayout build_crack_layout(const PoleConfiguration& cfg, double eps, const DomainSpec& dom);

}  // namespace abclab
