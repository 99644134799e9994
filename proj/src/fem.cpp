#include "abclab/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace abclab::fem {

namespace {

struct TriGeom {
    Vec2 g[3];  // barycentric gradients
    double area;
};

TriGeom tri_geom(const CrackedMesh& m, size_t t) {
    const auto& tri = m.T[t];
    Vec2 p0 = m.V[static_cast<size_t>(tri[0])];
    Vec2 p1 = m.V[static_cast<size_t>(tri[1])];
    Vec2 p2 = m.V[static_cast<size_t>(tri[2])];
    double a2 = (p1 - p0).cross(p2 - p0);
    TriGeom g;
    g.area = 0.5 * a2;
    g.g[0] = Vec2{p1.y - p2.y, p2.x - p1.x} * (1.0 / a2);
    g.g[1] = Vec2{p2.y - p0.y, p0.x - p2.x} * (1.0 / a2);
    g.g[2] = Vec2{p0.y - p1.y, p1.x - p0.x} * (1.0 / a2);
    return g;
}

constexpr double kGaussX[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                               0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr double kGaussW[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                               0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

// integral of f over [a, b] with a 6 point Gauss rule
template <class F>
double gauss6(double a, double b, const F& f) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0;
    for (int q = 0; q < 6; ++q) s += kGaussW[q] * f(c + h * kGaussX[q]);
    return s * h;
}

// integral over [r0, r1]; when r0 is an endpoint where the density can blow
// up like r^(mu-1), panels are halved toward it until they stop contributing
template <class F>
double quad_edge(double r0, double r1, const F& f) {
    if (r0 > 1e-14 * r1) return gauss6(r0, r1, f);
    double acc = 0, hi = r1;
    for (int l = 0; l < 60; ++l) {
        double lo = 0.5 * hi;
        double panel = gauss6(lo, hi, f);
        acc += panel;
        if (std::abs(panel) <= 1e-13 * std::abs(acc) || std::abs(panel) < 1e-300) break;
        hi = lo;
    }
    return acc;
}

}  // namespace

linalg::SpMat stiffness(const CrackedMesh& m) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(m.T.size() * 9);
    for (size_t t = 0; t < m.T.size(); ++t) {
        TriGeom g = tri_geom(m, t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trip.emplace_back(m.T[t][static_cast<size_t>(i)], m.T[t][static_cast<size_t>(j)],
                                  g.area * g.g[i].dot(g.g[j]));
    }
    linalg::SpMat K(static_cast<int>(m.nv()), static_cast<int>(m.nv()));
    K.setFromTriplets(trip.begin(), trip.end());
    K.makeCompressed();
    return K;
}

linalg::SpMat mass(const CrackedMesh& m) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(m.T.size() * 9);
    for (size_t t = 0; t < m.T.size(); ++t) {
        double a = m.triangle_area(t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trip.emplace_back(m.T[t][static_cast<size_t>(i)], m.T[t][static_cast<size_t>(j)],
                                  a / 12.0 * (i == j ? 2.0 : 1.0));
    }
    linalg::SpMat M(static_cast<int>(m.nv()), static_cast<int>(m.nv()));
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();
    return M;
}

linalg::SpMat weighted_mass(const CrackedMesh& m, const std::function<double(const Vec2&)>& w) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(m.T.size() * 9);
    for (size_t t = 0; t < m.T.size(); ++t) {
        double a = m.triangle_area(t);
        const auto& tri = m.T[t];
        Vec2 p[3] = {m.V[static_cast<size_t>(tri[0])], m.V[static_cast<size_t>(tri[1])],
                     m.V[static_cast<size_t>(tri[2])]};
        // midpoint of the edge opposite vertex k carries phi_i = 1/2 for i != k
        double wm[3];
        for (int k = 0; k < 3; ++k) wm[k] = w((p[(k + 1) % 3] + p[(k + 2) % 3]) * 0.5);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k)
                    if (i != k && j != k) s += wm[k];
                trip.emplace_back(tri[static_cast<size_t>(i)], tri[static_cast<size_t>(j)], a / 3.0 * 0.25 * s);
            }
    }
    linalg::SpMat M(static_cast<int>(m.nv()), static_cast<int>(m.nv()));
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();
    return M;
}

linalg::Vector interpolate(const CrackedMesh& m, const std::function<double(const Vec2&)>& f) {
    linalg::Vector u(static_cast<Eigen::Index>(m.nv()));
    for (size_t i = 0; i < m.nv(); ++i) u[static_cast<Eigen::Index>(i)] = f(m.V[i]);
    return u;
}

double crack_integral(const CrackedMesh& m, const CrackDensity& dnu, const std::function<double(const Vec2&)>& g) {
    double total = 0;
    for (const auto& tr : m.traces) {
        if (!tr.affine) continue;
        Vec2 e{std::cos(tr.angle), std::sin(tr.angle)};
        for (size_t i = 0; i + 1 < tr.radius.size(); ++i) {
            double r0 = tr.radius[i], r1 = tr.radius[i + 1];
            total += quad_edge(r0, r1, [&](double r) {
                Vec2 x = r * e;
                return dnu(x, tr.crack) * g(x);
            });
        }
    }
    return 2.0 * total;
}

double crack_integral_field(const CrackedMesh& m, const CrackDensity& dnu, const linalg::Vector& u) {
    double total = 0;
    for (const auto& tr : m.traces) {
        if (!tr.affine) continue;
        Vec2 e{std::cos(tr.angle), std::sin(tr.angle)};
        for (size_t i = 0; i + 1 < tr.radius.size(); ++i) {
            double r0 = tr.radius[i], r1 = tr.radius[i + 1];
            double u0 = u[tr.plus_nodes[i]], u1 = u[tr.plus_nodes[i + 1]];
            total += quad_edge(r0, r1, [&](double r) {
                double s = (r - r0) / (r1 - r0);
                return dnu(r * e, tr.crack) * (u0 + (u1 - u0) * s);
            });
        }
    }
    return 2.0 * total;
}

linalg::Vector crack_load(const CrackedMesh& m, const CrackDensity& dnu) {
    linalg::Vector l = linalg::Vector::Zero(static_cast<Eigen::Index>(m.nv()));
    for (const auto& tr : m.traces) {
        if (!tr.affine) continue;
        Vec2 e{std::cos(tr.angle), std::sin(tr.angle)};
        for (size_t i = 0; i + 1 < tr.radius.size(); ++i) {
            double r0 = tr.radius[i], r1 = tr.radius[i + 1];
            double c0 = quad_edge(r0, r1, [&](double r) {
                return dnu(r * e, tr.crack) * (r1 - r) / (r1 - r0);
            });
            double c1 = quad_edge(r0, r1, [&](double r) {
                return dnu(r * e, tr.crack) * (r - r0) / (r1 - r0);
            });
            l[tr.plus_nodes[i]] += 2.0 * c0;
            l[tr.plus_nodes[i + 1]] += 2.0 * c1;
        }
    }
    return l;
}

}  // namespace abclab::fem
