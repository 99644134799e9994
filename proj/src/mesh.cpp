#include "abclab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace abclab {

double CrackedMesh::triangle_area(int t) const {
    const auto& tri = T[static_cast<size_t>(t)];
    Vec2 a = V[static_cast<size_t>(tri[0])];
    Vec2 b = V[static_cast<size_t>(tri[1])];
    Vec2 c = V[static_cast<size_t>(tri[2])];
    return 0.5 * (b - a).cross(c - a);
}

void CrackedMesh::validate(const DomainSpec* dom) const {
    if (on_boundary.size() != V.size()) throw std::runtime_error("mesh: marker array size mismatch");
    double total = 0;
    for (int t = 0; t < nt(); ++t) {
        for (int v : T[static_cast<size_t>(t)])
            if (v < 0 || v >= nv()) throw std::runtime_error("mesh: vertex index out of range");
        double a = triangle_area(t);
        if (!(a > 0)) {
            std::ostringstream os;
            os << "mesh: non-positive triangle " << t << " area " << a;
            throw std::runtime_error(os.str());
        }
        total += a;
    }
    for (const auto& p : pairs) {
        if (p.plus < 0 || p.plus >= nv() || p.minus < 0 || p.minus >= nv() || p.plus == p.minus)
            throw std::runtime_error("mesh: bad duplicate pair");
        const Vec2& a = V[static_cast<size_t>(p.plus)];
        const Vec2& b = V[static_cast<size_t>(p.minus)];
        if (a.x != b.x || a.y != b.y) throw std::runtime_error("mesh: duplicate pair coordinates differ");
    }
    for (const auto& tr : traces) {
        if (tr.radius.size() != tr.plus_nodes.size() || tr.radius.size() != tr.minus_nodes.size())
            throw std::runtime_error("mesh: trace arrays inconsistent");
        for (size_t i = 0; i + 1 < tr.radius.size(); ++i)
            if (!(tr.radius[i] < tr.radius[i + 1])) throw std::runtime_error("mesh: trace radii not ascending");
        for (size_t i = 0; i < tr.radius.size(); ++i) {
            Vec2 want{tr.radius[i] * std::cos(tr.angle), tr.radius[i] * std::sin(tr.angle)};
            Vec2 got = V[static_cast<size_t>(tr.plus_nodes[i])];
            if ((got - want).norm() > 1e-9 * (1.0 + tr.radius[i]))
                throw std::runtime_error("mesh: trace node off the spoke");
        }
    }
    if (dom && dom->kind != DomainSpec::Kind::Annulus) {
        double want = dom->area();
        if (std::abs(total - want) > 1e-9 * want)
            throw std::runtime_error("mesh: triangle areas do not sum to the domain area");
    }
}

double CrackedMesh::eval(const std::vector<double>& u, const Vec2& p) const {
    if (u.size() != V.size()) throw std::invalid_argument("eval: field size mismatch");
    for (int t = 0; t < nt(); ++t) {
        const auto& tri = T[static_cast<size_t>(t)];
        Vec2 a = V[static_cast<size_t>(tri[0])];
        Vec2 b = V[static_cast<size_t>(tri[1])];
        Vec2 c = V[static_cast<size_t>(tri[2])];
        double det = (b - a).cross(c - a);
        double l1 = (p - a).cross(c - a) / det;
        double l2 = (b - a).cross(p - a) / det;
        double l0 = 1.0 - l1 - l2;
        double tol = -1e-10;
        if (l0 >= tol && l1 >= tol && l2 >= tol)
            return l0 * u[static_cast<size_t>(tri[0])] + l1 * u[static_cast<size_t>(tri[1])] +
                   l2 * u[static_cast<size_t>(tri[2])];
    }
    throw std::runtime_error("eval: point not inside any triangle");
}

namespace {

constexpr double kRelTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kRelTol * (1.0 + std::abs(a) + std::abs(b)); }

struct Gen {
    const DomainSpec& dom;
    const CrackLayout& lay;
    const MeshParams& prm;

    // Shells are scaled copies of the boundary (polygon or outer circle),
    // parametrized by t in (0, 1]: the shell at t passes through t*rb(phi)
    // along each angle.  Scaled copies never intersect, so no special blend
    // zone between boundary shape and interior circles is needed.
    bool annulus = false;
    double r_ref = 0;  // inradius (polygon) or outer radius (annulus)

    struct BP {
        double angle = 0;
        int spoke = -1;  // index into lay.spokes, -1 for the fallback
        double rb = 0;   // boundary radius along this angle
    };
    std::vector<BP> bps;
    std::vector<double> corners;      // polar angles of sharp polygon corners
    std::vector<double> all_corners;  // polar angles of every polygon vertex
    struct TipT {
        double t, fl;
    };
    std::vector<TipT> tips_t;  // tip attractors in shell units
    double floor_t = 0;

    CrackedMesh out;
    std::vector<SpokeTrace> traces;  // one per spoke (same order)

    struct Ring {
        struct Node {
            int cw = -1, ccw = -1;
        };
        std::vector<Node> at_bp;
        // per sector, (angle offset from sector start, vertex id); endpoints included
        std::vector<std::vector<std::pair<double, int>>> arcs;
    };

    Gen(const DomainSpec& d, const CrackLayout& l, const MeshParams& p) : dom(d), lay(l), prm(p) {}

    double rb_of(double phi) const { return annulus ? dom.outer_radius : dom.boundary_radius(phi); }

    // Scale step at shell t; physical step along an angle is this times rb(phi).
    double shell_step(double t) const {
        double sz = prm.h * std::max(1.0, prm.far_growth * t * r_ref) / r_ref;
        if (!annulus) sz = std::min(sz, 0.5 * t);
        for (const TipT& a : tips_t)
            sz = std::min(sz, std::max(prm.grade_q * std::abs(t - a.t), a.fl));
        return sz;
    }

    int add_vertex(const Vec2& p, bool boundary) {
        out.V.push_back(p);
        out.on_boundary.push_back(boundary ? 1 : 0);
        return static_cast<int>(out.V.size()) - 1;
    }

    void setup() {
        annulus = (dom.kind == DomainSpec::Kind::Annulus);
        if (annulus) {
            r_ref = dom.outer_radius;
        } else {
            r_ref = dom.inradius();
            const auto& P = dom.poly;
            size_t n = P.size();
            for (size_t i = 0; i < n; ++i) {
                Vec2 e0 = P[i] - P[(i + n - 1) % n];
                Vec2 e1 = P[(i + 1) % n] - P[i];
                double turn = std::abs(std::atan2(e0.cross(e1), e0.dot(e1)));
                double ang = std::atan2(P[i].y, P[i].x);
                all_corners.push_back(ang);
                if (turn > 0.2) corners.push_back(ang);
            }
            std::sort(corners.begin(), corners.end());
            std::sort(all_corners.begin(), all_corners.end());
        }

        double min_tip = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < lay.spokes.size(); ++i) {
            const CrackSpoke& sp = lay.spokes[i];
            double rb = rb_of(sp.angle);
            bps.push_back({sp.angle, static_cast<int>(i), rb});
            if (sp.tip) {
                double a = sp.r_end / rb;
                if (!(a <= 0.75))
                    throw std::runtime_error("generate_mesh: crack tip too close to the boundary");
                double fl = std::pow(prm.grade_q, prm.grade_depth) * std::min(prm.h, sp.r_end) / rb;
                tips_t.push_back({a, fl});
                min_tip = std::min(min_tip, sp.r_end);
            }
        }
        if (bps.empty()) bps.push_back({0.0, -1, rb_of(0.0)});
        std::sort(bps.begin(), bps.end(), [](const BP& a, const BP& b) { return a.angle < b.angle; });

        double s0 = std::min(prm.h, r_ref);
        if (!tips_t.empty()) s0 = std::min(s0, min_tip);
        floor_t = std::pow(prm.grade_q, prm.grade_depth) * s0 / r_ref;
    }

    std::vector<double> build_ladder() const {
        std::vector<double> tt;
        tt.push_back(1.0);
        double t_in = annulus ? dom.inner_radius / dom.outer_radius : 0.0;
        double t = 1.0;
        for (int guard = 0;; ++guard) {
            if (guard >= 200000) throw std::runtime_error("generate_mesh: shell ladder did not terminate");
            double dz = shell_step(t);
            double next = t - dz;
            double snapv = -1;
            for (const TipT& a : tips_t)
                if (a.t < t - 1e-15 && a.t >= next) snapv = std::max(snapv, a.t);
            if (annulus && t_in >= next - 0.25 * dz) {
                // land exactly on the inner circle
                if (snapv > t_in) {
                    tt.push_back(snapv);
                    t = snapv;
                    continue;
                }
                tt.push_back(t_in);
                break;
            }
            if (snapv > 0) next = snapv;
            if (!annulus && next <= 1.5 * floor_t) {
                tt.push_back(std::max(next, floor_t));
                break;
            }
            tt.push_back(next);
            t = next;
        }
        return tt;
    }

    Ring build_ring(double t, bool boundary_ring, bool force_all_corners) {
        size_t nbp = bps.size();
        Ring ring;
        ring.at_bp.resize(nbp);
        ring.arcs.resize(nbp);

        for (size_t b = 0; b < nbp; ++b) {
            double phi = bps[b].angle;
            double r = t * bps[b].rb;
            int sidx = bps[b].spoke;
            bool cracked = false, tip = false;
            if (sidx >= 0) {
                const CrackSpoke& sp = lay.spokes[static_cast<size_t>(sidx)];
                if (near(r, sp.r_end)) {
                    r = sp.r_end;  // snap exactly, trace radii must match the layout
                    tip = sp.tip;
                    cracked = !sp.tip;  // crack meets the boundary: duplicated endpoint
                } else if (r < sp.r_end) {
                    cracked = true;
                }
            }
            Vec2 p{r * std::cos(phi), r * std::sin(phi)};
            if (cracked) {
                const CrackSpoke& sp = lay.spokes[static_cast<size_t>(sidx)];
                int id_cw = add_vertex(p, boundary_ring);
                int id_ccw = add_vertex(p, boundary_ring);
                ring.at_bp[b] = {id_cw, id_ccw};
                int plus = sp.plus_is_ccw ? id_ccw : id_cw;
                int minus = sp.plus_is_ccw ? id_cw : id_ccw;
                out.pairs.push_back({plus, minus, sp.crack, sp.affine_side});
                auto& tr = traces[static_cast<size_t>(sidx)];
                tr.radius.push_back(r);
                tr.plus_nodes.push_back(plus);
                tr.minus_nodes.push_back(minus);
            } else {
                int id = add_vertex(p, boundary_ring);
                ring.at_bp[b] = {id, id};
                if (tip) {
                    out.tips.push_back(id);
                    auto& tr = traces[static_cast<size_t>(sidx)];
                    tr.radius.push_back(r);
                    tr.plus_nodes.push_back(id);
                    tr.minus_nodes.push_back(id);
                }
            }
        }

        for (size_t s = 0; s < nbp; ++s) {
            double phi0 = bps[s].angle;
            double span = (nbp == 1) ? 2.0 * PI : wrap_2pi(bps[(s + 1) % nbp].angle - phi0);
            if (span == 0.0) span = 2.0 * PI;

            std::vector<double> forced{0.0};
            for (double c : (force_all_corners ? all_corners : corners)) {
                double off = wrap_2pi(c - phi0);
                if (off > 1e-12 && off < span - 1e-12) forced.push_back(off);
            }
            std::sort(forced.begin(), forced.end());
            forced.push_back(span);

            auto& arc = ring.arcs[s];
            arc.emplace_back(0.0, ring.at_bp[s].ccw);
            double szt = shell_step(t);
            for (size_t f = 0; f + 1 < forced.size(); ++f) {
                double u = forced[f], v = forced[f + 1];
                int n = std::max(1, static_cast<int>(std::ceil((v - u) * t / szt - 1e-9)));
                for (int i = 1; i < n; ++i) {
                    double off = u + (v - u) * i / n;
                    double phi = phi0 + off;
                    double r = t * rb_of(phi);
                    int id = add_vertex({r * std::cos(phi), r * std::sin(phi)}, boundary_ring);
                    arc.emplace_back(off, id);
                }
                if (f + 2 < forced.size()) {
                    double phi = phi0 + v;
                    double r = t * rb_of(phi);
                    int id = add_vertex({r * std::cos(phi), r * std::sin(phi)}, boundary_ring);
                    arc.emplace_back(v, id);
                }
            }
            arc.emplace_back(span, ring.at_bp[(s + 1) % nbp].cw);
        }
        return ring;
    }

    void zip(const Ring& outer, const Ring& inner) {
        for (size_t s = 0; s < bps.size(); ++s) {
            const auto& a = outer.arcs[s];
            const auto& b = inner.arcs[s];
            size_t i = 0, j = 0;
            while (i + 1 < a.size() || j + 1 < b.size()) {
                bool take_outer;
                if (i + 1 >= a.size())
                    take_outer = false;
                else if (j + 1 >= b.size())
                    take_outer = true;
                else
                    take_outer = (a[i + 1].first <= b[j + 1].first);
                if (take_outer) {
                    out.T.push_back({a[i].second, a[i + 1].second, b[j].second});
                    ++i;
                } else {
                    out.T.push_back({b[j + 1].second, b[j].second, a[i].second});
                    ++j;
                }
            }
        }
    }

    void fan_origin(const Ring& inner) {
        size_t nbp = bps.size();
        std::vector<int> oid(nbp);
        bool any_crack = (bps[0].spoke >= 0);
        if (!any_crack) {
            oid[0] = add_vertex({0, 0}, false);
        } else {
            for (size_t s = 0; s < nbp; ++s) oid[s] = add_vertex({0, 0}, false);
            for (size_t s = 0; s < nbp; ++s) {
                const CrackSpoke& sp = lay.spokes[static_cast<size_t>(bps[s].spoke)];
                int id_cw = oid[(s + nbp - 1) % nbp];
                int id_ccw = oid[s];
                int plus = sp.plus_is_ccw ? id_ccw : id_cw;
                int minus = sp.plus_is_ccw ? id_cw : id_ccw;
                out.pairs.push_back({plus, minus, sp.crack, sp.affine_side});
                auto& tr = traces[static_cast<size_t>(bps[s].spoke)];
                tr.radius.push_back(0.0);
                tr.plus_nodes.push_back(plus);
                tr.minus_nodes.push_back(minus);
            }
        }
        for (size_t s = 0; s < nbp; ++s) {
            const auto& arc = inner.arcs[s];
            for (size_t i = 0; i + 1 < arc.size(); ++i)
                out.T.push_back({oid[s], arc[i].second, arc[i + 1].second});
        }
    }

    CrackedMesh run() {
        setup();
        traces.clear();
        for (const CrackSpoke& sp : lay.spokes) {
            SpokeTrace tr;
            tr.crack = sp.crack;
            tr.angle = sp.angle;
            tr.affine = sp.affine_side;
            traces.push_back(tr);
        }

        std::vector<double> tt = build_ladder();
        if (tt.size() < 2) throw std::runtime_error("generate_mesh: domain too small for the shell ladder");

        Ring prev = build_ring(tt[0], true, !annulus);
        for (size_t i = 1; i < tt.size(); ++i) {
            bool boundary_ring = annulus && (i + 1 == tt.size());
            Ring cur = build_ring(tt[i], boundary_ring, false);
            zip(prev, cur);
            prev = std::move(cur);
        }
        if (!annulus) fan_origin(prev);

        // traces were filled outside-in; flip to ascending radius
        for (auto& tr : traces) {
            std::reverse(tr.radius.begin(), tr.radius.end());
            std::reverse(tr.plus_nodes.begin(), tr.plus_nodes.end());
            std::reverse(tr.minus_nodes.begin(), tr.minus_nodes.end());
        }
        out.traces = traces;
        if (out.nv() > 2000000) throw std::runtime_error("generate_mesh: vertex budget exceeded");
        return std::move(out);
    }
};

}  // namespace

CrackedMesh generate_mesh(const DomainSpec& dom, const CrackLayout& lay, const MeshParams& prm) {
    if (!(prm.h > 0) || !(prm.grade_q > 0 && prm.grade_q < 1) || prm.grade_depth < 0)
        throw std::invalid_argument("generate_mesh: bad parameters");
    Gen g(dom, lay, prm);
    CrackedMesh m = g.run();
    m.validate(&dom);
    return m;
}

CrackedMesh generate_structured_rectangle(const DomainSpec& dom, double h) {
    if (dom.kind != DomainSpec::Kind::Rectangle)
        throw std::invalid_argument("structured mesh: rectangle domains only");
    if (!(h > 0)) throw std::invalid_argument("structured mesh: h must be positive");
    int nx = std::max(1, static_cast<int>(std::lround(dom.rect_a / h)));
    int ny = std::max(1, static_cast<int>(std::lround(dom.rect_b / h)));
    CrackedMesh m;
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            m.V.push_back({dom.rect_a * i / nx - dom.rect_cx, dom.rect_b * j / ny - dom.rect_cy});
            bool bnd = (i == 0 || i == nx || j == 0 || j == ny);
            m.on_boundary.push_back(bnd ? 1 : 0);
        }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            m.T.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            m.T.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    m.validate(&dom);
    return m;
}

CrackedMesh refine_uniform(const CrackedMesh& m) {
    CrackedMesh r;
    r.V = m.V;
    r.on_boundary = m.on_boundary;
    r.tips = m.tips;
    r.pairs = m.pairs;

    std::map<std::pair<int, int>, int> incidence;
    for (const auto& tri : m.T)
        for (int e = 0; e < 3; ++e) {
            int u = tri[static_cast<size_t>(e)], v = tri[static_cast<size_t>((e + 1) % 3)];
            incidence[{std::min(u, v), std::max(u, v)}] += 1;
        }

    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int u, int v) {
        auto key = std::make_pair(std::min(u, v), std::max(u, v));
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        Vec2 p = (m.V[static_cast<size_t>(u)] + m.V[static_cast<size_t>(v)]) * 0.5;
        bool bnd = m.on_boundary[static_cast<size_t>(u)] && m.on_boundary[static_cast<size_t>(v)] &&
                   incidence.at(key) == 1;
        r.V.push_back(p);
        r.on_boundary.push_back(bnd ? 1 : 0);
        int id = static_cast<int>(r.V.size()) - 1;
        mid.emplace(key, id);
        return id;
    };

    for (const auto& tri : m.T) {
        int a = tri[0], b = tri[1], c = tri[2];
        int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
        r.T.push_back({a, ab, ca});
        r.T.push_back({b, bc, ab});
        r.T.push_back({c, ca, bc});
        r.T.push_back({ab, bc, ca});
    }

    for (const auto& tr : m.traces) {
        SpokeTrace nt;
        nt.crack = tr.crack;
        nt.angle = tr.angle;
        nt.affine = tr.affine;
        for (size_t i = 0; i < tr.radius.size(); ++i) {
            nt.radius.push_back(tr.radius[i]);
            nt.plus_nodes.push_back(tr.plus_nodes[i]);
            nt.minus_nodes.push_back(tr.minus_nodes[i]);
            if (i + 1 == tr.radius.size()) break;
            int mp = midpoint(tr.plus_nodes[i], tr.plus_nodes[i + 1]);
            int mm = midpoint(tr.minus_nodes[i], tr.minus_nodes[i + 1]);
            nt.radius.push_back(0.5 * (tr.radius[i] + tr.radius[i + 1]));
            nt.plus_nodes.push_back(mp);
            nt.minus_nodes.push_back(mm);
            if (mp != mm) r.pairs.push_back({mp, mm, tr.crack, tr.affine});
        }
        r.traces.push_back(nt);
    }

    r.validate(nullptr);
    return r;
}

void dump_mesh(const CrackedMesh& m, std::ostream& os) {
    os << m.nv() << ' ' << m.nt() << ' ' << m.pairs.size() << '\n';
    os << std::setprecision(17);
    for (int i = 0; i < m.nv(); ++i)
        os << m.V[static_cast<size_t>(i)].x << ' ' << m.V[static_cast<size_t>(i)].y << ' '
           << static_cast<int>(m.on_boundary[static_cast<size_t>(i)]) << '\n';
    for (const auto& t : m.T) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    for (const auto& p : m.pairs) os << p.plus << ' ' << p.minus << ' ' << p.crack << '\n';
}

CrackedMesh load_mesh(std::istream& is) {
    int nv = 0, nt = 0, np = 0;
    if (!(is >> nv >> nt >> np)) throw std::runtime_error("load_mesh: bad header");
    if (nv < 3 || nt < 1 || np < 0) throw std::runtime_error("load_mesh: degenerate counts");
    CrackedMesh m;
    m.V.resize(static_cast<size_t>(nv));
    m.on_boundary.resize(static_cast<size_t>(nv));
    for (int i = 0; i < nv; ++i) {
        int mark;
        if (!(is >> m.V[static_cast<size_t>(i)].x >> m.V[static_cast<size_t>(i)].y >> mark))
            throw std::runtime_error("load_mesh: bad vertex row");
        m.on_boundary[static_cast<size_t>(i)] = static_cast<unsigned char>(mark != 0);
    }
    m.T.resize(static_cast<size_t>(nt));
    for (int i = 0; i < nt; ++i) {
        auto& t = m.T[static_cast<size_t>(i)];
        if (!(is >> t[0] >> t[1] >> t[2])) throw std::runtime_error("load_mesh: bad triangle row");
    }
    m.pairs.resize(static_cast<size_t>(np));
    for (int i = 0; i < np; ++i) {
        auto& p = m.pairs[static_cast<size_t>(i)];
        if (!(is >> p.plus >> p.minus >> p.crack)) throw std::runtime_error("load_mesh: bad pair row");
        p.affine = true;
    }
    m.validate(nullptr);
    return m;
}

}  // namespace abclab
