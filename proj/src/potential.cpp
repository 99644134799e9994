#include "abclab/potential.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "abclab/spectrum.hpp"

namespace abclab::potential {

Workspace::Workspace(const CrackedMesh& m) : mesh(&m), K(fem::stiffness(m)), M(fem::mass(m)) {}

double CrackData::trace_at(const CrackedMesh& m, int node) const {
    if (trace_vec) return (*trace_vec)[node];
    if (!trace_fn) throw std::invalid_argument("CrackData: no trace source");
    return trace_fn(m.V[static_cast<size_t>(node)]);
}

namespace {

linalg::Constraints affine_constraints(const CrackedMesh& m, const CrackData& data) {
    linalg::Constraints c;
    c.n = static_cast<int>(m.nv());
    for (const auto& p : m.pairs) {
        if (p.affine)
            c.tie(p.plus, p.minus, -1.0, 2.0 * data.trace_at(m, p.plus));
        else
            c.tie(p.plus, p.minus, -1.0, 0.0);
    }
    for (size_t i = 0; i < m.nv(); ++i)
        if (m.on_boundary[i]) c.fix(static_cast<int>(i), 0.0);
    return c;
}

}  // namespace

PotentialResult solve_potential(const Workspace& ws, const CrackData& data, LoadRoute route,
                                const linalg::Vector* v0h, double lam0h) {
    const CrackedMesh& m = *ws.mesh;
    linalg::Constraints c = affine_constraints(m, data);

    linalg::Vector ell;
    if (route == LoadRoute::Weak) {
        if (!v0h) throw std::invalid_argument("solve_potential: weak route needs the discrete eigenpair");
        ell = lam0h * (ws.M * (*v0h)) - ws.K * (*v0h);
    } else {
        if (!data.dnu) throw std::invalid_argument("solve_potential: quadrature route needs dnu");
        ell = fem::crack_load(m, data.dnu);
    }

    PotentialResult res;
    res.V = linalg::solve_constrained_min(ws.K, ell, c);
    res.grad2 = res.V.dot(ws.K * res.V);
    res.norm2 = res.grad2 + res.V.dot(ws.M * res.V);

    if (data.dnu) {
        if (data.trace_vec)
            res.L_data = fem::crack_integral_field(m, data.dnu, *data.trace_vec);
        else
            res.L_data = fem::crack_integral(m, data.dnu, data.trace_fn);
    }

    if (route == LoadRoute::Weak) {
        res.E = 0.5 * res.grad2 + ell.dot(res.V - *v0h) + res.L_data;
        double lhs = lam0h * v0h->dot(ws.M * res.V);
        double rhs = res.grad2 + 2.0 * ell.dot(res.V);
        res.identity = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    } else {
        res.E = 0.5 * res.grad2 + ell.dot(res.V);
        if (v0h) {
            double lhs = lam0h * v0h->dot(ws.M * res.V);
            double rhs = 2.0 * res.E - 2.0 * res.L_data;
            res.identity = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        }
    }
    return res;
}

double eta_cutoff(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 0.5 * (1.0 + std::cos(PI * (r - 1.0)));
}

double L_psi0_closed(const PoleConfiguration& cfg, const BlowupProfile& prof) {
    if (!prof.k_odd || cfg.k() % 2 == 0)
        throw std::invalid_argument("L_psi0_closed: defined for the odd pole count case");
    double s = 0;
    for (int j = 0; j < cfg.k1 + cfg.k2; ++j) {
        double rm = std::pow(cfg.pole_radius(j), prof.m);
        if (j >= cfg.k1) rm += std::pow(cfg.pole_radius(j + cfg.k2), prof.m);
        s += rm * std::sin(prof.m * (cfg.angles[static_cast<size_t>(j)] - prof.alpha0));
    }
    return 0.5 * prof.beta * prof.beta * s;
}

double psi0_dnu_plus(const Vec2& x, int crack, const BlowupProfile& prof, const PoleConfiguration& cfg) {
    double r = x.norm();
    if (!(r > 0)) throw std::domain_error("psi0_dnu_plus: point at the origin");
    double alpha = cfg.angles.at(static_cast<size_t>(crack));
    double mu = prof.mu();
    Vec2 e{std::cos(alpha), std::sin(alpha)};
    // the plus normal of the whole crack line is e rotated by +pi/2, which is
    // +e_t on the alpha spoke and -e_t on the opposite spoke
    bool primary = x.dot(e) >= 0;
    const double delta = 1e-7;  // f is piecewise constant; step off the cut
    double t_cut = primary ? alpha : alpha + PI;
    double f = static_cast<double>(sign_f(primary ? alpha + delta : alpha + PI - delta, cfg));
    double orient = primary ? 1.0 : -1.0;
    double d = orient * prof.beta * mu * std::pow(r, mu - 1.0) * f * std::cos(mu * (t_cut - prof.alpha0));
    return eta_cutoff(r) * d;
}

namespace {

struct BlowupSetup {
    DomainSpec dom;
    CrackLayout lay;
    CrackedMesh mesh;
};

BlowupSetup blowup_setup(const PoleConfiguration& cfg, const BlowupProfile& prof, double rho, double h) {
    if (prof.k_odd != (cfg.k() % 2 != 0)) throw std::invalid_argument("blow-up: profile parity mismatch");
    if (!(rho >= 4.0)) throw std::invalid_argument("blow-up: rho must be at least 4 so the cutoff vanishes well inside");
    for (int j = 0; j < cfg.k(); ++j)
        if (cfg.pole_radius(j) > 1.0 + 1e-12)
            throw std::invalid_argument("blow-up: normalized pole radii must not exceed 1");
    BlowupSetup s;
    int nseg = std::max(96, static_cast<int>(std::lround(2.0 * PI * rho / h)));
    nseg = std::min(nseg, 4096);
    s.dom = DomainSpec::disk(rho, nseg);
    s.lay = build_crack_layout(cfg, 1.0, s.dom);
    MeshParams mp;
    mp.h = h;
    s.mesh = generate_mesh(s.dom, s.lay, mp);
    return s;
}

std::function<double(const Vec2&)> profile_trace(const BlowupProfile& prof, const PoleConfiguration& cfg) {
    return [prof, cfg](const Vec2& p) {
        double r = p.norm();
        if (r < 1e-300) return 0.0;
        return eta_cutoff(r) * psi0(p, prof, cfg).value;
    };
}

}  // namespace

BlowupResult solve_blowup(const PoleConfiguration& cfg, const BlowupProfile& prof, double rho, double h) {
    BlowupSetup s = blowup_setup(cfg, prof, rho, h);
    Workspace ws(s.mesh);
    CrackData data;
    data.trace_fn = profile_trace(prof, cfg);
    data.dnu = [prof, cfg](const Vec2& p, int crack) { return psi0_dnu_plus(p, crack, prof, cfg); };
    PotentialResult pr = solve_potential(ws, data, LoadRoute::Quadrature);

    BlowupResult br;
    br.E = pr.E;
    br.L_quad = pr.L_data;
    br.L_closed = L_psi0_closed(cfg, prof);
    br.grad2 = pr.grad2;
    br.nv = s.mesh.nv();
    return br;
}

ScanResult scan_G(const PoleConfiguration& cfg, const BlowupProfile& prof, double rho, double h, int nzeta) {
    if (nzeta < 4) throw std::invalid_argument("scan_G: need at least 4 phase samples");
    BlowupSetup s = blowup_setup(cfg, prof, rho, h);
    const CrackedMesh& mesh = s.mesh;
    linalg::SpMat K = fem::stiffness(mesh);

    // The constraint structure (ties, signs, boundary set) does not depend on
    // the phase, only the offsets do, so one factorization serves every zeta.
    std::unique_ptr<linalg::Factor> fact;
    linalg::SpMat S, A;

    auto G_at = [&](double zeta, double* Eout, double* Lout) {
        BlowupProfile pz = prof;
        pz.alpha0 = prof.alpha0 - zeta;
        CrackData data;
        data.trace_fn = profile_trace(pz, cfg);
        data.dnu = [pz, cfg](const Vec2& p, int crack) { return psi0_dnu_plus(p, crack, pz, cfg); };
        linalg::Constraints c = affine_constraints(mesh, data);
        linalg::Reduction red = linalg::reduce(c);
        if (!fact) {
            S = red.S;
            A = (S.transpose() * K * S).pruned();
            A.makeCompressed();
            fact = std::make_unique<linalg::Factor>(A);
            if (fact->singular()) throw std::runtime_error("scan_G: singular reduced stiffness");
        }
        linalg::Vector ell = fem::crack_load(mesh, data.dnu);
        linalg::Vector rhs = -(S.transpose() * (ell + K * red.x0));
        linalg::Vector y = fact->solve(rhs);
        y += fact->solve(rhs - A * y);
        linalg::Vector V = S * y + red.x0;
        double E = 0.5 * V.dot(K * V) + ell.dot(V);
        double L = L_psi0_closed(cfg, pz);
        if (Eout) *Eout = E;
        if (Lout) *Lout = L;
        return E - L;
    };

    ScanResult res;
    res.nv = mesh.nv();
    double T = 2.0 * PI / prof.m;
    for (int i = 0; i <= nzeta; ++i) {
        ScanPoint p;
        p.zeta = T * i / nzeta;
        p.G = G_at(p.zeta, &p.E, &p.L);
        res.points.push_back(p);
        res.max_absG = std::max(res.max_absG, std::abs(p.G));
    }

    for (size_t i = 0; i + 1 < res.points.size(); ++i) {
        double ga = res.points[i].G, gb = res.points[i + 1].G;
        if (ga == 0.0) {
            res.root_found = true;
            res.zeta_root = res.points[i].zeta;
            res.G_root = 0.0;
            break;
        }
        if (ga * gb < 0) {
            double a = res.points[i].zeta, b = res.points[i + 1].zeta;
            double gm = ga;
            double mid = a;
            for (int it = 0; it < 100; ++it) {
                mid = 0.5 * (a + b);
                gm = G_at(mid, nullptr, nullptr);
                if (std::abs(gm) <= 0.5e-4 * res.max_absG) break;
                if ((gm < 0) == (ga < 0)) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            res.root_found = true;
            res.zeta_root = mid;
            res.G_root = gm;
            break;
        }
    }
    return res;
}

double hardy_rayleigh(int k1, double r, double h) {
    if (k1 < 1) throw std::invalid_argument("hardy_rayleigh: k1 must be positive");
    if (!(r > 0) || !(h > 0)) throw std::invalid_argument("hardy_rayleigh: bad parameters");

    DomainSpec dom = DomainSpec::annulus(1.0, 2.0);
    CrackLayout lay;
    lay.eps = 1.0;
    for (int j = 0; j < k1; ++j) {
        CrackLayout::Crack c;
        c.j = j;
        c.alpha = wrap_2pi(2.0 * PI * j / k1);
        c.nu = {-std::sin(c.alpha), std::cos(c.alpha)};
        lay.cracks.push_back(c);
        CrackSpoke sp;
        sp.angle = c.alpha;
        sp.r_end = dom.outer_radius;
        sp.tip = false;
        sp.affine_side = false;
        sp.crack = j;
        sp.plus_is_ccw = true;
        lay.spokes.push_back(sp);
    }
    MeshParams mp;
    mp.h = h;
    CrackedMesh m = generate_mesh(dom, lay, mp);
    for (auto& p : m.V) p = p * r;  // exact scale invariance for power of two r

    linalg::SpMat K = fem::stiffness(m);
    linalg::SpMat W = fem::weighted_mass(m, [](const Vec2& x) { return 1.0 / x.norm2(); });
    linalg::Constraints c = spectrum::crack_constraints(m, spectrum::CrackCondition::Perturbed, false);
    linalg::Reduction red = linalg::reduce(c);
    linalg::SpMat Kr = (red.S.transpose() * K * red.S).pruned();
    linalg::SpMat Wr = (red.S.transpose() * W * red.S).pruned();
    Kr.makeCompressed();
    Wr.makeCompressed();

    linalg::EigOptions opt;
    opt.nev = 1;
    opt.sigma = -1.0;  // K is only semi-definite for even k1, shift below zero
    linalg::EigResult er = linalg::eigs_shift_invert(Kr, Wr, opt);
    return er.values[0];
}

}  // namespace abclab::potential
