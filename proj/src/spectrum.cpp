#include "abclab/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace abclab::spectrum {

linalg::Constraints crack_constraints(const CrackedMesh& m, CrackCondition cond, bool dirichlet_boundary) {
    linalg::Constraints c;
    c.n = static_cast<int>(m.nv());
    for (const auto& p : m.pairs) {
        double sign = -1.0;
        if (p.affine) {
            if (cond == CrackCondition::Natural) continue;
            if (cond == CrackCondition::Limit) sign = 1.0;
        }
        c.tie(p.plus, p.minus, sign, 0.0);
    }
    if (dirichlet_boundary)
        for (size_t i = 0; i < m.nv(); ++i)
            if (m.on_boundary[i]) c.fix(static_cast<int>(i), 0.0);
    return c;
}

SpectrumResult solve_eigs(const CrackedMesh& m, const linalg::SpMat& K, const linalg::SpMat& M, CrackCondition cond,
                          int nev, double sigma, double tol) {
    linalg::Constraints c = crack_constraints(m, cond, true);
    linalg::Reduction red = linalg::reduce(c);
    if (red.x0.cwiseAbs().maxCoeff() != 0.0)
        throw std::runtime_error("solve_eigs: eigenproblem constraints must be homogeneous");
    linalg::SpMat Kr = (red.S.transpose() * K * red.S).pruned();
    linalg::SpMat Mr = (red.S.transpose() * M * red.S).pruned();
    Kr.makeCompressed();
    Mr.makeCompressed();

    linalg::EigOptions opt;
    opt.nev = nev;
    opt.sigma = sigma;
    opt.tol = tol;
    linalg::EigResult er = linalg::eigs_shift_invert(Kr, Mr, opt);

    SpectrumResult res;
    res.values = er.values;
    res.residuals = er.residuals;
    res.iterations = er.iterations;
    res.vectors.reserve(er.vectors.size());
    for (const auto& y : er.vectors) res.vectors.push_back(red.S * y);
    return res;
}

SpectrumResult solve_eigs(const CrackedMesh& m, CrackCondition cond, int nev, double sigma, double tol) {
    linalg::SpMat K = fem::stiffness(m);
    linalg::SpMat M = fem::mass(m);
    return solve_eigs(m, K, M, cond, nev, sigma, tol);
}

double rel_gap(const std::vector<double>& values, int idx) {
    if (idx < 0 || idx >= static_cast<int>(values.size())) throw std::out_of_range("rel_gap");
    double g = std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(values.size()); ++j)
        if (j != idx) g = std::min(g, std::abs(values[static_cast<size_t>(j)] - values[static_cast<size_t>(idx)]));
    return g / std::max(1.0, std::abs(values[static_cast<size_t>(idx)]));
}

double align_sign(linalg::Vector& u, const linalg::Vector& ref, const linalg::SpMat& M) {
    double p = ref.dot(M * u);
    if (p < 0) {
        u = -u;
        p = -p;
    }
    return p;
}

LocalFit extract_local_expansion(const CrackedMesh& mesh, const linalg::Vector& u, const PoleConfiguration& cfg,
                                 double R, int nsamples) {
    bool k_odd = (cfg.k() % 2 != 0);
    std::vector<double> rad{0.05 * R, 0.1 * R};

    // sample angles, pushed away from the crack spokes where sheets collide
    std::vector<double> ts;
    ts.reserve(static_cast<size_t>(nsamples));
    for (int i = 0; i < nsamples; ++i) {
        double t = 2.0 * PI * (i + 0.5) / nsamples;
        for (int guard = 0; guard < 64; ++guard) {
            bool clash = false;
            // spoke directions: every pole direction and its opposite
            for (int j = 0; j < cfg.k1 + cfg.k2; ++j) {
                double a = cfg.angles[static_cast<size_t>(j)];
                double d1 = std::abs(wrap_pi(t - a));
                double d2 = std::abs(wrap_pi(t - a - PI));
                if (std::min(d1, d2) < 0.02) clash = true;
            }
            if (!clash) break;
            t = wrap_2pi(t + 0.013);
        }
        ts.push_back(t);
    }

    std::vector<std::vector<double>> data(rad.size());
    double dnorm2 = 0;
    for (size_t a = 0; a < rad.size(); ++a) {
        data[a].reserve(ts.size());
        for (double t : ts) {
            double v = mesh.eval(u, Vec2{rad[a] * std::cos(t), rad[a] * std::sin(t)});
            data[a].push_back(v);
            dnorm2 += v * v;
        }
    }

    LocalFit best;
    best.residual = std::numeric_limits<double>::infinity();
    if (dnorm2 < 1e-28) {  // nothing to fit
        best.residual = 0;
        return best;
    }

    std::vector<int> cands;
    if (k_odd)
        cands = {1, 3, 5, 7};
    else
        cands = {0, 1, 2, 3, 4, 5, 6};

    for (int mm : cands) {
        double mu = k_odd ? 0.5 * mm : static_cast<double>(mm);
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (size_t a = 0; a < rad.size(); ++a) {
            double rmu = std::pow(rad[a], mu);
            for (size_t i = 0; i < ts.size(); ++i) {
                double t = ts[i];
                double f = k_odd ? sign_f(t, cfg) : 1.0;
                double c1 = (mm == 0) ? rmu * f : rmu * f * std::sin(mu * t);
                double c2 = (mm == 0) ? 0.0 : rmu * f * std::cos(mu * t);
                double d = data[a][i];
                a11 += c1 * c1;
                a12 += c1 * c2;
                a22 += c2 * c2;
                b1 += c1 * d;
                b2 += c2 * d;
            }
        }
        double A, B;
        if (mm == 0) {
            A = b1 / a11;
            B = 0;
        } else {
            double det = a11 * a22 - a12 * a12;
            if (std::abs(det) < 1e-30) continue;
            A = (a22 * b1 - a12 * b2) / det;
            B = (a11 * b2 - a12 * b1) / det;
        }
        double r2 = 0;
        for (size_t a = 0; a < rad.size(); ++a) {
            double rmu = std::pow(rad[a], mu);
            for (size_t i = 0; i < ts.size(); ++i) {
                double t = ts[i];
                double f = k_odd ? sign_f(t, cfg) : 1.0;
                double pred = (mm == 0) ? A * rmu * f : rmu * f * (A * std::sin(mu * t) + B * std::cos(mu * t));
                double e = pred - data[a][i];
                r2 += e * e;
            }
        }
        double rel = std::sqrt(r2 / dnorm2);
        if (rel < best.residual) {
            best.residual = rel;
            best.m = mm;
            best.mu = mu;
            if (mm == 0) {
                best.beta = A;
                best.alpha0 = 0;
            } else {
                best.beta = std::hypot(A, B);
                best.alpha0 = std::atan2(-B, A) / mu;
            }
        }
    }
    return best;
}

}  // namespace abclab::spectrum
