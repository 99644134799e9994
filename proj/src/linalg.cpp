#include "abclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace abclab::linalg {

namespace {

// Union-find over dofs carrying val(i) = sgn * val(parent) + off along each link.
struct UF {
    std::vector<int> parent;
    std::vector<double> sgn, off;

    explicit UF(int n) : parent(static_cast<size_t>(n)), sgn(static_cast<size_t>(n), 1.0), off(static_cast<size_t>(n), 0.0) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    // val(i) = s * val(root) + o
    std::tuple<int, double, double> find(int i) {
        std::vector<int> path;
        int r = i;
        while (parent[static_cast<size_t>(r)] != r) {
            path.push_back(r);
            r = parent[static_cast<size_t>(r)];
        }
        double s = 1.0, o = 0.0;
        for (int k = static_cast<int>(path.size()) - 1; k >= 0; --k) {
            int v = path[static_cast<size_t>(k)];
            s = sgn[static_cast<size_t>(v)];
            o = off[static_cast<size_t>(v)];
            int p = parent[static_cast<size_t>(v)];
            if (p != r) {  // compose with the (already compressed) parent
                s = sgn[static_cast<size_t>(v)] * sgn[static_cast<size_t>(p)];
                o = sgn[static_cast<size_t>(v)] * off[static_cast<size_t>(p)] + off[static_cast<size_t>(v)];
            }
            parent[static_cast<size_t>(v)] = r;
            sgn[static_cast<size_t>(v)] = s;
            off[static_cast<size_t>(v)] = o;
        }
        if (path.empty()) return {r, 1.0, 0.0};
        int i0 = i;
        return {r, sgn[static_cast<size_t>(i0)], off[static_cast<size_t>(i0)]};
    }
};

bool values_agree(double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b))); }

}  // namespace

Reduction reduce(const Constraints& c) {
    if (c.n <= 0) throw std::invalid_argument("reduce: constraint set has no dimension");
    UF uf(c.n);
    std::map<int, double> forced;  // root -> value

    auto force = [&](int root, double value, const char* what) {
        auto it = forced.find(root);
        if (it == forced.end()) {
            forced.emplace(root, value);
        } else if (!values_agree(it->second, value)) {
            std::ostringstream os;
            os << "reduce: contradictory " << what << " at dof class " << root << ": " << it->second << " vs "
               << value;
            throw std::runtime_error(os.str());
        }
    };

    for (const auto& t : c.ties) {
        if (t.a < 0 || t.a >= c.n || t.b < 0 || t.b >= c.n) throw std::out_of_range("reduce: tie index");
        if (std::abs(t.sign) != 1.0) throw std::invalid_argument("reduce: tie sign must be +-1");
        auto [ra, sa, oa] = uf.find(t.a);
        auto [rb, sb, ob] = uf.find(t.b);
        if (ra != rb) {
            // val(rb) expressed through val(ra)
            double q = t.sign * sb;  // +-1
            uf.parent[static_cast<size_t>(rb)] = ra;
            uf.sgn[static_cast<size_t>(rb)] = sa * q;
            uf.off[static_cast<size_t>(rb)] = (oa - t.sign * ob - t.offset) * q;
            // carry a forced value if rb already had one
            auto it = forced.find(rb);
            if (it != forced.end()) {
                double v = it->second;
                forced.erase(it);
                // val(rb) = sgn*val(ra) + off  =>  val(ra) = (v - off) * sgn
                double va = (v - uf.off[static_cast<size_t>(rb)]) * uf.sgn[static_cast<size_t>(rb)];
                force(ra, va, "tie offsets");
            }
        } else if (sa == t.sign * sb) {
            // redundant cycle: offsets must close up
            if (!values_agree(oa, t.sign * ob + t.offset)) {
                std::ostringstream os;
                os << "reduce: inconsistent offsets around a cycle touching dofs " << t.a << " and " << t.b;
                throw std::runtime_error(os.str());
            }
        } else {
            // sign conflict around a cycle pins the class value:
            // sa*v + oa = sign*(sb*v + ob) + offset with sa = -sign*sb
            double v = (t.sign * ob + t.offset - oa) / (sa - t.sign * sb);
            force(ra, v, "sign-cycle values");
        }
    }

    for (const auto& d : c.dirichlet) {
        if (d.i < 0 || d.i >= c.n) throw std::out_of_range("reduce: dirichlet index");
        auto [r, s, o] = uf.find(d.i);
        force(r, (d.value - o) * s, "boundary values");
    }

    std::map<int, int> col;  // free root -> column
    for (int i = 0; i < c.n; ++i) {
        auto [r, s, o] = uf.find(i);
        (void)s;
        (void)o;
        if (r == i && forced.find(r) == forced.end()) {
            int idx = static_cast<int>(col.size());
            col.emplace(r, idx);
        }
    }

    Reduction red;
    red.nfree = static_cast<int>(col.size());
    red.x0 = Vector::Zero(c.n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(c.n));
    for (int i = 0; i < c.n; ++i) {
        auto [r, s, o] = uf.find(i);
        auto it = forced.find(r);
        if (it != forced.end()) {
            red.x0[i] = s * it->second + o;
        } else {
            trip.emplace_back(i, col.at(r), s);
            red.x0[i] = o;
        }
    }
    red.S.resize(c.n, red.nfree);
    red.S.setFromTriplets(trip.begin(), trip.end());
    red.S.makeCompressed();
    return red;
}

Factor::Factor(const SpMat& A) {
    ldlt_.compute(A);
    bool ok = (ldlt_.info() == Eigen::Success);
    if (ok) {
        const auto& D = ldlt_.vectorD();
        double dmax = 0.0;
        for (Eigen::Index i = 0; i < D.size(); ++i) dmax = std::max(dmax, std::abs(D[i]));
        int neg = 0;
        for (Eigen::Index i = 0; i < D.size(); ++i) {
            if (!std::isfinite(D[i]) || std::abs(D[i]) <= 1e-14 * dmax) {
                ok = false;
                break;
            }
            if (D[i] < 0) ++neg;
        }
        if (ok) negatives_ = neg;
    }
    if (!ok) {
        use_lu_ = true;
        SpMat B = A;
        B.makeCompressed();
        lu_.compute(B);
        singular_ = (lu_.info() != Eigen::Success);
    }
}

Vector Factor::solve(const Vector& b) const {
    if (singular_) throw std::runtime_error("Factor::solve on a singular matrix");
    return use_lu_ ? lu_.solve(b) : ldlt_.solve(b);
}

Vector solve_constrained_min(const SpMat& A, const Vector& l, const Constraints& c) {
    if (A.rows() != A.cols() || A.rows() != c.n || l.size() != c.n)
        throw std::invalid_argument("solve_constrained_min: dimension mismatch");
    Reduction red = reduce(c);
    if (red.nfree == 0) return red.x0;
    SpMat Ar = (red.S.transpose() * A * red.S).pruned();
    Ar.makeCompressed();
    Vector rhs = -red.S.transpose() * (l + A * red.x0);
    Factor f(Ar);
    if (f.singular()) throw std::runtime_error("solve_constrained_min: singular reduced system");
    Vector y = f.solve(rhs);
    y += f.solve(rhs - Ar * y);  // one refinement step keeps energy identities tight
    return red.expand(y);
}

EigResult eigs_shift_invert(const SpMat& K, const SpMat& M, const EigOptions& opt) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n || M.rows() != n || M.cols() != n) throw std::invalid_argument("eigs: dimension mismatch");
    if (opt.nev < 1 || opt.nev > static_cast<int>(n)) throw std::invalid_argument("eigs: bad nev");

    double sigma = opt.sigma;
    std::unique_ptr<Factor> B;
    for (int attempt = 0; attempt < 3; ++attempt) {
        SpMat Bm = (K - sigma * M).pruned();
        Bm.makeCompressed();
        B = std::make_unique<Factor>(Bm);
        if (!B->singular()) break;
        sigma -= std::max(1e-8 * (1.0 + std::abs(sigma)), 1e-12);
    }
    if (B->singular()) throw std::runtime_error("eigs: shifted matrix is singular");

    Eigen::SimplicialLLT<SpMat> mllt(M);
    if (mllt.info() != Eigen::Success) throw std::runtime_error("eigs: mass matrix is not positive definite");

    std::vector<Vector> V;
    std::vector<double> alpha, beta;

    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::sin(13.37 * static_cast<double>(i + 1));
    {
        double nrm = std::sqrt(v.dot(M * v));
        if (!(nrm > 0)) throw std::runtime_error("eigs: degenerate start vector");
        v /= nrm;
    }
    V.push_back(v);

    const int mmax = std::min<int>(opt.max_iter, static_cast<int>(n));
    bool exhausted = false;
    int used = 0;

    auto ritz_ok = [&](Eigen::VectorXd& theta, Eigen::MatrixXd& Y) -> bool {
        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            T(i, i) = alpha[static_cast<size_t>(i)];
            if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[static_cast<size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues();
        Y = es.eigenvectors();
        // want the nev largest positive thetas (closest eigenvalues above sigma)
        int found = 0;
        double blast = static_cast<int>(beta.size()) >= k ? beta[static_cast<size_t>(k - 1)] : 0.0;
        for (int i = k - 1; i >= 0 && found < opt.nev; --i) {
            double th = theta[i];
            if (!(th > 0)) return false;
            double lam = sigma + 1.0 / th;
            double bound = std::abs(blast * Y(k - 1, i));
            if (exhausted) bound = 0.0;
            if (bound > 0.1 * opt.tol * th * th * (1.0 + std::abs(lam))) return false;
            ++found;
        }
        return found == opt.nev;
    };

    Eigen::VectorXd theta;
    Eigen::MatrixXd Y;
    for (int k = 0; k < mmax; ++k) {
        Vector w = B->solve(M * V[static_cast<size_t>(k)]);
        Vector Mw = M * w;
        double ak = V[static_cast<size_t>(k)].dot(Mw);
        w -= ak * V[static_cast<size_t>(k)];
        if (k > 0) w -= beta[static_cast<size_t>(k - 1)] * V[static_cast<size_t>(k - 1)];
        for (int pass = 0; pass < 2; ++pass) {
            Mw = M * w;
            Eigen::VectorXd coef(static_cast<Eigen::Index>(V.size()));
            for (size_t j = 0; j < V.size(); ++j) coef[static_cast<Eigen::Index>(j)] = V[j].dot(Mw);
            for (size_t j = 0; j < V.size(); ++j) w -= coef[static_cast<Eigen::Index>(j)] * V[j];
        }
        alpha.push_back(ak);
        used = k + 1;

        double bk = w.dot(M * w);
        bk = bk > 0 ? std::sqrt(bk) : 0.0;
        bool check_now = (used >= opt.nev) && (used <= 64 || used % 4 == 0 || used == mmax || bk <= 1e-13);
        if (bk <= 1e-13) {
            exhausted = true;  // invariant subspace found
            if (ritz_ok(theta, Y)) break;
            throw std::runtime_error("eigs: Lanczos basis exhausted before convergence");
        }
        beta.push_back(bk);
        V.push_back(w / bk);
        if (check_now && ritz_ok(theta, Y)) {
            V.pop_back();
            beta.pop_back();
            break;
        }
        if (used == mmax) throw std::runtime_error("eigs: no convergence within the iteration limit");
    }
    if (theta.size() == 0 && !ritz_ok(theta, Y)) throw std::runtime_error("eigs: no convergence");

    EigResult res;
    res.iterations = used;
    const int k = static_cast<int>(alpha.size());
    for (int i = k - 1; i >= 0 && static_cast<int>(res.values.size()) < opt.nev; --i) {
        double th = theta[i];
        if (!(th > 0)) break;
        double lam = sigma + 1.0 / th;
        Vector x = Vector::Zero(n);
        for (int j = 0; j < k; ++j) x += Y(j, i) * V[static_cast<size_t>(j)];
        double nrm = std::sqrt(x.dot(M * x));
        x /= nrm;
        Vector r = K * x - lam * (M * x);
        Vector z = mllt.solve(r);
        double resid = std::sqrt(std::max(0.0, r.dot(z))) / (1.0 + std::abs(lam));
        res.values.push_back(lam);
        res.vectors.push_back(std::move(x));
        res.residuals.push_back(resid);
    }
    if (static_cast<int>(res.values.size()) < opt.nev) throw std::runtime_error("eigs: too few eigenvalues above the shift");
    for (double r : res.residuals)
        if (!(r <= 100.0 * opt.tol)) throw std::runtime_error("eigs: residual check failed after convergence");
    return res;
}

}  // namespace abclab::linalg
