#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace abclab::linalg {

using SpMat = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// Linear constraints between degrees of freedom:
//   ties:      val(a) = sign * val(b) + offset   (sign is +-1)
//   dirichlet: val(i) = value
struct Constraints {
    int n = 0;
    struct Tie {
        int a = 0, b = 0;
        double sign = 1.0;
        double offset = 0.0;
    };
    struct Fix {
        int i = 0;
        double value = 0.0;
    };
    std::vector<Tie> ties;
    std::vector<Fix> dirichlet;

    void tie(int a, int b, double sign, double offset = 0.0) { ties.push_back({a, b, sign, offset}); }
    void fix(int i, double value = 0.0) { dirichlet.push_back({i, value}); }
};

// Affine parametrization of the constraint set: x = S * y + x0 with y free.
// Ties that force a value through a sign cycle (for example an odd number of
// sign flips around a vertex) are resolved, contradictory offsets throw.
struct Reduction {
    SpMat S;
    Vector x0;
    int nfree = 0;

    Vector expand(const Vector& y) const { return S * y + x0; }
    Vector restrict_to_free(const Vector& x) const { return S.transpose() * x; }
};

Reduction reduce(const Constraints& c);

// Sparse factorization: LDLT first, LU fallback when the pivots degenerate.
class Factor {
  public:
    explicit Factor(const SpMat& A);
    Vector solve(const Vector& b) const;
    bool singular() const { return singular_; }
    // negative pivot count of the LDLT (inertia), -1 when the LU path was taken
    int negatives() const { return negatives_; }

  private:
    Eigen::SimplicialLDLT<SpMat> ldlt_;
    Eigen::SparseLU<SpMat> lu_;
    bool use_lu_ = false;
    bool singular_ = false;
    int negatives_ = -1;
};

// min 1/2 x^T A x + l^T x subject to the constraints; A must be positive
// definite on the constrained subspace.
Vector solve_constrained_min(const SpMat& A, const Vector& l, const Constraints& c);

struct EigOptions {
    int nev = 1;
    double sigma = 0.0;
    double tol = 1e-10;
    int max_iter = 250;
};

struct EigResult {
    std::vector<double> values;     // ascending, the nev closest above sigma
    std::vector<Vector> vectors;    // M-orthonormal
    std::vector<double> residuals;  // |K x - lambda M x|_{M^-1} / (1 + |lambda|)
    int iterations = 0;
};

// Symmetric generalized problem K x = lambda M x, M positive definite.
// Shift-invert Lanczos in the M inner product with full reorthogonalization;
// deterministic start vector, so repeated runs give identical output.
EigResult eigs_shift_invert(const SpMat& K, const SpMat& M, const EigOptions& opt);

}  // namespace abclab::linalg
