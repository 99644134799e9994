#pragma once

#include "abclab/fem.hpp"
#include "abclab/geometry.hpp"

namespace abclab::spectrum {

// Matching conditions across the crack pairs:
//   Perturbed: anti-symmetric on every pair (the gauged operator with poles)
//   Limit:     continuous across segment pairs, anti-symmetric on rays
//   Natural:   segment pairs left free, anti-symmetric on rays
enum class CrackCondition { Perturbed, Limit, Natural };

linalg::Constraints crack_constraints(const CrackedMesh& m, CrackCondition cond, bool dirichlet_boundary);

struct SpectrumResult {
    std::vector<double> values;
    std::vector<linalg::Vector> vectors;  // full dof, M-orthonormal
    std::vector<double> residuals;
    int iterations = 0;
};

SpectrumResult solve_eigs(const CrackedMesh& m, const linalg::SpMat& K, const linalg::SpMat& M, CrackCondition cond,
                          int nev, double sigma = 0.0, double tol = 1e-10);
SpectrumResult solve_eigs(const CrackedMesh& m, CrackCondition cond, int nev, double sigma = 0.0, double tol = 1e-10);

// relative distance of values[idx] to the nearest other computed eigenvalue
double rel_gap(const std::vector<double>& values, int idx);

// flip u in place so that (u, ref)_M > 0; returns the inner product after the flip
double align_sign(linalg::Vector& u, const linalg::Vector& ref, const linalg::SpMat& M);

struct LocalFit {
    int m = 0;
    double mu = 0;
    double beta = 0;
    double alpha0 = 0;
    double residual = 0;  // relative misfit on the sample circles
};

// Fit of u near the origin against beta r^mu f(t) sin(mu (t - alpha0)), with
// f the sign pattern of the configuration when k is odd (mu = m/2) and f = 1
// when k is even (mu = m).  Samples two circles at 0.05 R and 0.1 R and picks
// the vanishing order with the smallest misfit.
LocalFit extract_local_expansion(const CrackedMesh& mesh, const linalg::Vector& u, const PoleConfiguration& cfg,
                                 double R, int nsamples = 128);

}  // namespace abclab::spectrum
