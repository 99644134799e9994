#pragma once

#include "abclab/fem.hpp"
#include "abclab/geometry.hpp"

namespace abclab::potential {

// Assembled matrices shared by the solves on one mesh.
struct Workspace {
    const CrackedMesh* mesh = nullptr;
    linalg::SpMat K, M;

    explicit Workspace(const CrackedMesh& m);
};

// Data feeding the crack potential: the smooth field v whose trace enters the
// affine matching condition gamma_+ + gamma_- = 2 v on the segments, either
// as a function or as a nodal vector on the same mesh, plus the density
// dnu(x, crack) = normal derivative of v on crack's segments, taken with the
// normal pointing to the plus sheet.
struct CrackData {
    std::function<double(const Vec2&)> trace_fn;
    const linalg::Vector* trace_vec = nullptr;
    fem::CrackDensity dnu;

    double trace_at(const CrackedMesh& m, int node) const;
};

// How the linear part of the energy is assembled:
//   Quadrature: l_i = 2 int dnu phi_i ds on the segments (exact data, O(h)
//               consistency against the discrete eigenpair)
//   Weak:       l = lam0h M v0h - K v0h, which represents the same
//               functional on anti-symmetric fields but reproduces the
//               discrete stationarity identity to solver precision
enum class LoadRoute { Quadrature, Weak };

struct PotentialResult {
    linalg::Vector V;
    double E = 0;         // J(V) = 1/2 |grad V|^2 + L(V)
    double L_data = 0;    // L applied to the data field itself
    double grad2 = 0;     // V^T K V
    double norm2 = 0;     // V^T (K + M) V
    double identity = 0;  // relative residual of lam0 (V, v0)_M = 2 E - 2 L(v0)
};

// Minimize J over fields that vanish on the outer boundary, are
// anti-symmetric across the rays and satisfy the affine condition on the
// segments.  The weak route needs the discrete limit eigenpair (v0h, lam0h)
// computed on the same mesh.
PotentialResult solve_potential(const Workspace& ws, const CrackData& data, LoadRoute route,
                                const linalg::Vector* v0h = nullptr, double lam0h = 0);

// ---- blow-up problems on the dilated geometry (eps = 1, domain D_rho) ----

// smooth cutoff: 1 on [0,1], cosine ramp on [1,2], 0 beyond
double eta_cutoff(double r);

// closed form of L(psi0) for the profile: sum over cracks of
// (beta^2/2) r^m sin(m (alpha^j - alpha0)) with both radii for a pair.
double L_psi0_closed(const PoleConfiguration& cfg, const BlowupProfile& prof);

// plus-side normal derivative of psi0 on the segments of crack `crack`
double psi0_dnu_plus(const Vec2& x, int crack, const BlowupProfile& prof, const PoleConfiguration& cfg);

struct BlowupResult {
    double E = 0;
    double L_quad = 0;    // quadrature value of L(eta psi0)
    double L_closed = 0;  // closed form
    double grad2 = 0;
    size_t nv = 0;
};

// Energy E_rho of the blow-up potential on D_rho with Dirichlet truncation,
// data eta * psi0 on the unit-scale crack layout.
BlowupResult solve_blowup(const PoleConfiguration& cfg, const BlowupProfile& prof, double rho, double h);

// ---- phase scan of G(zeta) = E(zeta) - L(zeta) ----

struct ScanPoint {
    double zeta = 0, E = 0, L = 0, G = 0;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    double max_absG = 0;
    bool root_found = false;
    double zeta_root = 0;
    double G_root = 0;
    size_t nv = 0;
};

// Sweep the profile phase alpha0 -> alpha0 - zeta over one period [0, 2pi/m]
// on a fixed mesh and factorization, then bisect the first sign change of G.
ScanResult scan_G(const PoleConfiguration& cfg, const BlowupProfile& prof, double rho, double h, int nzeta);

// ---- Hardy-type constant on the cracked annulus ----

// Smallest Rayleigh quotient |grad w|^2 / |w / |x||^2 on the annulus
// (r, 2r) cut along k1 equally spaced radial lines, anti-symmetric across
// the cuts, natural boundary.  Scale invariant in exact arithmetic.
double hardy_rayleigh(int k1, double r, double h);

}  // namespace abclab::potential
