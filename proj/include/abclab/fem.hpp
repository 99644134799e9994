#pragma once

#include <functional>

#include "abclab/linalg.hpp"
#include "abclab/mesh.hpp"

namespace abclab::fem {

// P1 stiffness and mass on a cracked mesh; duplicated sheet nodes are
// independent dofs, so no crack condition is built in here.
linalg::SpMat stiffness(const CrackedMesh& m);
linalg::SpMat mass(const CrackedMesh& m);

// Mass weighted by a coefficient, integrated with the edge-midpoint rule
// (exact enough for smooth weights, and keeps 1/|x|^2 finite off the origin).
linalg::SpMat weighted_mass(const CrackedMesh& m, const std::function<double(const Vec2&)>& w);

linalg::Vector interpolate(const CrackedMesh& m, const std::function<double(const Vec2&)>& f);

// Line integrals over the crack segments (the affine-side spokes), taken on
// the plus sheet:  2 * sum_j int_{S_j} dnu(x, j) g(x) ds.
// dnu receives the point and the crack index.  The first trace interval
// touches the tip or origin where dnu may blow up like r^(mu-1); panels are
// subdivided dyadically toward it until the contribution is negligible.
using CrackDensity = std::function<double(const Vec2&, int)>;

double crack_integral(const CrackedMesh& m, const CrackDensity& dnu, const std::function<double(const Vec2&)>& g);

// Same, with g the P1 field given by nodal values (plus sheet trace).
double crack_integral_field(const CrackedMesh& m, const CrackDensity& dnu, const linalg::Vector& u);

// Load vector with entries l_i = 2 * sum_j int_{S_j} dnu phi_i ds, supported
// on plus-sheet trace nodes.
linalg::Vector crack_load(const CrackedMesh& m, const CrackDensity& dnu);

}  // namespace abclab::fem
