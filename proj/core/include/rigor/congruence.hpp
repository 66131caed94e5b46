#pragma once

#include <cstdint>

#include "rigor/framework.hpp"

namespace rigor {

inline constexpr double kDefaultGeomTol = 1e-9;

// Rigid motion taking base_edge.first to the origin and base_edge.second onto
// the positive x-axis. Rotation + translation only; no reflection.
Framework normalise(const Framework& f, std::pair<int, int> base_edge);

// Same abstract graph (identity correspondence) and every corresponding edge
// length within tol. Throws on graph mismatch.
bool are_equivalent(const Framework& f, const Framework& g,
                    double tol = kDefaultGeomTol);

// True iff an isometry of the plane (rotation or reflection, plus
// translation) maps f's positions onto g's under the identity vertex
// correspondence. Decided by centroid alignment and the closed-form 2x2
// orthogonal Procrustes fit, with the reflection branch tried explicitly.
// Throws on vertex count mismatch.
bool are_congruent(const Framework& f, const Framework& g,
                   double tol = kDefaultGeomTol);

// Number of congruence classes among all 2^n sign-vector realizations of the
// n-edge harmonic chain. n <= 20. Chains are collinear, so congruence under
// the identity correspondence reduces to the position sequence up to global
// negation; sequences are bucketed by that exact invariant (integer
// arithmetic over lcm(1..n)) and representatives are confirmed with
// are_congruent at tol.
std::int64_t count_congruence_classes(int n, double tol = kDefaultGeomTol);

}  // namespace rigor
