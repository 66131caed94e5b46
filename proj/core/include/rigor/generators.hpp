#pragma once

#include <vector>

#include "rigor/family.hpp"
#include "rigor/framework.hpp"

namespace rigor {

enum class CobwebDirection { Inward, Outward, TwoWay };

// n+1 collinear points on the x-axis; position k is the partial sum
// sum_{m<=k} signs[m-1]/m, so edge k has length exactly 1/k.
Framework harmonic_chain(int n, const std::vector<int>& signs);

// Nested "rectangles" on vertices p_0..p_2n with p_{2k-1} = (1/k, 0),
// p_{2k} = (1/k, 1/k), vertical edges at odd indices, step-2 chain edges,
// and rigidifying edges from p_0 = (1, -1/4) to every x-axis vertex.
Framework diminishing_rectangles(int n);

// Concentric squares scaled by powers of two with one radial edge per corner
// between consecutive squares. Base square corners (+-1, +-1).
Framework dyadic_cobweb(int levels, CobwebDirection direction);

// Chain of scissor units. Each unit: two crossing bars realized as four
// equal arms about a center joint, with two extraneous vertices and six
// gadget edges forcing collinearity in two pairs. Consecutive units share
// their column joints.
Framework winerack(int bays);

// Binary tree of scissor units; each unit's two output joints root a child
// unit scaled by 1/3.
Framework cantor_tree(int depth);

// Triangulated strip of n cells (width `aspect`, height 1), each cell a
// quadrilateral with one diagonal. Isostatic at every n.
Framework strip_tower(int n, double aspect);

// nx-by-ny tiling of `cell` under the translations i*tx + j*ty, merging
// vertices closer than 1e-9 across cell boundaries.
Framework periodic_lattice(const Framework& cell, int nx, int ny, Vec2 tx,
                           Vec2 ty);

// Families (standard chains) with analytic flags and protocol pairs.
FrameworkFamily harmonic_chain_family();            // alternating signs
FrameworkFamily harmonic_chain_family(std::vector<int> sign_pattern);
FrameworkFamily diminishing_rectangles_family();    // truncation(r) = n=r+1
FrameworkFamily dyadic_cobweb_family(CobwebDirection direction);
FrameworkFamily winerack_family();
FrameworkFamily cantor_tree_family();
FrameworkFamily strip_tower_family(double aspect);
FrameworkFamily periodic_lattice_family(Framework cell, Vec2 tx, Vec2 ty,
                                        std::string name);

// Square cell with both diagonals, for periodic-lattice tests and the CLI.
Framework unit_square_cell_with_diagonals();
// Kagome-style cell: corner-sharing triangles.
Framework kagome_cell();

}  // namespace rigor
