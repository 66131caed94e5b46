#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "rigor/family.hpp"
#include "rigor/framework.hpp"

namespace rigor {

inline constexpr double kNullTol = 1e-9;
inline constexpr int kDenseSvdLimit = 4000;  // max 2|V| for dense SVD

// |E| x 2|V| matrix with row (v_i,v_j) carrying (x_i-x_j, y_i-y_j) in the
// v_i columns and the negation in the v_j columns.
struct RigidityMatrix {
  int rows = 0;
  int cols = 0;
  Eigen::SparseMatrix<double> mat;
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(mat); }
};

RigidityMatrix rigidity_matrix(const Framework& f);

// Orthonormal 2|V| x 3 basis of the isometric-motion flexes: two
// translations and the rotation field about the centroid. Throws when the
// framework has fewer than two distinct points.
Eigen::MatrixXd trivial_flex_basis(const Framework& f);

bool degenerate_geometry(const Framework& f, double tol = 1e-9);

struct FlexSpaceReport {
  int nullity = 0;
  int trivial_dim = 3;
  int proper_dim = 0;
  Eigen::MatrixXd basis;         // 2V x nullity, orthonormal
  Eigen::MatrixXd proper_basis;  // 2V x proper_dim, orthonormal, _|_ trivial
  std::vector<double> singular_values;  // ascending, length min(|E|, 2|V|)
  double sigma_max = 0.0;
  double smallest_nontrivial_sv = 0.0;
  bool degenerate = false;
  double tol = kNullTol;
};

// Numerical null space of the rigidity matrix by full SVD. Singular values
// below tol * sigma_max count as zero (sigma_max treated as 1 when all
// vanish).
FlexSpaceReport flex_space(const Framework& f, double tol = kNullTol);

// Unit-norm proper flex orthogonal to the trivial basis, when one exists.
// Deterministic: among the orthonormal proper basis vectors, pick the one
// whose first nonzero coordinate is largest in magnitude (tie: lowest
// coordinate index), sign-normalized positive.
std::optional<Eigen::VectorXd> proper_flex(const Framework& f,
                                           double tol = kNullTol);

struct MarginReport {
  double margin = 0.0;
  Eigen::VectorXd witness;
  bool from_null_space = false;  // exact witness (proper_dim >= 1)
};

// Upper bound on the Definition-3.5 margin: max over edges of
// |(u_i-u_j).(p_i-p_j)| / ((|u_i|+|u_j|) |p_i-p_j|), minimized over
// candidate flexes (smallest nontrivial singular vectors) with projected
// subgradient refinement.
MarginReport approx_flex_margin(const Framework& f, int candidates = 5,
                                int refine_iters = 50, double tol = kNullTol);

struct FlexProfileRow {
  int rank = 0;
  int proper_dim = 0;
  bool has_flex = false;
  std::vector<double> per_vertex;  // |u_i| of the selected flex
  std::vector<double> per_group;   // max |u_i| per label group
  double slope = 0.0;              // log-log of per_group vs group index
  TrendKind trend = TrendKind::Bounded;
};

struct FlexGrowthProfile {
  std::vector<FlexProfileRow> rows;
  // Sup-norm of the base-normalized flex per rank, with its trend: bounded
  // flexes keep this flat as the truncations grow.
  RankSeries sup_by_rank;
};

// For each rank: the tail-minimal proper flex (least energy outside the
// group-0 base cell, unit energy on it) and its magnitude profile over the
// generator's vertex ordering. Trend classified per rank from the per-group
// magnitudes.
FlexGrowthProfile flex_growth_profile(const FrameworkFamily& fam, int r_max,
                                      double tol = kNullTol, int threads = 1);

}  // namespace rigor
