#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rigor/family.hpp"
#include "rigor/framework.hpp"

namespace rigor {

struct ProjectionResult {
  std::vector<Vec2> positions;
  double residual = 0.0;  // max |edge length - target|
  int iterations = 0;
  bool converged = false;
  bool rank_deficient = false;
};

// Gauss-Newton on the squared edge-length equations with pinned coordinates
// frozen. Underdetermined steps take the minimum-norm solution.
ProjectionResult project_to_manifold(const Framework& topology,
                                     std::vector<Vec2> start,
                                     const std::vector<double>& target_lengths,
                                     const std::vector<int>& pins,
                                     double tol = 1e-10, int max_iter = 60);

struct StallInfo {
  int step = 0;
  std::string reason;
};

struct FlexTrajectory {
  std::vector<double> times;                 // in [0,1]
  std::vector<std::vector<Vec2>> positions;  // per time
  double max_constraint_residual = 0.0;
  std::array<int, 2> pinned{-1, -1};
  double M_estimate = 0.0;  // max over all vertex pairs of |d'_ij(t)|
  double arc_step = 0.0;
  bool rigid = false;   // no proper motion after pinning
  bool proper = false;  // max displacement > 10 * projection tol
  std::optional<StallInfo> stall;
  int initial_null_dim = 0;
  int path_null_dim = 0;
};

struct SimulateOptions {
  int steps = 100;
  double arc_step = 0.01;
  double proj_tol = 1e-10;
  int max_iter = 60;
  double null_tol = 1e-9;
  // Tangent seed (2V components); defaults to the deterministic proper flex
  // of the pinned framework.
  std::optional<Eigen::VectorXd> seed;
  // When set, tangents are normalized to unit norm on these vertices'
  // coordinates instead of the full configuration vector.
  std::vector<int> normalize_on;
  // Compute the all-pairs M estimate (quadratic in |V|).
  bool all_pairs_smoothness = true;
};

// Predictor-corrector continuation from f's positions with the base edge
// pinned. The reference null-space dimension is taken after the first step
// (symmetric starting configurations often carry extra first-order flexes);
// later dimension changes stall the trajectory with a report.
FlexTrajectory simulate_flex(const Framework& f, std::array<int, 2> pins,
                             const SimulateOptions& opt = {});

struct PairDerivative {
  int i = 0, j = 0;
  double max_abs = 0.0;
};

struct SmoothnessReport {
  double M_estimate = 0.0;          // max over pairs and times, central diff
  PairDerivative worst;             //
  double max_edge_derivative = 0.0; // over framework edges only
  double max_second_difference = 0.0;
};

SmoothnessReport smoothness_report(const FlexTrajectory& traj,
                                   const Framework& f);

struct ProtocolRow {
  int rank = 0;
  double delta = 0.0;     // |d_ij(1) - d_ij(0)| over the simulated flex
  double M = 0.0;         // max |d'_kl| over pairs within truncation(1)
  double M_full = 0.0;    // max over all pairs of the rank-r truncation
  double residual = 0.0;
  bool sim_ok = false;
  std::string note;
};

struct ProtocolReport {
  std::vector<ProtocolRow> rows;
  std::string verdict;
  double c = 0.0;            // min_r delta_r
  double M = 0.0;            // max_r M_r
  double delta_slope = 0.0;  // log-log slope of delta over the last half
  bool satisfied = false;
};

struct ProtocolOptions {
  int steps = 50;
  double arc_step = 0.01;
  double proj_tol = 1e-10;
  double c_threshold = 1e-4;
  double slope_threshold = 0.1;
  int threads = 1;
};

// Theorem-4.2-style evidence over a standard chain: for each rank r the
// truncation is normalised on its first edge, a flex seeded toward changing
// d_ij is continued with tangent speed normalized on the base truncation's
// coordinates, and Delta_r / M_r are recorded. The designated pair must be
// vertices of truncation(1).
ProtocolReport chain_flex_protocol(const FrameworkFamily& fam, int i, int j,
                                   int r_max, const ProtocolOptions& opt = {});

}  // namespace rigor
