#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rigor/framework.hpp"
#include "rigor/trend.hpp"

namespace rigor {

enum class Flag { False, True, Unknown };

std::string to_string(Flag f);

// Declared limit properties of the infinite framework a family stands for.
struct AnalyticFlags {
  Flag regular = Flag::Unknown;
  Flag edge_vanishing = Flag::Unknown;
  Flag edge_unbounded = Flag::Unknown;
  Flag bounded = Flag::Unknown;
  Flag locally_finite = Flag::Unknown;
  Flag pointed = Flag::Unknown;
};

// A standard chain of nested finite truncations standing in for an infinite
// framework. truncation(r) must be vertex-induced in truncation(r+1) with
// vertex indices forming a prefix.
struct FrameworkFamily {
  std::string name;
  std::function<Framework(int)> truncation;  // rank >= 1
  AnalyticFlags flags;
  // Default designated pair for the chain flex protocol; vertices of
  // truncation(1). Negative when the family has no natural pair.
  int pair_i = -1;
  int pair_j = -1;
};

struct RankSeries {
  std::vector<double> ranks;
  std::vector<double> values;
  double slope_last_half = 0.0;
  TrendKind trend = TrendKind::Bounded;
};

struct Classification {
  Flag regular = Flag::Unknown;
  Flag edge_vanishing = Flag::Unknown;
  Flag edge_unbounded = Flag::Unknown;
  Flag bounded = Flag::Unknown;
  Flag locally_finite = Flag::Unknown;
  int probe_depth = 0;
  RankSeries min_edge;
  RankSeries max_edge;
  RankSeries sup_norm;    // sup_i |p_i| per rank
  RankSeries max_degree;  // max vertex degree per rank
  std::vector<std::string> notes;  // empirical/analytic discrepancies etc.
};

// Empirical classification from truncations 1..probe_depth, reconciled with
// the family's analytic flags (analytic wins; disagreements recorded).
Classification classify(const FrameworkFamily& fam, int probe_depth);

// Checks the nesting invariant between truncation(r) and truncation(r+1) for
// r = 1..depth-1: shared vertices form an index prefix with identical
// positions, and rank-(r+1) edges within the shared prefix appear at rank r.
// Returns an empty string when the invariant holds, else a diagnostic.
std::string check_nesting(const FrameworkFamily& fam, int depth);

}  // namespace rigor
