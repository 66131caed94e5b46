#include "rigor/family.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rigor {

std::string to_string(Flag f) {
  switch (f) {
    case Flag::False: return "false";
    case Flag::True: return "true";
    case Flag::Unknown: return "unknown";
  }
  return "?";
}

namespace {

RankSeries finish(RankSeries s) {
  s.slope_last_half = loglog_slope_last_half(s.ranks, s.values);
  s.trend = classify_trend(s.slope_last_half);
  return s;
}

Flag from_bool(bool b) { return b ? Flag::True : Flag::False; }

void reconcile(const char* name, Flag& slot, Flag analytic, Flag empirical,
               std::vector<std::string>& notes) {
  if (analytic == Flag::Unknown) {
    slot = empirical;
    return;
  }
  slot = analytic;
  if (empirical != Flag::Unknown && empirical != analytic) {
    notes.push_back(std::string(name) + ": empirical trend suggests " +
                    to_string(empirical) + " but analytic flag is " +
                    to_string(analytic) + "; analytic wins");
  }
}

}  // namespace

Classification classify(const FrameworkFamily& fam, int probe_depth) {
  if (probe_depth < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "probe_depth >= 1");
  }
  Classification c;
  c.probe_depth = probe_depth;
  for (int r = 1; r <= probe_depth; ++r) {
    const Framework f = fam.truncation(r);
    const EdgeStats st = edge_stats(f);
    double sup = 0, maxdeg = 0;
    for (const Vec2& p : f.vertices()) sup = std::max(sup, p.norm());
    for (int v = 0; v < f.vertex_count(); ++v) {
      maxdeg = std::max(maxdeg, static_cast<double>(f.degree(v)));
    }
    c.min_edge.ranks.push_back(r);
    c.min_edge.values.push_back(st.global_min);
    c.max_edge.ranks.push_back(r);
    c.max_edge.values.push_back(st.global_max);
    c.sup_norm.ranks.push_back(r);
    c.sup_norm.values.push_back(sup);
    c.max_degree.ranks.push_back(r);
    c.max_degree.values.push_back(maxdeg);
  }
  c.min_edge = finish(c.min_edge);
  c.max_edge = finish(c.max_edge);
  c.sup_norm = finish(c.sup_norm);
  c.max_degree = finish(c.max_degree);

  const Flag emp_vanishing = from_bool(c.min_edge.trend == TrendKind::Decaying);
  const Flag emp_unbounded_edges = from_bool(c.max_edge.trend == TrendKind::Growing);
  const Flag emp_regular =
      from_bool(c.min_edge.trend != TrendKind::Decaying &&
                c.max_edge.trend != TrendKind::Growing);
  const Flag emp_bounded = from_bool(c.sup_norm.trend != TrendKind::Growing);
  const Flag emp_locfin = from_bool(c.max_degree.trend != TrendKind::Growing);

  reconcile("edge_vanishing", c.edge_vanishing, fam.flags.edge_vanishing,
            emp_vanishing, c.notes);
  reconcile("edge_unbounded", c.edge_unbounded, fam.flags.edge_unbounded,
            emp_unbounded_edges, c.notes);
  reconcile("regular", c.regular, fam.flags.regular, emp_regular, c.notes);
  reconcile("bounded", c.bounded, fam.flags.bounded, emp_bounded, c.notes);
  reconcile("locally_finite", c.locally_finite, fam.flags.locally_finite,
            emp_locfin, c.notes);

  // Invariant: regular excludes both edge trends at probe depth.
  if (c.regular == Flag::True &&
      (c.edge_vanishing == Flag::True || c.edge_unbounded == Flag::True)) {
    c.notes.push_back("flag conflict: regular with vanishing/unbounded edges");
    c.regular = Flag::False;
  }
  return c;
}

std::string check_nesting(const FrameworkFamily& fam, int depth) {
  Framework prev = fam.truncation(1);
  for (int r = 1; r < depth; ++r) {
    const Framework next = fam.truncation(r + 1);
    if (next.vertex_count() < prev.vertex_count()) {
      return "rank " + std::to_string(r + 1) + " has fewer vertices";
    }
    for (int v = 0; v < prev.vertex_count(); ++v) {
      const Vec2 a = prev.vertex(v), b = next.vertex(v);
      if (a.x != b.x || a.y != b.y) {
        return "rank " + std::to_string(r + 1) + " moved shared vertex " +
               std::to_string(v);
      }
    }
    std::set<std::pair<int, int>> prev_edges;
    for (const Edge& e : prev.edges()) prev_edges.insert({e.i, e.j});
    for (const Edge& e : next.edges()) {
      const bool both_shared =
          e.i < prev.vertex_count() && e.j < prev.vertex_count();
      if (both_shared && !prev_edges.count({e.i, e.j})) {
        return "rank " + std::to_string(r + 1) + " edge (" +
               std::to_string(e.i) + "," + std::to_string(e.j) +
               ") missing at rank " + std::to_string(r);
      }
    }
    for (const auto& [i, j] : prev_edges) {
      if (!next.has_edge(i, j)) {
        return "rank " + std::to_string(r) + " edge (" + std::to_string(i) +
               "," + std::to_string(j) + ") missing at rank " +
               std::to_string(r + 1);
      }
    }
    prev = next;
  }
  return {};
}

}  // namespace rigor
