#include "rigor/framework.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace rigor {

Framework Framework::build(std::vector<Vec2> positions,
                           const std::vector<std::pair<int, int>>& edges,
                           std::vector<std::string> labels) {
  const int n = static_cast<int>(positions.size());
  if (n == 0) {
    throw ValidationError(ValidationError::Kind::BadInput, "no vertices");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "label count does not match vertex count");
  }

  Framework f;
  f.vertices_ = std::move(positions);
  f.labels_ = std::move(labels);

  std::set<std::pair<int, int>> seen;
  f.edges_.reserve(edges.size());
  f.lengths_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw ValidationError(ValidationError::Kind::BadIndex,
                            "edge references vertex " +
                                std::to_string(a < 0 || a >= n ? a : b) +
                                " outside [0," + std::to_string(n) + ")");
    }
    if (a == b) {
      throw ValidationError(ValidationError::Kind::SelfLoop,
                            "self-loop at vertex " + std::to_string(a));
    }
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) {
      throw ValidationError(ValidationError::Kind::DuplicateEdge,
                            "duplicate edge (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
    }
    const double d = dist(f.vertices_[a], f.vertices_[b]);
    if (!(d > 0.0)) {
      throw ValidationError(ValidationError::Kind::ZeroLengthEdge,
                            "zero-length edge (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
    }
    f.edges_.push_back({a, b});
    f.lengths_.push_back(d);
  }

  // Connectivity (a single vertex with no edges counts as connected).
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : f.edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> vis(n, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!vis[w]) {
        vis[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) {
    throw ValidationError(ValidationError::Kind::Disconnected,
                          "graph is disconnected (" + std::to_string(reached) +
                              " of " + std::to_string(n) + " reachable)");
  }
  return f;
}

bool Framework::has_edge(int i, int j) const {
  return edge_index(i, j).has_value();
}

std::optional<int> Framework::edge_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].i == i && edges_[e].j == j) return e;
  }
  return std::nullopt;
}

int Framework::degree(int v) const {
  int d = 0;
  for (const auto& e : edges_) {
    if (e.i == v || e.j == v) ++d;
  }
  return d;
}

int Framework::group_of(int v) const {
  if (labels_.empty()) return -1;
  const std::string& s = labels_.at(v);
  auto pos = s.rfind(':');
  if (pos == std::string::npos) return -1;
  try {
    return std::stoi(s.substr(pos + 1));
  } catch (...) {
    return -1;
  }
}

Framework Framework::with_family(FamilyTag tag) const {
  Framework f = *this;
  f.family_ = std::move(tag);
  return f;
}

Framework Framework::with_positions(std::vector<Vec2> positions) const {
  if (positions.size() != vertices_.size()) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "position count mismatch");
  }
  Framework f = *this;
  f.vertices_ = std::move(positions);
  for (int e = 0; e < f.edge_count(); ++e) {
    const double d = dist(f.vertices_[f.edges_[e].i], f.vertices_[f.edges_[e].j]);
    if (!(d > 0.0)) {
      throw ValidationError(ValidationError::Kind::ZeroLengthEdge,
                            "zero-length edge after reposition");
    }
    f.lengths_[e] = d;
  }
  return f;
}

bool Framework::same_graph(const Framework& other) const {
  return vertex_count() == other.vertex_count() && edges_ == other.edges_;
}

EdgeStats edge_stats(const Framework& f) {
  EdgeStats s;
  s.edge_lengths = f.edge_lengths();
  const int n = f.vertex_count();
  s.vertex_min_length.assign(n, std::numeric_limits<double>::infinity());
  s.vertex_max_length.assign(n, 0.0);
  double gmin = std::numeric_limits<double>::infinity();
  double gmax = 0.0;
  for (int e = 0; e < f.edge_count(); ++e) {
    const double d = f.edge_length(e);
    const auto& ed = f.edges()[e];
    for (int v : {ed.i, ed.j}) {
      s.vertex_min_length[v] = std::min(s.vertex_min_length[v], d);
      s.vertex_max_length[v] = std::max(s.vertex_max_length[v], d);
    }
    gmin = std::min(gmin, d);
    gmax = std::max(gmax, d);
  }
  s.global_min = f.edge_count() ? gmin : 0.0;
  s.global_max = gmax;
  return s;
}

}  // namespace rigor
