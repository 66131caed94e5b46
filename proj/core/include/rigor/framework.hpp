#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigor/vec2.hpp"

namespace rigor {

class ValidationError : public std::runtime_error {
 public:
  enum class Kind {
    BadIndex,
    SelfLoop,
    DuplicateEdge,
    ZeroLengthEdge,
    Disconnected,
    BadInput,
  };

  ValidationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Edge {
  int i = 0;
  int j = 0;  // normalized so i < j
  bool operator==(const Edge&) const = default;
};

struct FamilyTag {
  std::string name;
  int rank = 0;
};

// A finite planar bar-joint framework: realized graph (G, p) with cached
// edge lengths. Immutable after construction.
class Framework {
 public:
  static constexpr int kDimension = 2;

  // Validates and builds. Throws ValidationError on: bad vertex index,
  // self-loop, duplicate edge, zero-length edge, disconnected graph.
  static Framework build(std::vector<Vec2> positions,
                         const std::vector<std::pair<int, int>>& edges,
                         std::vector<std::string> labels = {});

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  Vec2 vertex(int i) const { return vertices_.at(i); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& edge_lengths() const { return lengths_; }
  double edge_length(int e) const { return lengths_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool has_edge(int i, int j) const;
  std::optional<int> edge_index(int i, int j) const;
  int degree(int v) const;

  // Vertex group parsed from a "name:<int>" label; -1 if unlabeled.
  int group_of(int v) const;

  const std::optional<FamilyTag>& family() const { return family_; }
  Framework with_family(FamilyTag tag) const;
  // Same graph, new positions (revalidates lengths only).
  Framework with_positions(std::vector<Vec2> positions) const;

  // True when both frameworks carry the identical abstract graph
  // under the identity vertex correspondence.
  bool same_graph(const Framework& other) const;

  // Empty placeholder; real frameworks come from build().
  Framework() = default;

 private:
  std::vector<Vec2> vertices_;
  std::vector<Edge> edges_;
  std::vector<double> lengths_;
  std::vector<std::string> labels_;
  std::optional<FamilyTag> family_;
};

struct EdgeStats {
  std::vector<double> edge_lengths;        // per edge, framework order
  std::vector<double> vertex_min_length;   // m_i; +inf for isolated vertices
  std::vector<double> vertex_max_length;   // M_i; 0 for isolated vertices
  double global_min = 0.0;
  double global_max = 0.0;
};

EdgeStats edge_stats(const Framework& f);

}  // namespace rigor
