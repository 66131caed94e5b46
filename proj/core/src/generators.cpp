#include "rigor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

namespace rigor {

namespace {

std::string grp(const char* name, int k) {
  return std::string(name) + ":" + std::to_string(k);
}

struct Builder {
  std::vector<Vec2> pos;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  std::set<std::pair<int, int>> seen;

  int add(Vec2 p, std::string label) {
    pos.push_back(p);
    labels.push_back(std::move(label));
    return static_cast<int>(pos.size()) - 1;
  }
  void bar(int a, int b) {
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) edges.emplace_back(a, b);
  }
  Framework done() { return Framework::build(pos, edges, labels); }
};

// Scissor unit spanning from an input column (bottom joint `ib`, top `it`,
// both existing) to a new output column. `axis` is the unit direction from
// input toward output, `w`/`h` the unit's span and column height.
struct UnitJoints {
  int out_bot, out_top;
};

UnitJoints scissor_unit(Builder& b, int ib, int it, Vec2 axis, double w,
                        double h, const std::string& label) {
  const Vec2 up = axis.rot90();
  const Vec2 pb = b.pos[ib];
  const Vec2 diag1 = axis * w + up * h;   // bottom-in -> top-out
  const Vec2 diag2 = axis * w - up * h;   // top-in -> bottom-out
  const double arm = diag1.norm() / 2.0;
  const Vec2 center = pb + diag1 * 0.5;

  const Vec2 n1 = diag1.normalized().rot90();
  const Vec2 n2 = diag2.normalized().rot90();
  const int m = b.add(center, label);
  const int e1 = b.add(center + n1 * (arm / 4.0), label);
  const int e2 = b.add(center + n2 * (arm / 4.0), label);
  const int ob = b.add(pb + axis * w, label);
  const int ot = b.add(pb + axis * w + up * h, label);

  b.bar(ib, m);
  b.bar(m, ot);
  b.bar(it, m);
  b.bar(m, ob);
  b.bar(e1, ib);
  b.bar(e1, m);
  b.bar(e1, ot);
  b.bar(e2, it);
  b.bar(e2, m);
  b.bar(e2, ob);
  return {ob, ot};
}

}  // namespace

Framework harmonic_chain(int n, const std::vector<int>& signs) {
  if (n < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "n >= 1 required");
  }
  if (static_cast<int>(signs.size()) != n) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "signs must have length n");
  }
  Builder b;
  b.add({0, 0}, grp("k", 0));
  double x = 0;
  for (int k = 1; k <= n; ++k) {
    if (signs[k - 1] != 1 && signs[k - 1] != -1) {
      throw ValidationError(ValidationError::Kind::BadInput,
                            "signs must be +1 or -1");
    }
    x += static_cast<double>(signs[k - 1]) / k;
    b.add({x, 0}, grp("k", k));
    b.bar(k - 1, k);
  }
  return b.done();
}

Framework diminishing_rectangles(int n) {
  if (n < 2) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "n >= 2 rectangles required");
  }
  Builder b;
  b.add({1.0, -0.25}, grp("rect", 0));  // p0
  for (int k = 1; k <= n; ++k) {
    b.add({1.0 / k, 0.0}, grp("rect", k));      // p_{2k-1}
    b.add({1.0 / k, 1.0 / k}, grp("rect", k));  // p_{2k}
  }
  const int m = 2 * n;
  b.bar(1, 2);  // first vertical is the base edge
  for (int i = 3; i <= m; i += 2) b.bar(i, i + 1);
  for (int i = 1; i + 2 <= m; ++i) b.bar(i, i + 2);
  for (int i = 1; i <= m; i += 2) b.bar(0, i);
  return b.done();
}

Framework dyadic_cobweb(int levels, CobwebDirection direction) {
  if (levels < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "levels >= 1");
  }
  std::vector<double> scales;
  switch (direction) {
    case CobwebDirection::Inward:
      for (int k = 0; k < levels; ++k) scales.push_back(std::ldexp(1.0, -k));
      break;
    case CobwebDirection::Outward:
      for (int k = 0; k < levels; ++k) scales.push_back(std::ldexp(1.0, k));
      break;
    case CobwebDirection::TwoWay:
      // Base square first, then alternating outward/inward rings so that
      // truncations nest by vertex prefix.
      scales.push_back(1.0);
      for (int k = 1; k < levels; ++k) {
        scales.push_back(std::ldexp(1.0, k));
        scales.push_back(std::ldexp(1.0, -k));
      }
      break;
  }
  const Vec2 corners[4] = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
  Builder b;
  // ring index -> vertex base, keyed by signed level for radial wiring
  std::unordered_map<int, int> base_of_level;
  auto level_of = [&](int idx) {
    if (direction == CobwebDirection::Inward) return -idx;
    if (direction == CobwebDirection::Outward) return idx;
    if (idx == 0) return 0;
    return (idx % 2 == 1) ? (idx + 1) / 2 : -(idx / 2);
  };
  for (int idx = 0; idx < static_cast<int>(scales.size()); ++idx) {
    const double s = scales[idx];
    const int lvl = level_of(idx);
    const int base = static_cast<int>(b.pos.size());
    base_of_level[lvl] = base;
    for (const Vec2& c : corners) b.add(c * s, grp("ring", idx));
    for (int k = 0; k < 4; ++k) b.bar(base + k, base + (k + 1) % 4);
    for (int neighbor : {lvl - 1, lvl + 1}) {
      auto it = base_of_level.find(neighbor);
      if (it != base_of_level.end()) {
        for (int k = 0; k < 4; ++k) b.bar(it->second + k, base + k);
      }
    }
  }
  return b.done();
}

Framework winerack(int bays) {
  if (bays < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "bays >= 1");
  }
  Builder b;
  int ib = b.add({0, 0}, grp("bay", 0));
  int it = b.add({0, 1}, grp("bay", 0));
  for (int k = 0; k < bays; ++k) {
    const UnitJoints out =
        scissor_unit(b, ib, it, {1, 0}, 1.0, 1.0, grp("bay", k));
    // output column joints belong to the next bay boundary
    b.labels[out.out_bot] = grp("bay", k + 1);
    b.labels[out.out_top] = grp("bay", k + 1);
    ib = out.out_bot;
    it = out.out_top;
  }
  return b.done();
}

Framework cantor_tree(int depth) {
  if (depth < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "depth >= 1");
  }
  constexpr double kScaleRatio = 1.0 / 3.0;
  constexpr double kSpread = 0.6;  // radians between sibling axes

  Builder b;
  struct Pending {
    int anchor;   // existing joint = child input-bottom
    Vec2 axis;
    double scale;
  };
  const int root_b = b.add({0, 0}, grp("level", 0));
  const int root_t = b.add({0, 1}, grp("level", 0));
  std::vector<Pending> frontier;
  {
    const UnitJoints out =
        scissor_unit(b, root_b, root_t, {1, 0}, 1.0, 1.0, grp("level", 0));
    frontier.push_back({out.out_bot, Vec2{1, 0}, kScaleRatio});
    frontier.push_back({out.out_top, Vec2{1, 0}, kScaleRatio});
  }
  for (int lvl = 1; lvl < depth; ++lvl) {
    std::vector<Pending> next;
    int side = +1;
    for (const Pending& p : frontier) {
      const double rot = side * kSpread;
      side = -side;
      const double c = std::cos(rot), s = std::sin(rot);
      const Vec2 axis{c * p.axis.x - s * p.axis.y, s * p.axis.x + c * p.axis.y};
      const Vec2 up = axis.rot90();
      const int in_top =
          b.add(b.pos[p.anchor] + up * p.scale, grp("level", lvl));
      const UnitJoints out = scissor_unit(b, p.anchor, in_top, axis, p.scale,
                                          p.scale, grp("level", lvl));
      next.push_back({out.out_bot, axis, p.scale * kScaleRatio});
      next.push_back({out.out_top, axis, p.scale * kScaleRatio});
    }
    frontier = std::move(next);
  }
  return b.done();
}

Framework strip_tower(int n, double aspect) {
  if (n < 1 || !(aspect > 0)) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "n >= 1 and aspect > 0 required");
  }
  Builder b;
  b.add({0, 0}, grp("cell", 0));
  b.add({0, 1}, grp("cell", 0));
  b.bar(0, 1);
  for (int k = 1; k <= n; ++k) {
    const int bot = b.add({k * aspect, 0}, grp("cell", k));
    const int top = b.add({k * aspect, 1}, grp("cell", k));
    b.bar(bot, top);
    b.bar(bot - 2, bot);
    b.bar(top - 2, top);
    b.bar(bot - 2, top);  // diagonal
  }
  return b.done();
}

Framework periodic_lattice(const Framework& cell, int nx, int ny, Vec2 tx,
                           Vec2 ty) {
  if (nx < 1 || ny < 1) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "repeat counts >= 1 required");
  }
  constexpr double kMergeTol = 1e-9;
  Builder b;
  // quantized grid for merge lookup
  std::unordered_map<long long, std::vector<int>> grid;
  auto key_of = [](long long qx, long long qy) {
    return qx * 2000003LL + qy;
  };
  auto find_or_add = [&](Vec2 p, const std::string& label) {
    const long long qx = static_cast<long long>(std::floor(p.x / kMergeTol));
    const long long qy = static_cast<long long>(std::floor(p.y / kMergeTol));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key_of(qx + dx, qy + dy));
        if (it == grid.end()) continue;
        for (int v : it->second) {
          if (dist(b.pos[v], p) <= kMergeTol) return v;
        }
      }
    }
    const int v = b.add(p, label);
    grid[key_of(qx, qy)].push_back(v);
    return v;
  };

  // Shell order so that r x r tilings nest as vertex prefixes.
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) order.emplace_back(i, j);
  }
  std::sort(order.begin(), order.end(), [](auto a, auto b2) {
    const int sa = std::max(a.first, a.second);
    const int sb = std::max(b2.first, b2.second);
    if (sa != sb) return sa < sb;
    return a < b2;
  });

  for (auto [i, j] : order) {
    const Vec2 shift = tx * static_cast<double>(i) + ty * static_cast<double>(j);
    std::vector<int> map(cell.vertex_count());
    for (int v = 0; v < cell.vertex_count(); ++v) {
      map[v] = find_or_add(cell.vertex(v) + shift,
                           grp("cell", std::max(i, j)));
    }
    for (const Edge& e : cell.edges()) {
      if (map[e.i] == map[e.j]) {
        throw ValidationError(ValidationError::Kind::BadInput,
                              "inconsistent identification: edge collapsed");
      }
      b.bar(map[e.i], map[e.j]);
    }
  }
  return b.done();
}

Framework unit_square_cell_with_diagonals() {
  return Framework::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                          {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
}

Framework kagome_cell() {
  // Two corner-sharing triangles per cell, kagome-style.
  const double h = std::sqrt(3.0) / 2.0;
  return Framework::build(
      {{0, 0}, {0.5, h}, {1, 0}, {1.5, h}},
      {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 3}});
}

namespace {

FrameworkFamily make_family(std::string name, AnalyticFlags flags,
                            std::function<Framework(int)> trunc, int pi,
                            int pj) {
  FrameworkFamily fam;
  fam.name = std::move(name);
  fam.flags = flags;
  const std::string nm = fam.name;
  fam.truncation = [nm, trunc = std::move(trunc)](int r) {
    if (r < 1) {
      throw ValidationError(ValidationError::Kind::BadInput, "rank >= 1");
    }
    return trunc(r).with_family({nm, r});
  };
  fam.pair_i = pi;
  fam.pair_j = pj;
  return fam;
}

}  // namespace

FrameworkFamily harmonic_chain_family() {
  return harmonic_chain_family({1, -1});
}

FrameworkFamily harmonic_chain_family(std::vector<int> sign_pattern) {
  AnalyticFlags fl;
  fl.regular = Flag::False;
  fl.edge_vanishing = Flag::True;
  fl.edge_unbounded = Flag::False;
  // Boundedness of the limit depends on the sign pattern; the default
  // alternating pattern converges (alternating harmonic series).
  const bool alternating =
      sign_pattern.size() == 2 && sign_pattern[0] == -sign_pattern[1];
  fl.bounded = alternating ? Flag::True : Flag::Unknown;
  fl.locally_finite = Flag::True;
  fl.pointed = alternating ? Flag::True : Flag::Unknown;
  return make_family(
      "harmonic-chain", fl,
      [pattern = std::move(sign_pattern)](int r) {
        std::vector<int> signs(r);
        for (int k = 0; k < r; ++k) signs[k] = pattern[k % pattern.size()];
        return harmonic_chain(r, signs);
      },
      -1, -1);
}

FrameworkFamily diminishing_rectangles_family() {
  AnalyticFlags fl;
  fl.regular = Flag::False;
  fl.edge_vanishing = Flag::True;
  fl.edge_unbounded = Flag::False;
  fl.bounded = Flag::True;
  fl.locally_finite = Flag::False;  // p0 acquires unbounded degree
  // Designated pair: first rectangle's diagonal (p2, p3). The x-axis edges
  // (p1,p3) and chain edges (p2,p4) are conserved by every flex.
  return make_family("diminishing-rectangles", fl,
                     [](int r) { return diminishing_rectangles(r + 1); }, 2,
                     3);
}

FrameworkFamily dyadic_cobweb_family(CobwebDirection direction) {
  AnalyticFlags fl;
  fl.regular = Flag::False;
  fl.locally_finite = Flag::True;
  switch (direction) {
    case CobwebDirection::Inward:
      fl.edge_vanishing = Flag::True;
      fl.edge_unbounded = Flag::False;
      fl.bounded = Flag::True;
      break;
    case CobwebDirection::Outward:
      fl.edge_vanishing = Flag::False;
      fl.edge_unbounded = Flag::True;
      fl.bounded = Flag::False;
      break;
    case CobwebDirection::TwoWay:
      fl.edge_vanishing = Flag::True;
      fl.edge_unbounded = Flag::True;
      fl.bounded = Flag::False;
      break;
  }
  const char* name = direction == CobwebDirection::Inward    ? "cobweb-inward"
                     : direction == CobwebDirection::Outward ? "cobweb-outward"
                                                             : "cobweb-two-way";
  return make_family(
      name, fl, [direction](int r) { return dyadic_cobweb(r, direction); }, 0,
      2);
}

FrameworkFamily winerack_family() {
  AnalyticFlags fl;
  fl.regular = Flag::True;
  fl.edge_vanishing = Flag::False;
  fl.edge_unbounded = Flag::False;
  fl.bounded = Flag::False;
  fl.locally_finite = Flag::True;
  return make_family("winerack", fl, [](int r) { return winerack(r); }, 0, 1);
}

FrameworkFamily cantor_tree_family() {
  AnalyticFlags fl;
  fl.regular = Flag::False;
  fl.edge_vanishing = Flag::True;
  fl.edge_unbounded = Flag::False;
  fl.bounded = Flag::True;
  fl.locally_finite = Flag::True;
  return make_family("cantor-tree", fl, [](int r) { return cantor_tree(r); },
                     0, 1);
}

FrameworkFamily strip_tower_family(double aspect) {
  AnalyticFlags fl;
  fl.regular = Flag::True;
  fl.edge_vanishing = Flag::False;
  fl.edge_unbounded = Flag::False;
  fl.bounded = Flag::False;
  fl.locally_finite = Flag::True;
  return make_family("strip-tower", fl,
                     [aspect](int r) { return strip_tower(r, aspect); }, -1,
                     -1);
}

FrameworkFamily periodic_lattice_family(Framework cell, Vec2 tx, Vec2 ty,
                                        std::string name) {
  AnalyticFlags fl;
  fl.regular = Flag::True;
  fl.edge_vanishing = Flag::False;
  fl.edge_unbounded = Flag::False;
  fl.bounded = Flag::False;
  fl.locally_finite = Flag::True;
  return make_family(
      std::move(name), fl,
      [cell = std::move(cell), tx, ty](int r) {
        return periodic_lattice(cell, r, r, tx, ty);
      },
      -1, -1);
}

}  // namespace rigor
