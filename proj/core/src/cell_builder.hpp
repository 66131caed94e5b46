#pragma once

// Internal geometry kit shared by the gadget and linkage builders.

#include <complex>
#include <set>
#include <string>
#include <vector>

#include "rigor/framework.hpp"

namespace rigor::detail {

using Cx = std::complex<double>;

inline Cx reflect_across_perp_bisector(Cx z, Cx p, Cx q) {
  const Cx m = (p + q) / 2.0;
  const Cx u = Cx(0, 1) * (q - p);
  return m + (u / std::conj(u)) * std::conj(z - m);
}

struct GadgetRecord {
  std::string kind;
  std::vector<int> vertices;
  double tolerance = 0.0;
};

class CellBuilder {
 public:
  int add(Cx z) {
    pos_.push_back({z.real(), z.imag()});
    return static_cast<int>(pos_.size()) - 1;
  }
  void bar(int a, int b) {
    if (a > b) std::swap(a, b);
    if (seen_.insert({a, b}).second) edges_.emplace_back(a, b);
  }
  Cx at(int v) const { return {pos_[v].x, pos_[v].y}; }
  int size() const { return static_cast<int>(pos_.size()); }

  // Contraparallelogram pair forcing angle(v -> w) == angle(u -> v) at the
  // common center A. Arms A-U (length a) and A-V (length b < a) must exist
  // as bars; creates the w-arm tip F at radius b^2/a plus the internal
  // vertices C, E, G and eight bars. Returns F.
  int bisector_cell(int A, int U, int V) {
    const int F = add(w_tip(A, U, V));
    bisector_cell_into(A, U, V, F);
    return F;
  }

  // Position the cell's w-tip would take (radius b^2/a on the reflected ray).
  Cx w_tip(int A, int U, int V) const {
    const Cx Az = at(A), Uz = at(U), Vz = at(V);
    const double a = std::abs(Uz - Az), b = std::abs(Vz - Az);
    const double tu = std::arg(Uz - Az), tv = std::arg(Vz - Az);
    return Az + std::polar(b * b / a, 2 * tv - tu);
  }

  // As bisector_cell but fusing the w-arm tip onto the existing vertex F
  // (which must already sit at w_tip(A, U, V) with bar A-F present or added
  // by the caller).
  void bisector_cell_into(int A, int U, int V, int F) {
    const Cx Az = at(A), Uz = at(U), Vz = at(V);
    const double a = std::abs(Uz - Az), b = std::abs(Vz - Az);
    const Cx C = reflect_across_perp_bisector(Az, Uz, Vz);
    const Cx dir = (C - Vz) / std::abs(C - Vz);
    const Cx E = Vz + (b * b / a) * dir;
    const Cx G = (Vz + C) / 2.0 + 0.3 * a * Cx(0, 1) * dir;
    const int Ci = add(C), Ei = add(E), Gi = add(G);
    bar(U, Ci);
    bar(V, Ei);
    bar(Ei, Ci);
    bar(Gi, V);
    bar(Gi, Ei);
    bar(Gi, Ci);
    bar(Ei, F);
    bar(A, F);
  }

  // New joint T on the ray A -> W at the given radius (inside the segment or
  // beyond W), held collinear by an off-axis gadget vertex. Returns T.
  int collinear_rider(int A, int W, double radius) {
    const Cx Az = at(A), Wz = at(W);
    const double len = std::abs(Wz - Az);
    const Cx dir = (Wz - Az) / len;
    const int T = add(Az + radius * dir);
    const double span = std::max(radius, len);
    const Cx G = Az + 0.5 * span * dir + 0.25 * span * Cx(0, 1) * dir;
    const int Gi = add(G);
    bar(A, T);
    bar(T, W);
    bar(Gi, A);
    bar(Gi, T);
    bar(Gi, W);
    return T;
  }

  // Parallelogram cell copying the bar P1->P2 onto Q1->Q2 with
  // Q1 = P1 + offset. Adds Q1, Q2 and three bars; returns {Q1, Q2}.
  std::pair<int, int> parallelogram(int P1, int P2, Cx offset) {
    const int Q1 = add(at(P1) + offset);
    const int Q2 = add(at(P2) + offset);
    bar(P1, Q1);
    bar(P2, Q2);
    bar(Q1, Q2);
    return {Q1, Q2};
  }

  // Two-cell translator carrying the bar A->S onto a bar starting at the
  // existing joint P0. Returns the new end joint P1 = P0 + (S - A).
  int translator_to(int A, int S, int P0) {
    // Intermediate stage offset: halfway toward P0, bent sideways so the
    // elbow stays away from both fold configurations.
    const Cx to_target = at(P0) - at(A);
    const Cx mid = 0.5 * to_target + 0.35 * std::abs(to_target) * Cx(0, 1) *
                                         (to_target / std::abs(to_target));
    auto [J1, J2] = parallelogram(A, S, mid);
    const Cx off2 = at(P0) - at(J1);
    const int P1 = add(at(J2) + off2);
    bar(J1, P0);
    bar(J2, P1);
    bar(P0, P1);
    return P1;
  }

  Framework framework(std::vector<std::string> labels = {}) const {
    return Framework::build(pos_, edges_, std::move(labels));
  }

  std::vector<GadgetRecord> records;

 private:
  std::vector<Vec2> pos_;
  std::vector<std::pair<int, int>> edges_;
  std::set<std::pair<int, int>> seen_;
};

}  // namespace rigor::detail
