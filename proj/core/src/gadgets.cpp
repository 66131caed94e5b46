#include "rigor/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cell_builder.hpp"
#include "rigor/flex_sim.hpp"
#include "rigor/rigidity.hpp"

namespace rigor {

using detail::CellBuilder;
using detail::Cx;

std::string to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::Parallelogram: return "parallelogram";
    case GadgetKind::Translator: return "translator";
    case GadgetKind::Multiplier: return "multiplier";
    case GadgetKind::Additor: return "additor";
    case GadgetKind::Reversor: return "reversor";
    case GadgetKind::LineConstraint: return "line_constraint";
  }
  return "?";
}

namespace {

constexpr double kArmRatio = 0.8;  // geometric arm shrink per cascade stage

double wrap_angle(double x) {
  while (x > std::numbers::pi) x -= 2 * std::numbers::pi;
  while (x < -std::numbers::pi) x += 2 * std::numbers::pi;
  return x;
}

double joint_angle(const std::vector<Vec2>& pos, int center, int tip) {
  return (pos[tip] - pos[center]).angle();
}

}  // namespace

Gadget make_multiplier(int k, double scale, std::array<double, 2> range) {
  if (k < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "k >= 1 required");
  }
  const double theta0 = range[0];
  CellBuilder b;
  const int A = b.add({0, 0});
  std::vector<int> tips;
  tips.push_back(b.add(std::polar(scale, 0.0)));  // base arm
  b.bar(A, tips[0]);
  if (k >= 1) {
    tips.push_back(b.add(std::polar(scale * kArmRatio, theta0)));
    b.bar(A, tips[1]);
  }
  for (int m = 2; m <= k; ++m) {
    tips.push_back(b.bisector_cell(A, tips[m - 2], tips[m - 1]));
  }

  Gadget g;
  g.kind = GadgetKind::Multiplier;
  g.multiplier_k = k;
  g.framework = b.framework();
  g.base_joints = {A, tips[0]};
  g.input_joints = {tips[1]};
  g.output_joints = {tips[k]};
  g.input_count = 1;
  g.operating_range = range;
  g.build_inputs = {theta0};
  const double in_radius = scale * kArmRatio;
  g.relation = [k](const std::vector<double>& in) {
    return std::vector<double>{static_cast<double>(k) * in.at(0)};
  };
  g.placement = [in_radius](const std::vector<double>& in) {
    return std::vector<Vec2>{Vec2::polar(in_radius, in.at(0))};
  };
  const int out = tips[k];
  g.readout = [out, A](const std::vector<Vec2>& pos) {
    return std::vector<double>{joint_angle(pos, A, out)};
  };
  return g;
}

Gadget make_reversor(double scale, std::array<double, 2> range) {
  const double x0 = range[0];
  CellBuilder b;
  const int A = b.add({0, 0});
  // u = input arm, v = pinned base arm (shorter), w = output at -x.
  const double lu = scale;
  const double lv = scale * kArmRatio;
  const int U = b.add(std::polar(lu, x0));
  const int V = b.add(std::polar(lv, 0.0));
  b.bar(A, U);
  b.bar(A, V);
  const int W = b.bisector_cell(A, U, V);

  Gadget g;
  g.kind = GadgetKind::Reversor;
  g.framework = b.framework();
  g.base_joints = {A, V};
  g.input_joints = {U};
  g.output_joints = {W};
  g.operating_range = range;
  g.build_inputs = {x0};
  g.relation = [](const std::vector<double>& in) {
    return std::vector<double>{-in.at(0)};
  };
  g.placement = [lu](const std::vector<double>& in) {
    return std::vector<Vec2>{Vec2::polar(lu, in.at(0))};
  };
  g.readout = [W, A](const std::vector<Vec2>& pos) {
    return std::vector<double>{joint_angle(pos, A, W)};
  };
  return g;
}

Gadget make_additor(double scale) {
  // Averager cell on the two input arms (passive bisector arm), then a
  // doubler cell back to the base. Branch: input1 > input2 throughout.
  const double x0 = 0.9 * 1.0, y0 = 0.35;
  const double lbase = 0.8 * scale, lu = 0.7 * scale, lw = 0.5 * scale;
  CellBuilder b;
  const int A = b.add({0, 0});
  const int base = b.add(std::polar(lbase, 0.0));
  const int U = b.add(std::polar(lu, x0));
  const int W = b.add(std::polar(lw, y0));
  b.bar(A, base);
  b.bar(A, U);
  b.bar(A, W);
  const double lv = std::sqrt(lu * lw);
  const int Vav = b.add(std::polar(lv, (x0 + y0) / 2));
  b.bar(A, Vav);
  b.bisector_cell_into(A, U, Vav, W);  // forces Vav onto the bisector
  const double lrider = 0.6 * lbase;
  const int rider = b.collinear_rider(A, Vav, lrider);
  const int out = b.bisector_cell(A, base, rider);

  Gadget g;
  g.kind = GadgetKind::Additor;
  g.framework = b.framework();
  g.base_joints = {A, base};
  g.input_joints = {U, W};
  g.output_joints = {out};
  g.input_count = 2;
  g.operating_range = {0.2, 1.2};  // per input; input1 - input2 >= 0.15
  g.build_inputs = {x0, y0};
  g.relation = [](const std::vector<double>& in) {
    return std::vector<double>{in.at(0) + in.at(1)};
  };
  g.placement = [lu, lw](const std::vector<double>& in) {
    return std::vector<Vec2>{Vec2::polar(lu, in.at(0)),
                             Vec2::polar(lw, in.at(1))};
  };
  g.readout = [out, A](const std::vector<Vec2>& pos) {
    return std::vector<double>{joint_angle(pos, A, out)};
  };
  return g;
}

Gadget make_parallelogram(double scale, std::array<double, 2> range) {
  const double x0 = range[0];
  CellBuilder b;
  const int P1 = b.add({0, 0});
  const int P2 = b.add(std::polar(scale, x0));
  b.bar(P1, P2);
  auto [Q1, Q2] = b.parallelogram(P1, P2, Cx(1.6 * scale, -1.1 * scale));

  Gadget g;
  g.kind = GadgetKind::Parallelogram;
  g.framework = b.framework();
  g.base_joints = {P1, Q1};
  g.input_joints = {P2};
  g.output_joints = {Q2};
  g.operating_range = range;
  g.build_inputs = {x0};
  g.relation = [](const std::vector<double>& in) {
    return std::vector<double>{in.at(0)};
  };
  g.placement = [scale](const std::vector<double>& in) {
    return std::vector<Vec2>{Vec2::polar(scale, in.at(0))};
  };
  g.readout = [Q1 = Q1, Q2 = Q2](const std::vector<Vec2>& pos) {
    return std::vector<double>{joint_angle(pos, Q1, Q2)};
  };
  return g;
}

Gadget make_translator(double scale, std::array<double, 2> range) {
  const double x0 = range[0];
  CellBuilder b;
  const int A = b.add({0, 0});
  const int S = b.add(std::polar(scale, x0));
  b.bar(A, S);
  const int P0 = b.add(Cx(1.2 * scale, -2.4 * scale));
  const int P1 = b.translator_to(A, S, P0);

  Gadget g;
  g.kind = GadgetKind::Translator;
  g.framework = b.framework();
  g.base_joints = {A, P0};
  g.input_joints = {S};
  g.output_joints = {P1};
  g.operating_range = range;
  g.build_inputs = {x0};
  g.relation = [](const std::vector<double>& in) {
    return std::vector<double>{in.at(0)};
  };
  g.placement = [scale](const std::vector<double>& in) {
    return std::vector<Vec2>{Vec2::polar(scale, in.at(0))};
  };
  g.readout = [P0 = P0, P1 = P1](const std::vector<Vec2>& pos) {
    return std::vector<double>{joint_angle(pos, P0, P1)};
  };
  return g;
}

Gadget make_line_constraint(double scale, std::array<double, 2> range) {
  // Peaucellier inversor with the crank circle through the fixed pivot:
  // |OQ| = |QP| = q with 2q inside the inversion circle sqrt(L^2 - s^2).
  const double L = 2.5 * scale, s = 1.5 * scale, q = 0.95 * scale;
  const double line_x = (L * L - s * s) / (2 * q);
  const double a0 = range[0];
  CellBuilder b;
  const int O = b.add({0, 0});
  const int Q = b.add({q, 0});
  const Cx P = Cx(q, 0) + std::polar(q, a0);
  const double dP = std::abs(P);
  const Cx Pp = P / dP * ((L * L - s * s) / dP);
  const Cx mid = (P + Pp) / 2.0;
  const double half = std::abs(Pp - P) / 2.0;
  const double h = std::sqrt(s * s - half * half);
  const Cx perp = Cx(0, 1) * (Pp - P) / std::abs(Pp - P);
  const int Pi = b.add(P);
  const int Ppi = b.add(Pp);
  const int R1 = b.add(mid + h * perp);
  const int R2 = b.add(mid - h * perp);
  b.bar(O, R1);
  b.bar(O, R2);
  b.bar(R1, Pi);
  b.bar(R2, Pi);
  b.bar(R1, Ppi);
  b.bar(R2, Ppi);
  b.bar(Q, Pi);

  Gadget g;
  g.kind = GadgetKind::LineConstraint;
  g.framework = b.framework();
  g.base_joints = {O, Q};
  g.input_joints = {Pi};
  g.output_joints = {Ppi};
  g.operating_range = range;
  g.build_inputs = {a0};
  g.relation = [line_x](const std::vector<double>&) {
    return std::vector<double>{line_x};
  };
  g.placement = [q](const std::vector<double>& in) {
    return std::vector<Vec2>{Vec2{q, 0} + Vec2::polar(q, in.at(0))};
  };
  g.readout = [Ppi](const std::vector<Vec2>& pos) {
    return std::vector<double>{pos[Ppi].x};
  };
  return g;
}

namespace {

// Sample tuples across the operating range, split into warm-start legs that
// each begin near the build inputs and walk monotonically outward.
std::vector<std::vector<std::vector<double>>> sample_plan(const Gadget& g,
                                                          int samples) {
  std::vector<std::vector<std::vector<double>>> legs;
  if (g.input_count == 1) {
    std::vector<double> xs(samples);
    for (int k = 0; k < samples; ++k) {
      xs[k] = g.operating_range[0] +
              (g.operating_range[1] - g.operating_range[0]) * k /
                  std::max(1, samples - 1);
    }
    const double x0 = g.build_inputs.at(0);
    std::vector<std::vector<double>> up, down;
    for (double x : xs) {
      if (x >= x0) {
        up.push_back({x});
      } else {
        down.push_back({x});
      }
    }
    std::sort(up.begin(), up.end());
    std::sort(down.rbegin(), down.rend());
    if (!up.empty()) legs.push_back(std::move(up));
    if (!down.empty()) legs.push_back(std::move(down));
    return legs;
  }
  // Two inputs: serpentine grid around the build point (stays on the
  // additor's input1 > input2 branch).
  const int side = std::max(2, static_cast<int>(std::llround(std::sqrt(samples))));
  const double x0 = g.build_inputs.at(0), y0 = g.build_inputs.at(1);
  std::vector<std::vector<double>> grid;
  for (int r = 0; r < side; ++r) {
    for (int c0 = 0; c0 < side; ++c0) {
      const int c = (r % 2 == 0) ? c0 : side - 1 - c0;
      grid.push_back({x0 + 0.35 * (static_cast<double>(r) / (side - 1) - 0.5),
                      y0 + 0.25 * (static_cast<double>(c) / (side - 1) - 0.5)});
    }
  }
  legs.push_back(std::move(grid));
  return legs;
}

int pinned_rank_deficit(const Framework& f, const std::vector<Vec2>& pos,
                        const std::vector<int>& pins) {
  Framework cur = f.with_positions(pos);
  const Eigen::MatrixXd Rc = rigidity_matrix(cur).dense();
  std::vector<char> pinned(f.vertex_count(), 0);
  for (int v : pins) pinned[v] = 1;
  std::vector<int> free_cols;
  for (int v = 0; v < f.vertex_count(); ++v) {
    if (!pinned[v]) {
      free_cols.push_back(2 * v);
      free_cols.push_back(2 * v + 1);
    }
  }
  if (free_cols.empty()) return 0;
  Eigen::MatrixXd Rf(Rc.rows(), free_cols.size());
  for (std::size_t c = 0; c < free_cols.size(); ++c) {
    Rf.col(c) = Rc.col(free_cols[c]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Rf);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() && sv(0) > 0 ? sv(0) : 1.0;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) >= 1e-9 * smax) ++rank;
  }
  return static_cast<int>(free_cols.size()) - rank;
}

}  // namespace

CertificationReport certify(Gadget& g, int samples) {
  CertificationReport rep;
  const Framework& f = g.framework;
  std::vector<int> pins = g.base_joints;
  for (int v : g.input_joints) pins.push_back(v);

  for (const auto& leg : sample_plan(g, samples)) {
    std::vector<Vec2> pos = f.vertices();  // warm start each leg at build
    for (const auto& inputs : leg) {
      auto placed = g.placement(inputs);
      std::vector<Vec2> start = pos;
      for (std::size_t k = 0; k < g.input_joints.size(); ++k) {
        start[g.input_joints[k]] = placed[k];
      }
      const ProjectionResult proj = project_to_manifold(
          f, std::move(start), f.edge_lengths(), pins, g.tolerance * 1e-2, 200);
      if (!proj.converged) {
        rep.converged_everywhere = false;
        continue;
      }
      pos = proj.positions;
      ++rep.samples;

      const auto expected = g.relation(inputs);
      const auto measured = g.readout(pos);
      for (std::size_t k = 0; k < expected.size(); ++k) {
        double err = measured[k] - expected[k];
        if (g.kind != GadgetKind::LineConstraint) err = wrap_angle(err);
        rep.max_error = std::max(rep.max_error, std::abs(err));
      }
      if (pinned_rank_deficit(f, pos, pins) > 0) {
        rep.unique_everywhere = false;
      }
    }
  }
  rep.pass = rep.converged_everywhere && rep.unique_everywhere &&
             rep.max_error <= g.tolerance && rep.samples > 0;
  g.certified = rep.pass;
  return rep;
}

}  // namespace rigor
