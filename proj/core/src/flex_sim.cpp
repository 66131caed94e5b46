#include "rigor/flex_sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include "rigor/congruence.hpp"
#include "rigor/rigidity.hpp"

namespace rigor {

namespace {

// Jacobian of the half-squared edge-length residuals w.r.t. free coords.
Eigen::MatrixXd free_jacobian(const Framework& f, const std::vector<Vec2>& pos,
                              const std::vector<int>& free_of_vertex,
                              int free_count) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(f.edge_count(), 2 * free_count);
  for (int e = 0; e < f.edge_count(); ++e) {
    const auto& ed = f.edges()[e];
    const Vec2 d = pos[ed.i] - pos[ed.j];
    if (free_of_vertex[ed.i] >= 0) {
      J(e, 2 * free_of_vertex[ed.i]) = d.x;
      J(e, 2 * free_of_vertex[ed.i] + 1) = d.y;
    }
    if (free_of_vertex[ed.j] >= 0) {
      J(e, 2 * free_of_vertex[ed.j]) = -d.x;
      J(e, 2 * free_of_vertex[ed.j] + 1) = -d.y;
    }
  }
  return J;
}

double max_length_error(const Framework& f, const std::vector<Vec2>& pos,
                        const std::vector<double>& target) {
  double worst = 0;
  for (int e = 0; e < f.edge_count(); ++e) {
    const auto& ed = f.edges()[e];
    worst = std::max(worst, std::abs(dist(pos[ed.i], pos[ed.j]) - target[e]));
  }
  return worst;
}

struct FreeIndex {
  std::vector<int> free_of_vertex;  // -1 for pinned
  std::vector<int> vertices;        // free vertex ids in order
};

FreeIndex make_free_index(int n, const std::vector<int>& pins) {
  FreeIndex fi;
  fi.free_of_vertex.assign(n, -1);
  std::set<int> pinned(pins.begin(), pins.end());
  for (int v = 0; v < n; ++v) {
    if (!pinned.count(v)) {
      fi.free_of_vertex[v] = static_cast<int>(fi.vertices.size());
      fi.vertices.push_back(v);
    }
  }
  return fi;
}

}  // namespace

ProjectionResult project_to_manifold(const Framework& topology,
                                     std::vector<Vec2> start,
                                     const std::vector<double>& target_lengths,
                                     const std::vector<int>& pins, double tol,
                                     int max_iter) {
  if (static_cast<int>(target_lengths.size()) != topology.edge_count()) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "target length count mismatch");
  }
  ProjectionResult out;
  const int n = topology.vertex_count();
  const FreeIndex fi = make_free_index(n, pins);
  const int fc = static_cast<int>(fi.vertices.size());

  for (int it = 0; it <= max_iter; ++it) {
    out.residual = max_length_error(topology, start, target_lengths);
    out.iterations = it;
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
    if (it == max_iter || fc == 0) break;
    Eigen::VectorXd r(topology.edge_count());
    for (int e = 0; e < topology.edge_count(); ++e) {
      const auto& ed = topology.edges()[e];
      const double cur2 = (start[ed.i] - start[ed.j]).squared_norm();
      r(e) = 0.5 * (cur2 - target_lengths[e] * target_lengths[e]);
    }
    const Eigen::MatrixXd J = free_jacobian(topology, start, fi.free_of_vertex, fc);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    cod.setThreshold(1e-12);
    if (cod.rank() < std::min<Eigen::Index>(J.rows(), J.cols())) {
      out.rank_deficient = true;
    }
    const Eigen::VectorXd step = cod.solve(-r);
    for (int k = 0; k < fc; ++k) {
      start[fi.vertices[k]] += Vec2{step(2 * k), step(2 * k + 1)};
    }
  }
  out.positions = std::move(start);
  return out;
}

namespace {

// Null space of the rigidity matrix restricted to free coordinates.
Eigen::MatrixXd pinned_null_space(const Framework& f,
                                  const std::vector<Vec2>& pos,
                                  const FreeIndex& fi, double null_tol) {
  const int fc = static_cast<int>(fi.vertices.size());
  const Eigen::MatrixXd J = free_jacobian(f, pos, fi.free_of_vertex, fc);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() && sv(0) > 0 ? sv(0) : 1.0;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) >= null_tol * smax) ++rank;
  }
  return svd.matrixV().rightCols(2 * fc - rank);
}

}  // namespace

FlexTrajectory simulate_flex(const Framework& f, std::array<int, 2> pins,
                             const SimulateOptions& opt) {
  if (!f.has_edge(pins[0], pins[1])) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "pinned pair must be a framework edge");
  }
  FlexTrajectory traj;
  traj.pinned = pins;
  traj.arc_step = opt.arc_step;

  const int n = f.vertex_count();
  const FreeIndex fi = make_free_index(n, {pins[0], pins[1]});
  const int fc = static_cast<int>(fi.vertices.size());
  const std::vector<double>& targets = f.edge_lengths();

  std::vector<Vec2> pos = f.vertices();
  traj.times.push_back(0.0);
  traj.positions.push_back(pos);

  auto to_free = [&](const Eigen::VectorXd& full) {
    Eigen::VectorXd x(2 * fc);
    for (int k = 0; k < fc; ++k) {
      x(2 * k) = full(2 * fi.vertices[k]);
      x(2 * k + 1) = full(2 * fi.vertices[k] + 1);
    }
    return x;
  };

  Eigen::VectorXd prev_tangent;  // free coords
  double worst_residual = 0.0;

  for (int step = 0; step < opt.steps; ++step) {
    const Eigen::MatrixXd N = pinned_null_space(f, pos, fi, opt.null_tol);
    const int dim = static_cast<int>(N.cols());
    if (step == 0) traj.initial_null_dim = dim;
    if (step == 1) traj.path_null_dim = dim;
    if (dim == 0) {
      if (step == 0) {
        traj.rigid = true;
      } else {
        traj.stall = {step, "null space vanished"};
      }
      break;
    }
    if (step >= 2 && dim != traj.path_null_dim) {
      traj.stall = {step, "null-space dimension changed " +
                              std::to_string(traj.path_null_dim) + " -> " +
                              std::to_string(dim)};
      break;
    }

    Eigen::VectorXd t;
    if (prev_tangent.size() == 0) {
      Eigen::VectorXd seed_free;
      if (opt.seed && opt.seed->size() == 2 * n) {
        seed_free = to_free(*opt.seed);
      } else {
        seed_free = Eigen::VectorXd::Ones(2 * fc);
      }
      t = N * (N.transpose() * seed_free);
    } else {
      t = N * (N.transpose() * prev_tangent);
    }
    if (t.norm() < 1e-12) {
      traj.stall = {step, "tangent continuation lost"};
      break;
    }
    t.normalize();
    if (!opt.normalize_on.empty()) {
      double nb = 0;
      for (int v : opt.normalize_on) {
        const int k = fi.free_of_vertex[v];
        if (k >= 0) nb += t.segment(2 * k, 2).squaredNorm();
      }
      nb = std::sqrt(nb);
      if (nb < 1e-10) {
        traj.stall = {step, "normalization set immobile along tangent"};
        break;
      }
      t /= nb;
    }

    bool advanced = false;
    double h = opt.arc_step;
    for (int attempt = 0; attempt < 6 && !advanced; ++attempt, h /= 2) {
      std::vector<Vec2> pred = pos;
      for (int k = 0; k < fc; ++k) {
        pred[fi.vertices[k]] += Vec2{h * t(2 * k), h * t(2 * k + 1)};
      }
      ProjectionResult proj = project_to_manifold(
          f, std::move(pred), targets, {pins[0], pins[1]}, opt.proj_tol,
          opt.max_iter);
      if (proj.converged) {
        pos = std::move(proj.positions);
        worst_residual = std::max(worst_residual, proj.residual);
        advanced = true;
      } else if (attempt == 5) {
        traj.stall = {step, "projection failed (residual " +
                                std::to_string(proj.residual) + ")"};
      }
    }
    if (!advanced) break;
    prev_tangent = t;
    traj.positions.push_back(pos);
  }

  const std::size_t m = traj.positions.size();
  traj.times.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    traj.times[k] = m > 1 ? static_cast<double>(k) / (m - 1) : 0.0;
  }
  traj.max_constraint_residual = worst_residual;

  double max_disp = 0;
  for (int v = 0; v < n; ++v) {
    max_disp = std::max(max_disp, dist(traj.positions.back()[v], f.vertex(v)));
  }
  traj.proper = max_disp > 10 * opt.proj_tol;

  if (opt.all_pairs_smoothness && m >= 3) {
    traj.M_estimate = smoothness_report(traj, f).M_estimate;
  }
  return traj;
}

SmoothnessReport smoothness_report(const FlexTrajectory& traj,
                                   const Framework& f) {
  SmoothnessReport rep;
  const std::size_t m = traj.positions.size();
  if (m < 3) return rep;
  const int n = static_cast<int>(traj.positions[0].size());

  std::vector<double> d(m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        d[k] = dist(traj.positions[k][i], traj.positions[k][j]);
      }
      double worst = 0, worst2 = 0;
      for (std::size_t k = 1; k + 1 < m; ++k) {
        const double dt = traj.times[k + 1] - traj.times[k - 1];
        worst = std::max(worst, std::abs((d[k + 1] - d[k - 1]) / dt));
        const double h = traj.times[k + 1] - traj.times[k];
        worst2 = std::max(worst2,
                          std::abs(d[k + 1] - 2 * d[k] + d[k - 1]) / (h * h));
      }
      if (worst > rep.M_estimate) {
        rep.M_estimate = worst;
        rep.worst = {i, j, worst};
      }
      rep.max_second_difference = std::max(rep.max_second_difference, worst2);
      if (f.has_edge(i, j)) {
        rep.max_edge_derivative = std::max(rep.max_edge_derivative, worst);
      }
    }
  }
  return rep;
}

namespace {

double pair_distance(const std::vector<Vec2>& pos, int i, int j) {
  return dist(pos[i], pos[j]);
}

ProtocolRow protocol_rank(const FrameworkFamily& fam, int i, int j, int rank,
                          int base_vertex_count, const ProtocolOptions& opt) {
  ProtocolRow row;
  row.rank = rank;
  Framework f = fam.truncation(rank);
  // Normalise on the first edge of the truncation (shared across ranks).
  const Edge base = f.edges().front();
  f = normalise(f, {base.i, base.j});

  // Seed: proper-flex component that changes d_ij fastest.
  Eigen::VectorXd seed = Eigen::VectorXd::Zero(2 * f.vertex_count());
  const Vec2 dir = (f.vertex(i) - f.vertex(j)).normalized();
  seed(2 * i) = dir.x;
  seed(2 * i + 1) = dir.y;
  seed(2 * j) = -dir.x;
  seed(2 * j + 1) = -dir.y;

  SimulateOptions sopt;
  sopt.steps = opt.steps;
  sopt.arc_step = opt.arc_step;
  sopt.proj_tol = opt.proj_tol;
  sopt.seed = seed;
  sopt.all_pairs_smoothness = false;
  sopt.normalize_on.resize(base_vertex_count);
  for (int v = 0; v < base_vertex_count; ++v) sopt.normalize_on[v] = v;

  const FlexTrajectory traj = simulate_flex(f, {base.i, base.j}, sopt);
  row.residual = traj.max_constraint_residual;
  if (traj.rigid) {
    row.note = "no proper flex after pinning";
    row.sim_ok = false;
    return row;
  }
  row.sim_ok = true;
  if (traj.stall) {
    row.note = "stalled at step " + std::to_string(traj.stall->step) + ": " +
               traj.stall->reason;
  }

  const double d0 = pair_distance(traj.positions.front(), i, j);
  double extreme = 0;
  for (const auto& pos : traj.positions) {
    extreme = std::max(extreme, std::abs(pair_distance(pos, i, j) - d0));
  }
  row.delta = extreme;

  // M over pairs within the base truncation, and over all pairs.
  const std::size_t m = traj.positions.size();
  if (m >= 3) {
    const int n = static_cast<int>(traj.positions[0].size());
    std::vector<double> d(m);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (std::size_t k = 0; k < m; ++k) {
          d[k] = pair_distance(traj.positions[k], a, b);
        }
        double worst = 0;
        for (std::size_t k = 1; k + 1 < m; ++k) {
          const double dt = traj.times[k + 1] - traj.times[k - 1];
          worst = std::max(worst, std::abs((d[k + 1] - d[k - 1]) / dt));
        }
        row.M_full = std::max(row.M_full, worst);
        if (a < base_vertex_count && b < base_vertex_count) {
          row.M = std::max(row.M, worst);
        }
      }
    }
  }
  return row;
}

}  // namespace

ProtocolReport chain_flex_protocol(const FrameworkFamily& fam, int i, int j,
                                   int r_max, const ProtocolOptions& opt) {
  if (r_max < 2) {
    throw ValidationError(ValidationError::Kind::BadInput, "r_max >= 2");
  }
  const Framework g1 = fam.truncation(1);
  if (i < 0 || j < 0 || i >= g1.vertex_count() || j >= g1.vertex_count() ||
      i == j) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "designated pair must be vertices of truncation(1)");
  }
  const int base_count = g1.vertex_count();

  ProtocolReport rep;
  rep.rows.resize(r_max);
  auto run = [&](int r) { return protocol_rank(fam, i, j, r, base_count, opt); };
  if (opt.threads <= 1) {
    for (int r = 1; r <= r_max; ++r) rep.rows[r - 1] = run(r);
  } else {
    std::vector<std::future<ProtocolRow>> futs;
    futs.reserve(r_max);
    for (int r = 1; r <= r_max; ++r) {
      futs.push_back(std::async(std::launch::async, run, r));
    }
    for (int r = 1; r <= r_max; ++r) rep.rows[r - 1] = futs[r - 1].get();
  }

  std::vector<double> ranks, deltas, Ms;
  for (const auto& row : rep.rows) {
    if (!row.sim_ok) continue;
    ranks.push_back(row.rank);
    deltas.push_back(row.delta);
    Ms.push_back(row.M);
  }
  if (deltas.empty()) {
    rep.verdict = "no flexes simulated";
    return rep;
  }
  rep.c = *std::min_element(deltas.begin(), deltas.end());
  rep.M = *std::max_element(Ms.begin(), Ms.end());
  rep.delta_slope = loglog_slope_last_half(ranks, deltas);
  const double m_min = *std::min_element(Ms.begin(), Ms.end());
  const bool m_bounded = m_min <= 0 ? false : rep.M / m_min < 2.0;

  if (rep.c >= opt.c_threshold &&
      std::abs(rep.delta_slope) < opt.slope_threshold && m_bounded) {
    rep.satisfied = true;
    rep.verdict = "theorem-4.2 hypotheses satisfied at depth " +
                  std::to_string(r_max) + " with c = " + std::to_string(rep.c) +
                  ", M = " + std::to_string(rep.M);
  } else if (rep.c < opt.c_threshold || rep.delta_slope < -opt.slope_threshold) {
    rep.verdict = "hypotheses fail: Delta_r -> 0";
  } else {
    rep.verdict = "hypotheses fail: M_r unbounded";
  }
  return rep;
}

}  // namespace rigor
