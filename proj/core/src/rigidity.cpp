#include "rigor/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace rigor {

RigidityMatrix rigidity_matrix(const Framework& f) {
  RigidityMatrix R;
  R.rows = f.edge_count();
  R.cols = 2 * f.vertex_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * f.edge_count());
  for (int e = 0; e < f.edge_count(); ++e) {
    const auto& ed = f.edges()[e];
    const Vec2 d = f.vertex(ed.i) - f.vertex(ed.j);
    trip.emplace_back(e, 2 * ed.i, d.x);
    trip.emplace_back(e, 2 * ed.i + 1, d.y);
    trip.emplace_back(e, 2 * ed.j, -d.x);
    trip.emplace_back(e, 2 * ed.j + 1, -d.y);
  }
  R.mat.resize(R.rows, R.cols);
  R.mat.setFromTriplets(trip.begin(), trip.end());
  return R;
}

bool degenerate_geometry(const Framework& f, double tol) {
  // All points within tol of a common line?
  const auto& P = f.vertices();
  const int n = f.vertex_count();
  if (n < 3) return true;
  Vec2 c{0, 0};
  for (const Vec2& p : P) c += p;
  c = c / n;
  // principal direction via 2x2 covariance
  double sxx = 0, sxy = 0, syy = 0;
  for (const Vec2& p : P) {
    const Vec2 q = p - c;
    sxx += q.x * q.x;
    sxy += q.x * q.y;
    syy += q.y * q.y;
  }
  const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  const double lmin = tr / 2 - disc;  // smaller covariance eigenvalue
  return lmin <= tol * tol * n;
}

Eigen::MatrixXd trivial_flex_basis(const Framework& f) {
  const int n = f.vertex_count();
  bool distinct = false;
  for (int v = 1; v < n && !distinct; ++v) {
    distinct = dist(f.vertex(v), f.vertex(0)) > 0;
  }
  if (n < 2 || !distinct) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "trivial basis needs >= 2 distinct points");
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(2 * n, 3);
  Vec2 c{0, 0};
  for (const Vec2& p : f.vertices()) c += p;
  c = c / n;
  for (int v = 0; v < n; ++v) {
    T(2 * v, 0) = 1.0;
    T(2 * v + 1, 1) = 1.0;
    const Vec2 r = (f.vertex(v) - c).rot90();
    T(2 * v, 2) = r.x;
    T(2 * v + 1, 2) = r.y;
  }
  // Translations are orthogonal to each other and to the centroid rotation
  // field; normalizing columns suffices.
  for (int k = 0; k < 3; ++k) T.col(k).normalize();
  return T;
}

FlexSpaceReport flex_space(const Framework& f, double tol) {
  const int n2 = 2 * f.vertex_count();
  if (n2 > kDenseSvdLimit) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "2|V| exceeds dense SVD limit " +
                              std::to_string(kDenseSvdLimit) +
                              "; reduce the truncation rank");
  }
  if (f.edge_count() < 1) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "flex space needs at least one edge");
  }
  FlexSpaceReport rep;
  rep.tol = tol;
  rep.degenerate = degenerate_geometry(f);

  const Eigen::MatrixXd R = rigidity_matrix(f).dense();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  std::sort(rep.singular_values.begin(), rep.singular_values.end());
  rep.sigma_max = sv.size() ? sv(0) : 0.0;
  const double smax = rep.sigma_max > 0 ? rep.sigma_max : 1.0;

  int rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) >= tol * smax) ++rank;
  }
  rep.nullity = n2 - rank;
  rep.basis = svd.matrixV().rightCols(rep.nullity);
  rep.smallest_nontrivial_sv = 0.0;
  for (double s : rep.singular_values) {
    if (s >= tol * smax) {
      rep.smallest_nontrivial_sv = s;
      break;
    }
  }

  const Eigen::MatrixXd T = trivial_flex_basis(f);
  rep.trivial_dim = 3;
  // Project the trivial span out of the null basis and re-orthonormalize.
  Eigen::MatrixXd P = rep.basis - T * (T.transpose() * rep.basis);
  Eigen::JacobiSVD<Eigen::MatrixXd> psvd(P, Eigen::ComputeThinU);
  int pd = 0;
  for (int k = 0; k < psvd.singularValues().size(); ++k) {
    if (psvd.singularValues()(k) > 1e-9) ++pd;
  }
  rep.proper_dim = pd;
  rep.proper_basis = psvd.matrixU().leftCols(pd);
  return rep;
}

std::optional<Eigen::VectorXd> proper_flex(const Framework& f, double tol) {
  const FlexSpaceReport rep = flex_space(f, tol);
  if (rep.proper_dim < 1) return std::nullopt;
  int best = -1, best_first = -1;
  double best_val = -1;
  for (int k = 0; k < rep.proper_dim; ++k) {
    int first = -1;
    for (int i = 0; i < rep.proper_basis.rows(); ++i) {
      if (std::abs(rep.proper_basis(i, k)) > 1e-12) {
        first = i;
        break;
      }
    }
    if (first < 0) continue;
    const double val = std::abs(rep.proper_basis(first, k));
    if (val > best_val || (val == best_val && first < best_first)) {
      best_val = val;
      best_first = first;
      best = k;
    }
  }
  if (best < 0) return std::nullopt;
  Eigen::VectorXd u = rep.proper_basis.col(best);
  if (u(best_first) < 0) u = -u;
  return u;
}

namespace {

double edge_ratio_max(const Framework& f, const Eigen::VectorXd& u,
                      int* arg_edge = nullptr) {
  double worst = 0;
  for (int e = 0; e < f.edge_count(); ++e) {
    const auto& ed = f.edges()[e];
    const Vec2 ui{u(2 * ed.i), u(2 * ed.i + 1)};
    const Vec2 uj{u(2 * ed.j), u(2 * ed.j + 1)};
    const Vec2 dp = f.vertex(ed.i) - f.vertex(ed.j);
    const double num = std::abs((ui - uj).dot(dp));
    const double den = (ui.norm() + uj.norm()) * dp.norm();
    double r;
    if (den <= 0) {
      r = num > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
      r = num / den;
    }
    if (r > worst) {
      worst = r;
      if (arg_edge) *arg_edge = e;
    }
  }
  return worst;
}

}  // namespace

MarginReport approx_flex_margin(const Framework& f, int candidates,
                                int refine_iters, double tol) {
  if (f.edge_count() < 1) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "margin needs at least one edge");
  }
  const FlexSpaceReport rep = flex_space(f, tol);
  MarginReport out;
  if (rep.proper_dim >= 1) {
    out.witness = *proper_flex(f, tol);
    out.margin = edge_ratio_max(f, out.witness);
    out.from_null_space = true;
    return out;
  }

  const Eigen::MatrixXd T = trivial_flex_basis(f);
  const Eigen::MatrixXd R = rigidity_matrix(f).dense();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
  const Eigen::MatrixXd& V = svd.matrixV();
  const int n2 = static_cast<int>(V.rows());

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_u;
  // Right singular vectors of the smallest singular values, skipping the
  // trivial null directions (the last 3 columns on a rigid framework).
  const int avail = n2 - rep.nullity;
  for (int k = 0; k < std::min(candidates, avail); ++k) {
    Eigen::VectorXd u = V.col(avail - 1 - k);
    u -= T * (T.transpose() * u);
    const double nu = u.norm();
    if (nu < 1e-12) continue;
    u /= nu;
    const double r = edge_ratio_max(f, u);
    if (r < best) {
      best = r;
      best_u = u;
    }
  }
  if (best_u.size() == 0) {
    best_u = Eigen::VectorXd::Zero(n2);
    best = std::numeric_limits<double>::infinity();
  }

  // Projected subgradient descent on the max edge ratio with step halving.
  Eigen::VectorXd u = best_u;
  double step = 0.1;
  for (int it = 0; it < refine_iters && step > 1e-14; ++it) {
    int e = 0;
    const double cur = edge_ratio_max(f, u, &e);
    const auto& ed = f.edges()[e];
    const Vec2 ui{u(2 * ed.i), u(2 * ed.i + 1)};
    const Vec2 uj{u(2 * ed.j), u(2 * ed.j + 1)};
    const Vec2 dp = f.vertex(ed.i) - f.vertex(ed.j);
    const double s = (ui - uj).dot(dp);
    const double num = std::abs(s);
    const double den = (ui.norm() + uj.norm()) * dp.norm();
    if (den <= 0) break;
    // d(num/den)/du via quotient rule at the active edge
    Eigen::VectorXd g = Eigen::VectorXd::Zero(u.size());
    const double sgn = s >= 0 ? 1.0 : -1.0;
    g(2 * ed.i) += sgn * dp.x / den;
    g(2 * ed.i + 1) += sgn * dp.y / den;
    g(2 * ed.j) -= sgn * dp.x / den;
    g(2 * ed.j + 1) -= sgn * dp.y / den;
    const double dfac = num / (den * den) * dp.norm();
    if (ui.norm() > 1e-300) {
      g(2 * ed.i) -= dfac * ui.x / ui.norm();
      g(2 * ed.i + 1) -= dfac * ui.y / ui.norm();
    }
    if (uj.norm() > 1e-300) {
      g(2 * ed.j) -= dfac * uj.x / uj.norm();
      g(2 * ed.j + 1) -= dfac * uj.y / uj.norm();
    }
    Eigen::VectorXd cand = u - step * g;
    cand -= T * (T.transpose() * cand);
    if (cand.norm() < 1e-12) {
      step /= 2;
      continue;
    }
    cand /= cand.norm();
    const double r = edge_ratio_max(f, cand);
    if (r < cur) {
      u = cand;
      if (r < best) {
        best = r;
        best_u = u;
      }
    } else {
      step /= 2;
    }
  }
  out.margin = best;
  out.witness = best_u;
  out.from_null_space = false;
  return out;
}

namespace {

FlexProfileRow profile_rank(const FrameworkFamily& fam, int r, double tol) {
  FlexProfileRow row;
  row.rank = r;
  const Framework f = fam.truncation(r);
  const FlexSpaceReport rep = flex_space(f, tol);
  row.proper_dim = rep.proper_dim;
  if (rep.proper_dim < 1) return row;
  row.has_flex = true;

  const int n = f.vertex_count();
  // Base cell = group 0 vertices (fall back to the whole vertex set).
  std::vector<char> in_base(n, 0);
  bool any = false;
  int max_group = 0;
  for (int v = 0; v < n; ++v) {
    const int g = f.group_of(v);
    max_group = std::max(max_group, g);
    if (g == 0) {
      in_base[v] = 1;
      any = true;
    }
  }
  if (!any) in_base.assign(n, 1);

  const Eigen::MatrixXd& P = rep.proper_basis;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(P.cols(), P.cols());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(P.cols(), P.cols());
  for (int v = 0; v < n; ++v) {
    const auto rows = P.middleRows(2 * v, 2);
    if (in_base[v]) {
      B += rows.transpose() * rows;
    } else {
      A += rows.transpose() * rows;
    }
  }
  // Tail-minimal flex: smallest generalized eigenvalue of (A, B).
  Eigen::VectorXd c;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
      A, B + 1e-13 * Eigen::MatrixXd::Identity(B.rows(), B.cols()));
  if (ges.info() == Eigen::Success) {
    c = ges.eigenvectors().col(0);
  } else {
    c = Eigen::VectorXd::Zero(P.cols());
    c(0) = 1.0;
  }
  Eigen::VectorXd u = P * c;
  double base_norm = 0;
  for (int v = 0; v < n; ++v) {
    if (in_base[v]) base_norm += u.segment(2 * v, 2).squaredNorm();
  }
  if (base_norm > 1e-300) u /= std::sqrt(base_norm);

  row.per_vertex.resize(n);
  for (int v = 0; v < n; ++v) row.per_vertex[v] = u.segment(2 * v, 2).norm();
  row.per_group.assign(max_group + 1, 0.0);
  for (int v = 0; v < n; ++v) {
    const int g = std::max(0, f.group_of(v));
    row.per_group[g] = std::max(row.per_group[g], row.per_vertex[v]);
  }
  std::vector<double> idx(row.per_group.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<double>(k + 1);
  row.slope = loglog_slope(idx, row.per_group);
  row.trend = classify_trend(row.slope);
  return row;
}

}  // namespace

FlexGrowthProfile flex_growth_profile(const FrameworkFamily& fam, int r_max,
                                      double tol, int threads) {
  if (r_max < 2) {
    throw ValidationError(ValidationError::Kind::BadInput, "r_max >= 2");
  }
  FlexGrowthProfile out;
  out.rows.resize(r_max);
  if (threads <= 1) {
    for (int r = 1; r <= r_max; ++r) out.rows[r - 1] = profile_rank(fam, r, tol);
  } else {
    std::vector<std::future<FlexProfileRow>> futs;
    futs.reserve(r_max);
    for (int r = 1; r <= r_max; ++r) {
      futs.push_back(std::async(std::launch::async, [&fam, r, tol] {
        return profile_rank(fam, r, tol);
      }));
    }
    for (int r = 1; r <= r_max; ++r) out.rows[r - 1] = futs[r - 1].get();
  }
  for (const auto& row : out.rows) {
    if (!row.has_flex) continue;
    double sup = 0;
    for (double m : row.per_vertex) sup = std::max(sup, m);
    out.sup_by_rank.ranks.push_back(row.rank);
    out.sup_by_rank.values.push_back(sup);
  }
  out.sup_by_rank.slope_last_half =
      loglog_slope_last_half(out.sup_by_rank.ranks, out.sup_by_rank.values);
  out.sup_by_rank.trend = classify_trend(out.sup_by_rank.slope_last_half);
  return out;
}

}  // namespace rigor
