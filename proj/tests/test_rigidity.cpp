#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rigor/generators.hpp"
#include "rigor/rigidity.hpp"

using namespace rigor;

namespace {

Framework unit_square() {
  return Framework::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                          {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Framework right_triangle() {
  return Framework::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
}

}  // namespace

TEST_CASE("rigidity matrix entry rule") {
  SUBCASE("single bar row is [-1, 0, 1, 0]") {
    const Framework f = Framework::build({{0, 0}, {1, 0}}, {{0, 1}});
    const Eigen::MatrixXd R = rigidity_matrix(f).dense();
    REQUIRE(R.rows() == 1);
    CHECK(R(0, 0) == -1.0);
    CHECK(R(0, 1) == 0.0);
    CHECK(R(0, 2) == 1.0);
    CHECK(R(0, 3) == 0.0);
  }
  SUBCASE("row norm is sqrt(2) d_e; 4 nonzeros per row") {
    const Framework f = winerack(2);
    const Eigen::MatrixXd R = rigidity_matrix(f).dense();
    for (int e = 0; e < f.edge_count(); ++e) {
      CHECK(R.row(e).norm() ==
            doctest::Approx(std::sqrt(2.0) * f.edge_length(e)));
      int nz = 0;
      for (int c = 0; c < R.cols(); ++c) nz += R(e, c) != 0.0;
      CHECK(nz == 4);
    }
  }
  SUBCASE("translation field annihilated exactly") {
    const Framework f = winerack(3);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * f.vertex_count());
    for (int v = 0; v < f.vertex_count(); ++v) u(2 * v) = 1.0;
    const Eigen::VectorXd Ru = rigidity_matrix(f).dense() * u;
    CHECK(Ru.lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("trivial flex basis annihilation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-10, 10);
  std::uniform_int_distribution<int> nv(3, 30);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = nv(rng);
    std::vector<Vec2> pos;
    for (int v = 0; v < n; ++v) pos.push_back({coord(rng), coord(rng)});
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v - 1, v});  // path
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int extra = 0; extra < n / 2; ++extra) {
      const int a = pick(rng), b = pick(rng);
      if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
    }
    Framework f = [&] {
      try {
        return Framework::build(pos, edges);
      } catch (const ValidationError&) {
        // duplicate random extras are fine to drop
        std::vector<std::pair<int, int>> base;
        for (int v = 1; v < n; ++v) base.push_back({v - 1, v});
        return Framework::build(pos, base);
      }
    }();
    const Eigen::MatrixXd T = trivial_flex_basis(f);
    const Eigen::MatrixXd R = rigidity_matrix(f).dense();
    for (int k = 0; k < 3; ++k) {
      CHECK((R * T.col(k)).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("flex space dimensions") {
  SUBCASE("equilateral triangle: nullity 3, rigid") {
    const Framework f = Framework::build(
        {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}, {{0, 1}, {1, 2}, {2, 0}});
    const FlexSpaceReport rep = flex_space(f);
    CHECK(rep.nullity == 3);
    CHECK(rep.proper_dim == 0);
  }
  SUBCASE("unit square: nullity 4, one proper flex") {
    const FlexSpaceReport rep = flex_space(unit_square());
    CHECK(rep.nullity == 4);
    CHECK(rep.proper_dim == 1);
  }
  SUBCASE("square with diagonal: rigid") {
    const Framework f =
        Framework::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    CHECK(flex_space(f).proper_dim == 0);
  }
  SUBCASE("hinge (path of 3): one proper flex") {
    const Framework f =
        Framework::build({{0, 0}, {1, 0}, {1.5, 1}}, {{0, 1}, {1, 2}});
    CHECK(flex_space(f).proper_dim == 1);
  }
  SUBCASE("rank + nullity = 2V") {
    for (const Framework& f :
         {unit_square(), right_triangle(), winerack(3), strip_tower(4, 1.0)}) {
      const FlexSpaceReport rep = flex_space(f);
      int rank = 0;
      const double smax = rep.sigma_max > 0 ? rep.sigma_max : 1.0;
      for (double s : rep.singular_values) rank += s >= rep.tol * smax;
      CHECK(rank + rep.nullity == 2 * f.vertex_count());
      CHECK(rep.nullity >= 3);
    }
  }
  SUBCASE("basis vectors satisfy |R u| <= tol") {
    const FlexSpaceReport rep = flex_space(unit_square());
    const Eigen::MatrixXd R = rigidity_matrix(unit_square()).dense();
    for (int k = 0; k < rep.nullity; ++k) {
      CHECK((R * rep.basis.col(k)).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
  }
}

TEST_CASE("exact rational elimination oracle agrees with SVD nullity") {
  struct Case {
    std::vector<std::pair<std::int64_t, std::int64_t>> coords;
    std::vector<std::pair<int, int>> edges;
  };
  const std::vector<Case> cases = {
      // right triangle
      {{{0, 1}, {0, 1}, {1, 1}, {0, 1}, {0, 1}, {1, 1}},
       {{0, 1}, {1, 2}, {2, 0}}},
      // unit square 4-cycle
      {{{0, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}, {1, 1}, {0, 1}, {1, 1}},
       {{0, 1}, {1, 2}, {2, 3}, {3, 0}}},
      // square + diagonal
      {{{0, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}, {1, 1}, {0, 1}, {1, 1}},
       {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}},
      // asymmetric 5-vertex frame with rational coordinates
      {{{0, 1}, {0, 1}, {2, 1}, {0, 1}, {2, 1}, {3, 2}, {1, 2}, {5, 2},
        {-1, 3}, {1, 1}},
       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}}},
  };
  for (const auto& c : cases) {
    std::vector<Vec2> pos;
    for (std::size_t k = 0; k + 1 < c.coords.size(); k += 2) {
      pos.push_back({static_cast<double>(c.coords[k].first) / c.coords[k].second,
                     static_cast<double>(c.coords[k + 1].first) /
                         c.coords[k + 1].second});
    }
    const Framework f = Framework::build(pos, c.edges);
    const int exact_rank = oracles::exact_rigidity_rank(c.coords, c.edges);
    const FlexSpaceReport rep = flex_space(f);
    CHECK(2 * f.vertex_count() - exact_rank == rep.nullity);
  }
}

TEST_CASE("proper flex extraction") {
  SUBCASE("square: unit, orthogonal to trivial, in the null space") {
    const Framework f = unit_square();
    const auto u = proper_flex(f);
    REQUIRE(u.has_value());
    CHECK(u->norm() == doctest::Approx(1.0));
    const Eigen::MatrixXd R = rigidity_matrix(f).dense();
    CHECK((R * *u).lpNorm<Eigen::Infinity>() <= 1e-9);
    const Eigen::MatrixXd T = trivial_flex_basis(f);
    CHECK((T.transpose() * *u).lpNorm<Eigen::Infinity>() <= 1e-9);
  }
  SUBCASE("triangle and braced square have none") {
    CHECK_FALSE(proper_flex(right_triangle()).has_value());
    const Framework braced =
        Framework::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    CHECK_FALSE(proper_flex(braced).has_value());
  }
  SUBCASE("collinear framework flagged degenerate") {
    const Framework f = harmonic_chain(4, {1, -1, 1, -1});
    const FlexSpaceReport rep = flex_space(f);
    CHECK(rep.degenerate);
    // translations + rotation still rank 3 as vectors
    const Eigen::MatrixXd T = trivial_flex_basis(f);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
    CHECK(svd.singularValues()(2) > 1e-9);
  }
}

TEST_CASE("approximate flexibility margin") {
  SUBCASE("unit square margin is numerically zero with exact witness") {
    const MarginReport rep = approx_flex_margin(unit_square());
    CHECK(rep.from_null_space);
    CHECK(rep.margin <= 1e-12);
  }
  SUBCASE("triangle margin bounded away from zero") {
    const MarginReport rep = approx_flex_margin(right_triangle());
    CHECK_FALSE(rep.from_null_space);
    CHECK(rep.margin > 0.05);  // regression baseline; upper-bound estimate
  }
  SUBCASE("witness scale invariance") {
    const Framework f = strip_tower(4, 1.0);
    const MarginReport rep = approx_flex_margin(f);
    auto ratio = [&](const Eigen::VectorXd& u) {
      double worst = 0;
      for (int e = 0; e < f.edge_count(); ++e) {
        const auto& ed = f.edges()[e];
        const Vec2 ui{u(2 * ed.i), u(2 * ed.i + 1)};
        const Vec2 uj{u(2 * ed.j), u(2 * ed.j + 1)};
        const Vec2 dp = f.vertex(ed.i) - f.vertex(ed.j);
        const double den = (ui.norm() + uj.norm()) * dp.norm();
        if (den > 0) worst = std::max(worst, std::abs((ui - uj).dot(dp)) / den);
      }
      return worst;
    };
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> lam(0.1, 10.0);
    for (int k = 0; k < 5; ++k) {
      const double l = lam(rng);
      CHECK(ratio(rep.witness * l) == doctest::Approx(ratio(rep.witness)));
    }
  }
  SUBCASE("strip tower margins decrease with length") {
    double prev = 1e300;
    for (int n : {5, 10, 20}) {
      const double m = approx_flex_margin(strip_tower(n, 1.0)).margin;
      CHECK(m < prev);
      prev = m;
    }
  }
}

TEST_CASE("strip tower smallest nontrivial singular value decays") {
  const double s10 = flex_space(strip_tower(10, 1.0)).smallest_nontrivial_sv;
  const double s40 = flex_space(strip_tower(40, 1.0)).smallest_nontrivial_sv;
  CHECK(s40 < s10);
  CHECK(flex_space(strip_tower(1, 1.0)).nullity == 3);
  for (int n : {1, 5, 10, 20, 40}) {
    CHECK(flex_space(strip_tower(n, 1.0)).proper_dim == 0);
  }
}

TEST_CASE("flex growth profiles") {
  SUBCASE("winerack squeeze magnitudes bounded across ranks") {
    const FlexGrowthProfile prof = flex_growth_profile(winerack_family(), 12);
    const auto& row = prof.rows.back();
    REQUIRE(row.has_flex);
    CHECK(row.proper_dim == 1);
    // base-normalized sup-norm stays flat as the chain grows
    CHECK(prof.sup_by_rank.trend == TrendKind::Bounded);
    CHECK(std::abs(prof.sup_by_rank.slope_last_half) < 0.1);
  }
  SUBCASE("outward cobweb flex decays toward the outer squares") {
    const FlexGrowthProfile prof =
        flex_growth_profile(dyadic_cobweb_family(CobwebDirection::Outward), 8);
    const auto& row = prof.rows.back();
    REQUIRE(row.has_flex);
    CHECK(row.slope <= -0.5);
    CHECK(row.trend == TrendKind::Decaying);
  }
  SUBCASE("inward cobweb: every truncation has a proper flex") {
    const FlexGrowthProfile prof =
        flex_growth_profile(dyadic_cobweb_family(CobwebDirection::Inward), 8);
    for (const auto& row : prof.rows) {
      CHECK(row.proper_dim >= 1);
    }
  }
}
