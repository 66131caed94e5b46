#include <cmath>

#include "doctest.h"
#include "rigor/family.hpp"
#include "rigor/generators.hpp"

using namespace rigor;

TEST_CASE("harmonic chain coordinates") {
  SUBCASE("paper signs (+,-,+)") {
    const Framework f = harmonic_chain(3, {1, -1, 1});
    CHECK(f.vertex(0).x == doctest::Approx(0.0));
    CHECK(f.vertex(1).x == doctest::Approx(1.0));
    CHECK(f.vertex(2).x == doctest::Approx(0.5));
    CHECK(f.vertex(3).x == doctest::Approx(5.0 / 6));
  }
  SUBCASE("all plus") {
    const Framework f = harmonic_chain(3, {1, 1, 1});
    CHECK(f.vertex(2).x == doctest::Approx(1.5));
    CHECK(f.vertex(3).x == doctest::Approx(11.0 / 6));
  }
  SUBCASE("edge lengths 1/k regardless of signs") {
    const Framework f = harmonic_chain(3, {-1, 1, -1});
    CHECK(f.edge_length(0) == doctest::Approx(1.0));
    CHECK(f.edge_length(1) == doctest::Approx(0.5));
    CHECK(f.edge_length(2) == doctest::Approx(1.0 / 3));
  }
  SUBCASE("zero sign entry rejected") {
    CHECK_THROWS_AS(harmonic_chain(2, {1, 0}), ValidationError);
  }
}

TEST_CASE("diminishing rectangles") {
  const Framework f = diminishing_rectangles(2);
  REQUIRE(f.vertex_count() == 5);
  CHECK(dist(f.vertex(0), {1.0, -0.25}) < 1e-15);
  CHECK(dist(f.vertex(1), {1.0, 0.0}) < 1e-15);
  CHECK(dist(f.vertex(2), {1.0, 1.0}) < 1e-15);
  CHECK(dist(f.vertex(3), {0.5, 0.0}) < 1e-15);
  CHECK(dist(f.vertex(4), {0.5, 0.5}) < 1e-15);
  // verticals, step-2 chain, rigidifiers
  CHECK(f.has_edge(1, 2));
  CHECK(f.has_edge(3, 4));
  CHECK(f.has_edge(1, 3));
  CHECK(f.has_edge(2, 4));
  CHECK(f.has_edge(0, 1));
  CHECK(f.has_edge(0, 3));
  CHECK(f.edge_count() == 6);

  SUBCASE("vertical edge lengths 1/k") {
    const Framework g = diminishing_rectangles(6);
    for (int k = 1; k <= 6; ++k) {
      const auto idx = g.edge_index(2 * k - 1, 2 * k);
      REQUIRE(idx.has_value());
      CHECK(g.edge_length(*idx) == doctest::Approx(1.0 / k).epsilon(1e-15));
    }
  }
}

TEST_CASE("dyadic cobweb") {
  SUBCASE("single square") {
    const Framework f = dyadic_cobweb(1, CobwebDirection::Inward);
    REQUIRE(f.vertex_count() == 4);
    CHECK(dist(f.vertex(0), {1, 1}) < 1e-15);
    CHECK(dist(f.vertex(1), {1, -1}) < 1e-15);
    CHECK(dist(f.vertex(2), {-1, -1}) < 1e-15);
    CHECK(dist(f.vertex(3), {-1, 1}) < 1e-15);
    CHECK(f.edge_count() == 4);
  }
  SUBCASE("two levels inward: 8 vertices, 8 + 4 edges") {
    const Framework f = dyadic_cobweb(2, CobwebDirection::Inward);
    CHECK(f.vertex_count() == 8);
    CHECK(f.edge_count() == 12);
    CHECK(dist(f.vertex(4), {0.5, 0.5}) < 1e-15);
  }
  SUBCASE("two levels outward reaches (2,2)") {
    const Framework f = dyadic_cobweb(2, CobwebDirection::Outward);
    CHECK(dist(f.vertex(4), {2, 2}) < 1e-15);
  }
  SUBCASE("two-way covers both scales") {
    const Framework f = dyadic_cobweb(3, CobwebDirection::TwoWay);
    CHECK(f.vertex_count() == 4 * 5);  // scales 1, 2, 1/2, 4, 1/4
    double maxn = 0, minn = 1e9;
    for (const Vec2& p : f.vertices()) {
      maxn = std::max(maxn, p.norm());
      minn = std::min(minn, p.norm());
    }
    CHECK(maxn == doctest::Approx(4 * std::sqrt(2.0)));
    CHECK(minn == doctest::Approx(std::sqrt(2.0) / 4));
  }
}

TEST_CASE("winerack structure") {
  SUBCASE("single bay: 4 equal arms + 2 extraneous + 6 gadget edges") {
    const Framework f = winerack(1);
    CHECK(f.vertex_count() == 7);
    CHECK(f.edge_count() == 10);
    // arm edges (joints to center) all equal
    const double arm = std::sqrt(2.0) / 2;
    int arm_edges = 0;
    for (int e = 0; e < f.edge_count(); ++e) {
      if (std::abs(f.edge_length(e) - arm) < 1e-12) ++arm_edges;
    }
    CHECK(arm_edges >= 4);
  }
  SUBCASE("width of closed position is bays x unit width") {
    const Framework f1 = winerack(1);
    const Framework f5 = winerack(5);
    auto width = [](const Framework& f) {
      double lo = 1e300, hi = -1e300;
      for (const Vec2& p : f.vertices()) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
      }
      return hi - lo;
    };
    CHECK(width(f5) == doctest::Approx(5 * width(f1)));
  }
}

TEST_CASE("cantor tree") {
  CHECK(cantor_tree(1).vertex_count() == 7);
  SUBCASE("unit count 1 + 2 + 4 at depth 3") {
    // each unit adds 5 vertices after its input column; level l >= 1 units
    // add one extra input-top vertex each
    const Framework f3 = cantor_tree(3);
    // depth 1: 7; depth 2: 7 + 2*6; depth 3: + 4*6
    CHECK(f3.vertex_count() == 7 + 2 * 6 + 4 * 6);
  }
  SUBCASE("total edge length bounded along the chain") {
    const auto fam = cantor_tree_family();
    double prev = 0;
    std::vector<double> totals;
    for (int r = 1; r <= 6; ++r) {
      const Framework f = fam.truncation(r);
      double total = 0;
      for (double d : f.edge_lengths()) total += d;
      CHECK(total > prev);  // increasing
      totals.push_back(total);
      prev = total;
    }
    // geometric envelope: total(r) <= total(1) * sum (2/3)^k < 3 * total(1)
    const double unit = totals[0];
    for (double t : totals) CHECK(t <= 3.0 * unit + 1e-9);
    // increments shrink by about 2/3 per level
    const double inc_last = totals[5] - totals[4];
    const double inc_first = totals[1] - totals[0];
    CHECK(inc_last < inc_first * std::pow(2.0 / 3.0, 3.5));
  }
}

TEST_CASE("strip tower is isostatic-sized") {
  const Framework f1 = strip_tower(1, 1.0);
  CHECK(f1.vertex_count() == 4);
  CHECK(f1.edge_count() == 5);
  const Framework f7 = strip_tower(7, 1.0);
  CHECK(2 * f7.vertex_count() - 3 == f7.edge_count());
}

TEST_CASE("periodic lattice merging") {
  const Framework cell = unit_square_cell_with_diagonals();
  SUBCASE("2x2 grid merges to 9 vertices") {
    const Framework f = periodic_lattice(cell, 2, 2, {1, 0}, {0, 1});
    CHECK(f.vertex_count() == 9);
  }
  SUBCASE("1x1 is the cell itself") {
    const Framework f = periodic_lattice(cell, 1, 1, {1, 0}, {0, 1});
    CHECK(f.vertex_count() == cell.vertex_count());
    CHECK(f.edge_count() == cell.edge_count());
  }
  SUBCASE("kagome 3x3 classifies regular + locally finite") {
    const auto fam =
        periodic_lattice_family(kagome_cell(), {1, 0}, {0.5, std::sqrt(3.0) / 2},
                                "kagome");
    const Classification c = classify(fam, 6);
    CHECK(c.regular == Flag::True);
    CHECK(c.locally_finite == Flag::True);
  }
}

TEST_CASE("families: nesting invariant and classification") {
  const int depth = 5;
  for (const FrameworkFamily& fam :
       {harmonic_chain_family(), diminishing_rectangles_family(),
        dyadic_cobweb_family(CobwebDirection::Inward),
        dyadic_cobweb_family(CobwebDirection::Outward),
        dyadic_cobweb_family(CobwebDirection::TwoWay), winerack_family(),
        cantor_tree_family(), strip_tower_family(1.0)}) {
    CAPTURE(fam.name);
    CHECK(check_nesting(fam, depth).empty());
  }

  SUBCASE("harmonic chain, depth 20: edge-vanishing, bounded") {
    const Classification c = classify(harmonic_chain_family(), 20);
    CHECK(c.edge_vanishing == Flag::True);
    CHECK(c.bounded == Flag::True);
    CHECK(c.min_edge.values.back() == doctest::Approx(1.0 / 20));
  }
  SUBCASE("winerack, depth 10: regular, locally finite, unbounded") {
    const Classification c = classify(winerack_family(), 10);
    CHECK(c.regular == Flag::True);
    CHECK(c.locally_finite == Flag::True);
    CHECK(c.bounded == Flag::False);
  }
  SUBCASE("diminishing rectangles: vanishing, not locally finite") {
    const Classification c = classify(diminishing_rectangles_family(), 10);
    CHECK(c.edge_vanishing == Flag::True);
    CHECK(c.locally_finite == Flag::False);
    // min edge decays like r^-2 (x-axis chain gaps), vertical edges like 1/r
    CHECK(c.min_edge.slope_last_half < -1.5);
  }
  SUBCASE("cobweb inward min edge decays like 2^-r") {
    const Classification c =
        classify(dyadic_cobweb_family(CobwebDirection::Inward), 8);
    CHECK(c.edge_vanishing == Flag::True);
    // radial struts enter at rank 2; from there the minimum halves per rank
    const auto& v = c.min_edge.values;
    for (std::size_t k = 2; k < v.size(); ++k) {
      CHECK(v[k] == doctest::Approx(v[k - 1] / 2));
    }
  }
}
