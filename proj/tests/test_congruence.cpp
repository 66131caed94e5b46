#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rigor/congruence.hpp"
#include "rigor/generators.hpp"

using namespace rigor;

namespace {

Framework unit_square() {
  return Framework::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                          {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Framework rhombus(double angle) {
  const Vec2 u{1, 0};
  const Vec2 v{std::cos(angle), std::sin(angle)};
  return Framework::build({{0, 0}, u, u + v, v}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

}  // namespace

TEST_CASE("equivalence is edge-length agreement") {
  const Framework sq = unit_square();
  CHECK(are_equivalent(sq, sq));
  CHECK(are_equivalent(sq, rhombus(std::numbers::pi / 3)));

  const Framework c1 = harmonic_chain(3, {1, -1, 1});
  const Framework c2 = harmonic_chain(3, {1, 1, 1});
  CHECK(are_equivalent(c1, c2));  // same edge lengths, different positions

  const Framework tri = Framework::build({{0, 0}, {1, 0}, {0, 1}},
                                         {{0, 1}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS((void)are_equivalent(sq, tri), ValidationError);
}

TEST_CASE("congruence detects isometry and only isometry") {
  const Framework sq = unit_square();
  SUBCASE("rotation + translation") {
    const double c = std::cos(std::numbers::pi / 6), s = std::sin(std::numbers::pi / 6);
    std::vector<Vec2> pos;
    for (const Vec2& p : sq.vertices()) {
      pos.push_back({c * p.x - s * p.y + 2.5, s * p.x + c * p.y - 7});
    }
    CHECK(are_congruent(sq, sq.with_positions(pos)));
  }
  SUBCASE("reflection branch") {
    std::vector<Vec2> pos;
    for (const Vec2& p : sq.vertices()) pos.push_back({-p.x, p.y});
    CHECK(are_congruent(sq, sq.with_positions(pos)));
  }
  SUBCASE("square vs rhombus differ") {
    CHECK_FALSE(are_congruent(sq, rhombus(std::numbers::pi / 3)));
  }
  SUBCASE("harmonic chains: flipped last sign is equivalent, not congruent") {
    const Framework a = harmonic_chain(4, {1, 1, 1, 1});
    const Framework b = harmonic_chain(4, {1, 1, 1, -1});
    CHECK(are_equivalent(a, b));
    CHECK_FALSE(are_congruent(a, b));
    // endpoints differ by 2 * (1/4)
    CHECK(a.vertex(4).x - b.vertex(4).x == doctest::Approx(0.5));
  }
}

TEST_CASE("congruence is an equivalence relation on a finite sample") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> shift(-5, 5);
  const Framework base = rhombus(1.1);
  std::vector<Framework> sample;
  for (int k = 0; k < 4; ++k) {
    const double c = std::cos(angle(rng)), s = std::sin(angle(rng));
    const Vec2 t{shift(rng), shift(rng)};
    std::vector<Vec2> pos;
    for (const Vec2& p : base.vertices()) {
      pos.push_back({c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y});
    }
    sample.push_back(base.with_positions(pos));
  }
  sample.push_back(rhombus(0.9));  // a non-congruent member
  const double tol = 1e-9;
  for (const auto& f : sample) CHECK(are_congruent(f, f, tol));
  for (std::size_t a = 0; a < sample.size(); ++a) {
    for (std::size_t b = 0; b < sample.size(); ++b) {
      CHECK(are_congruent(sample[a], sample[b], tol) ==
            are_congruent(sample[b], sample[a], tol));
      for (std::size_t c = 0; c < sample.size(); ++c) {
        if (are_congruent(sample[a], sample[b], tol) &&
            are_congruent(sample[b], sample[c], tol)) {
          CHECK(are_congruent(sample[a], sample[c], 2 * tol));
        }
      }
    }
  }
}

TEST_CASE("congruent frameworks on one graph are equivalent") {
  const Framework a = rhombus(1.2);
  std::vector<Vec2> pos;
  for (const Vec2& p : a.vertices()) pos.push_back({p.y + 1, p.x - 2});
  const Framework b = a.with_positions(pos);  // reflected + translated
  REQUIRE(are_congruent(a, b));
  CHECK(are_equivalent(a, b));
}

TEST_CASE("count_congruence_classes") {
  CHECK(count_congruence_classes(1) == 1);
  CHECK(count_congruence_classes(2) == 2);

  SUBCASE("matches brute-force pairwise grouping for small n") {
    for (int n = 1; n <= 6; ++n) {
      std::vector<Framework> all;
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> signs(n);
        for (int k = 0; k < n; ++k) signs[k] = (mask >> k) & 1 ? 1 : -1;
        all.push_back(harmonic_chain(n, signs));
      }
      std::vector<int> cls(all.size(), -1);
      int classes = 0;
      for (std::size_t a = 0; a < all.size(); ++a) {
        if (cls[a] >= 0) continue;
        cls[a] = classes++;
        for (std::size_t b = a + 1; b < all.size(); ++b) {
          if (cls[b] < 0 && are_congruent(all[a], all[b], 1e-9)) {
            cls[b] = cls[a];
          }
        }
      }
      CHECK(count_congruence_classes(n) == classes);
      CHECK(classes == (1 << (n - 1)));
    }
  }
  SUBCASE("n = 10 grows as 2^(n-1)") {
    CHECK(count_congruence_classes(10) == 512);
  }
  CHECK_THROWS_AS(count_congruence_classes(21), ValidationError);
}

TEST_CASE("harmonic chain endpoint is the alternating partial sum") {
  for (int n : {1, 2, 5, 9, 16}) {
    const Framework f = harmonic_chain_family().truncation(n);
    double sum = 0;
    for (int k = 1; k <= n; ++k) sum += (k % 2 ? 1.0 : -1.0) / k;
    CHECK(f.vertex(n).x == doctest::Approx(sum).epsilon(1e-15));
    CHECK(f.vertex(n).y == 0.0);
  }
}
