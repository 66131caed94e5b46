#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "rigor/flex_sim.hpp"
#include "rigor/linkage.hpp"
#include "rigor/multi_angle.hpp"
#include "rigor/rigidity.hpp"

using namespace rigor;

TEST_CASE("single-bar term linkage traces cos(theta) exactly") {
  const Linkage l = term_linkage(1.0, 1, 0, 0.0);
  const TraceResult tr = trace(l, 50);
  REQUIRE(tr.failed_samples == 0);
  CHECK(tr.g_strictly_increasing);
  CHECK(tr.unique_everywhere);
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    CHECK(std::abs(tr.points[k].x - std::cos(tr.driver_angle[k])) <= 1e-12);
  }
}

TEST_CASE("term linkage (0.5, 2, 0, 0) evaluates 0.5 cos(2 theta)") {
  const Linkage l = term_linkage(0.5, 2, 0, 0.0);
  const TraceResult tr = trace(l, 40);
  REQUIRE(tr.failed_samples == 0);
  CHECK(tr.unique_everywhere);
  CHECK(tr.max_residual <= 1e-9);
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    const double th = tr.driver_angle[k];
    const double want = 0.5 * std::cos(2 * th);
    CHECK(std::abs((tr.points[k].x - l.tracer_origin.x) - want) <=
          l.composed_tolerance + 1e-9);
  }
  // spot value from the spec's worked example
  bool saw = false;
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    if (std::abs(tr.driver_angle[k] - 0.4) < 0.02) saw = true;
  }
  CHECK(saw);  // 0.4 is inside the swept range
  CHECK(0.5 * std::cos(0.8) == doctest::Approx(0.34835338).epsilon(1e-6));
}

TEST_CASE("term linkage with both angles and a phase") {
  // (1, 1, 1, pi/2): x = cos(theta + phi + pi/2) = -sin(theta + phi)
  const Linkage l = term_linkage(1.0, 1, 1, std::numbers::pi / 2);
  REQUIRE(l.phi.has_value());
  const double phi = l.phi->value;
  const TraceResult tr = trace(l, 25);
  REQUIRE(tr.failed_samples == 0);
  CHECK(tr.unique_everywhere);
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    const double th = tr.driver_angle[k];
    const double want = -std::sin(th + phi);
    CHECK(std::abs((tr.points[k].x - l.tracer_origin.x) - want) <=
          l.composed_tolerance + 1e-9);
  }
}

TEST_CASE("assembled cos(theta)cos(phi) linkage matches the formula") {
  TrigPoly p{{{1.0, 1, 0, 1, 0}}};
  const MultiAngleForm form = angle_expand(p);
  AssembleOptions opt;
  const Linkage l = assemble_curve_linkage(form, opt);
  REQUIRE(l.phi.has_value());

  SUBCASE("trace with phi frozen") {
    const TraceResult tr = trace(l, 30);
    REQUIRE(tr.failed_samples == 0);
    CHECK(tr.g_strictly_increasing);
    CHECK(tr.unique_everywhere);
    const double phi = l.phi->value;
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
      const double th = tr.driver_angle[k];
      const double want = std::cos(th) * std::cos(phi);
      CHECK(std::abs((tr.points[k].x - l.tracer_origin.x) - want) <=
            l.composed_tolerance + 1e-9);
    }
  }
  SUBCASE("9x9 grid over (theta, phi)") {
    // re-pin the phi arm at each grid value and drive theta across the range
    const Framework& f = l.framework;
    std::vector<int> pins = l.pins;
    pins.push_back(l.v3);
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    std::vector<Vec2> pos = f.vertices();
    double worst = 0;
    for (int pk = 0; pk < 9; ++pk) {
      const double phi = 0.3 + 0.02 * pk;  // small steps stay on-branch
      for (int tk = 0; tk < 9; ++tk) {
        const double th = l.range[1] - 0.05 * tk;
        std::vector<Vec2> start = pos;
        start[l.v3] = Vec2::polar(l.driver_radius, th);
        start[l.phi->joint] = Vec2::polar(l.phi->radius, phi);
        const ProjectionResult proj = project_to_manifold(
            f, std::move(start), f.edge_lengths(), pins, 1e-10, 200);
        REQUIRE(proj.converged);
        pos = proj.positions;
        const double got = pos[l.tracer].x - l.tracer_origin.x;
        worst = std::max(worst,
                         std::abs(got - std::cos(th) * std::cos(phi)));
      }
    }
    CHECK(worst <= l.composed_tolerance + 1e-9);
  }
}

TEST_CASE("assembly rejects an empty form") {
  MultiAngleForm empty;
  CHECK_THROWS_AS(assemble_curve_linkage(empty), ValidationError);
}

TEST_CASE("tolerance budget is enforced") {
  TrigPoly p{{{1.0, 1, 0, 1, 0}}};
  const MultiAngleForm form = angle_expand(p);
  AssembleOptions opt;
  opt.trace_tolerance = 1e-9;  // far below the composed budget
  CHECK_THROWS_WITH_AS(assemble_curve_linkage(form, opt),
                       doctest::Contains("budget"), std::runtime_error);
}

TEST_CASE("closed-loop assembly keeps the tracer on the line x = C") {
  // cos(theta)cos(phi) with C = 0.4: loop closure forces phi to follow.
  TrigPoly p{{{1.0, 1, 0, 1, 0}}};
  MultiAngleForm form = angle_expand(p);
  form.constant = 0.4;
  AssembleOptions opt;
  opt.close_loop = true;
  const Linkage l = assemble_curve_linkage(form, opt);
  // Flex the closed loop by continuation from the built configuration and
  // verify the tracer's x stays put while the joint moves.
  const Framework& f = l.framework;
  SimulateOptions sopt;
  sopt.steps = 25;
  sopt.arc_step = 0.01;
  // pin the whole grounded set by simulating with pins = base edge of the
  // driver plus the anchor: use the first two pins as the simulated edge and
  // freeze the rest by marking them as one rigid body via... simpler: verify
  // the built configuration satisfies the line and a driven theta step keeps
  // it there.
  std::vector<int> pins = l.pins;
  pins.push_back(l.v3);
  std::sort(pins.begin(), pins.end());
  pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
  std::vector<Vec2> pos = f.vertices();
  const double line_x = pos[l.tracer].x;
  for (int k = 1; k <= 10; ++k) {
    const double th = std::acos(
        std::clamp((f.vertex(l.v3) - f.vertex(l.v1)).x / l.driver_radius +
                       0.002 * k * 0,
                   -1.0, 1.0));
    (void)th;
    // nudge theta down the range in small steps
    const double theta = (f.vertex(l.v3) - f.vertex(l.v1)).angle() - 0.005 * k;
    std::vector<Vec2> start = pos;
    start[l.v3] = f.vertex(l.v1) + Vec2::polar(l.driver_radius, theta);
    const ProjectionResult proj = project_to_manifold(
        f, std::move(start), f.edge_lengths(), pins, 1e-10, 200);
    REQUIRE(proj.converged);
    pos = proj.positions;
    CHECK(std::abs(pos[l.tracer].x - line_x) <= 1e-7);
  }
  // phi moved: the loop transferred the motion
  CHECK(std::abs((pos[l.phi->joint] - f.vertex(l.v1)).angle() -
                 l.phi->value) > 1e-4);
}

TEST_CASE("four-bar crank trace matches the closed-form coupler curve") {
  // ground A-D, crank A-B, coupler B-C with point E, rocker D-C
  oracles::FourBar fb;
  const double th0 = 1.2;
  const auto pose0 = fb.at(th0, {2.0, 2.0});
  const Framework f = Framework::build(
      {fb.A, pose0.B, pose0.C, fb.D, pose0.E},
      {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 4}, {2, 4}});
  const Linkage l =
      make_linkage(f, 0, 3, 1, 4, {0.4, th0}, std::vector<int>{0, 3});
  const TraceResult tr = trace(l, 60);
  REQUIRE(tr.failed_samples == 0);
  CHECK(tr.g_strictly_increasing);
  CHECK(tr.unique_everywhere);
  Vec2 hint = pose0.C;
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    const auto pose = fb.at(tr.driver_angle[k], hint);
    hint = pose.C;
    CHECK(dist(tr.points[k], pose.E) <= 1e-6);
  }
}

TEST_CASE("fourier linkage traces the partial sum in its ordinate") {
  FourierCoeffs coeffs;
  const int N = 4;
  for (int n = 1; n <= N; ++n) coeffs.a.push_back(1.0 / (n * n));
  PointednessReport pointedness;
  const double tail = oracles::zeta2_tail(N);
  const Linkage l = fourier_linkage(coeffs, N, &pointedness, tail);

  SUBCASE("pointedness: chain bars non-increasing") {
    CHECK(pointedness.non_increasing);
    REQUIRE_FALSE(pointedness.chain_bar_lengths.empty());
    CHECK(pointedness.chain_bar_lengths.front() == doctest::Approx(0.5));
  }
  SUBCASE("trace against the analytic partial sum and the full series") {
    const TraceResult tr = trace(l, 60);
    REQUIRE(tr.failed_samples == 0);
    CHECK(tr.g_strictly_increasing);
    CHECK(tr.unique_everywhere);
    double worst_partial = 0, worst_full = 0;
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
      const double t = tr.driver_angle[k];
      double partial = 0, full = 0;
      for (int n = 1; n <= N; ++n) partial += std::cos(n * t) / (n * n);
      full = partial;
      for (int n = N + 1; n <= 4000; ++n) full += std::cos(n * t) / (n * n);
      const double x = tr.points[k].x - l.tracer_origin.x;
      const double y = tr.points[k].y - l.tracer_origin.y;
      CHECK(std::abs(x - std::cos(t)) <= l.composed_tolerance + 1e-9);
      worst_partial = std::max(worst_partial, std::abs(y - partial));
      worst_full = std::max(worst_full, std::abs(y - full));
    }
    CHECK(worst_partial <= l.composed_tolerance + 1e-9);
    CHECK(worst_full <= tail + l.composed_tolerance + 1e-6);
  }
}

TEST_CASE("square-wave fourier linkage (sine terms, odd n)") {
  FourierCoeffs coeffs;
  const int N = 5;
  coeffs.b.assign(N, 0.0);
  for (int n = 1; n <= N; n += 2) {
    coeffs.b[n - 1] = 4.0 / (std::numbers::pi * n);
  }
  const Linkage l = fourier_linkage(coeffs, N);
  const TraceResult tr = trace(l, 40);
  REQUIRE(tr.failed_samples == 0);
  CHECK(tr.unique_everywhere);
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    const double t = tr.driver_angle[k];
    double partial = 0;
    for (int n = 1; n <= N; n += 2) {
      partial += 4.0 / (std::numbers::pi * n) * std::sin(n * t);
    }
    const double y = tr.points[k].y - l.tracer_origin.y;
    CHECK(std::abs(y - partial) <= l.composed_tolerance + 1e-9);
  }
}

TEST_CASE("non-summable coefficients rejected") {
  FourierCoeffs coeffs;
  coeffs.a = {1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(fourier_linkage(coeffs, 2), ValidationError);
}
