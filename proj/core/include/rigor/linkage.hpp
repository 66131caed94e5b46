#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rigor/framework.hpp"
#include "rigor/multi_angle.hpp"

namespace rigor {

// A composed gadget occurrence inside a linkage (for serialization and the
// tolerance budget).
struct GadgetUse {
  std::string kind;
  std::vector<int> vertices;
  double tolerance = 0.0;
};

struct PhiDriver {
  int joint = -1;
  double radius = 0.0;
  double value = 0.0;  // frozen angle during single-driver traces
};

// A plane linkage: framework with a degree-two driver vertex v1 (edges to v2
// and v3) swept through `range`, a tracer joint, and the pin set that grounds
// the assembly during traces.
struct Linkage {
  Framework framework;
  int v1 = -1;
  int v2 = -1;
  int v3 = -1;
  int tracer = -1;
  std::array<double, 2> range{0.0, 1.0};
  std::vector<GadgetUse> gadgets;
  std::vector<int> pins;  // includes v1 and v2
  double driver_radius = 1.0;
  std::optional<PhiDriver> phi;
  Vec2 tracer_origin{0, 0};  // chain anchor; tracer coordinates are measured
                             // relative to this point
  double composed_tolerance = 0.0;
};

// Wraps an arbitrary framework as a linkage (driver joints + tracer).
Linkage make_linkage(Framework f, int v1, int v2, int v3, int tracer,
                     std::array<double, 2> range, std::vector<int> pins);

// Composed linkage whose tracer satisfies
// x - x0 = A cos(r theta + s phi + t) over the operating range.
Linkage term_linkage(double amplitude, int r, int s, double phase);

struct AssembleOptions {
  bool close_loop = false;   // pin the tracer to the line x - x0 = constant
  double phi_value = 0.35;   // frozen second angle
  double trace_tolerance = 1e-6;  // budget cap; assembly throws if exceeded
};

// Term linkages chained tip-to-tail from a shared hub so the tracer's
// x-coordinate (relative to the chain anchor) equals sum A_n cos(...).
Linkage assemble_curve_linkage(const MultiAngleForm& form,
                               const AssembleOptions& opt = {});

struct FourierCoeffs {
  std::vector<double> a;  // a[n-1] multiplies cos(n t)
  std::vector<double> b;  // b[n-1] multiplies sin(n t)
};

struct PointednessReport {
  std::vector<double> chain_bar_lengths;  // in chain order
  bool non_increasing = false;
  double tail_bound = 0.0;  // caller-supplied sum_{n>N} |a_n| + |b_n|
};

// Linkage tracing (cos t, f_N(t)) relative to the chain anchor, where f_N is
// the N-term partial Fourier sum. Term bars are ordered by decreasing
// amplitude (pointedness trend).
Linkage fourier_linkage(const FourierCoeffs& coeffs, int N,
                        PointednessReport* pointedness = nullptr,
                        double tail_bound = 0.0);

struct TraceResult {
  std::vector<double> driver_angle;  // per sample
  std::vector<Vec2> points;          // tracer positions
  std::vector<double> g;             // cosine angle function at the driver
  std::vector<double> residual;      // per-sample projection residual
  double max_residual = 0.0;
  bool g_strictly_increasing = false;
  bool unique_everywhere = false;  // proper_dim 0 with driver pinned
  int failed_samples = 0;
};

struct TraceOptions {
  double proj_tol = 1e-10;
  bool check_uniqueness = true;
};

// Drives the driver angle from range[1] down to range[0] (so g increases),
// solving the remaining joints by projection at each sample.
TraceResult trace(const Linkage& l, int samples, const TraceOptions& opt = {});

}  // namespace rigor
