#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "rigor/framework.hpp"

namespace rigor {

enum class GadgetKind {
  Parallelogram,
  Translator,
  Multiplier,
  Additor,
  Reversor,
  LineConstraint,
};

std::string to_string(GadgetKind k);

// A small certified sub-linkage with a driven relation between input and
// output angles (or coordinates). The relation is verified by flex-sim
// driving before the gadget may be composed into a larger linkage.
struct Gadget {
  GadgetKind kind = GadgetKind::Parallelogram;
  int multiplier_k = 0;
  Framework framework;
  std::vector<int> base_joints;    // pinned at their built positions
  std::vector<int> input_joints;   // prescribed from the input values
  std::vector<int> output_joints;
  int input_count = 1;
  std::array<double, 2> operating_range{0.0, 1.0};  // per input value
  std::vector<double> build_inputs;                 // inputs at construction
  double tolerance = 1e-8;
  bool certified = false;

  // Expected output values for given inputs.
  std::function<std::vector<double>(const std::vector<double>&)> relation;
  // Positions of the input joints realizing given inputs.
  std::function<std::vector<Vec2>(const std::vector<double>&)> placement;
  // Measured output values at a solved configuration.
  std::function<std::vector<double>(const std::vector<Vec2>&)> readout;
};

struct CertificationReport {
  int samples = 0;
  double max_error = 0.0;
  bool unique_everywhere = true;
  bool converged_everywhere = true;
  bool pass = false;
};

// Drives the gadget through `samples` inputs across its operating range
// (warm-started from the build configuration), checks the relation at the
// gadget's tolerance and the uniqueness of each driven configuration.
// Marks the gadget certified on success.
CertificationReport certify(Gadget& g, int samples = 25);

// output = k * input, by cascading k-1 contraparallelogram doubler cells.
Gadget make_multiplier(int k, double scale = 1.0,
                       std::array<double, 2> range = {0.2, 1.2});
// output = -input (bisector cell with the middle arm pinned to the base).
Gadget make_reversor(double scale = 1.0,
                     std::array<double, 2> range = {0.15, 1.2});
// output = input1 + input2 (averager cell then doubler cell).
Gadget make_additor(double scale = 1.0);
// Copies an angle across a parallelogram (shared translation offset).
Gadget make_parallelogram(double scale = 1.0,
                          std::array<double, 2> range = {0.3, 1.3});
// Copies a bar (direction and length) to a remote joint via two
// parallelogram cells.
Gadget make_translator(double scale = 1.0,
                       std::array<double, 2> range = {0.3, 1.3});
// Peaucellier cell: output joint confined to the vertical line
// x = (L^2 - s^2) / (2q); input is the crank angle at the pinned pivot.
Gadget make_line_constraint(double scale = 1.0,
                            std::array<double, 2> range = {0.5, 1.8});

}  // namespace rigor
