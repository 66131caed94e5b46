#pragma once

#include <span>
#include <string>
#include <vector>

namespace rigor {

enum class TrendKind { Decaying, Bounded, Growing };

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Slope of log(value) against log(rank); values clamped at 1e-300.
double loglog_slope(std::span<const double> ranks, std::span<const double> values);

// Same, restricted to the last half of the series (minimum of two points).
double loglog_slope_last_half(std::span<const double> ranks,
                              std::span<const double> values);

TrendKind classify_trend(double slope, double threshold = 0.1);

std::string to_string(TrendKind kind);

}  // namespace rigor
