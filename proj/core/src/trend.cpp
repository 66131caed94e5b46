#include "rigor/trend.hpp"

#include <algorithm>
#include <cmath>

namespace rigor {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit out;
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return out;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0) return out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return out;
}

double loglog_slope(std::span<const double> ranks, std::span<const double> values) {
  const std::size_t n = std::min(ranks.size(), values.size());
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(std::max(ranks[i], 1e-300));
    ly[i] = std::log(std::max(std::abs(values[i]), 1e-300));
  }
  return fit_line(lx, ly).slope;
}

double loglog_slope_last_half(std::span<const double> ranks,
                              std::span<const double> values) {
  const std::size_t n = std::min(ranks.size(), values.size());
  if (n < 2) return 0.0;
  const std::size_t start = n >= 4 ? n / 2 - (n % 2 == 0 ? 1 : 0) : 0;
  return loglog_slope(ranks.subspan(start), values.subspan(start));
}

TrendKind classify_trend(double slope, double threshold) {
  if (slope < -threshold) return TrendKind::Decaying;
  if (slope > threshold) return TrendKind::Growing;
  return TrendKind::Bounded;
}

std::string to_string(TrendKind kind) {
  switch (kind) {
    case TrendKind::Decaying: return "decaying";
    case TrendKind::Bounded: return "bounded";
    case TrendKind::Growing: return "growing";
  }
  return "?";
}

}  // namespace rigor
