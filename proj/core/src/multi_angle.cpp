#include "rigor/multi_angle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>

#include "rigor/framework.hpp"

namespace rigor {

double TrigPoly::eval(double theta, double phi) const {
  double acc = 0;
  for (const auto& m : terms) {
    acc += m.coeff * std::pow(std::cos(theta), m.cos_theta) *
           std::pow(std::sin(theta), m.sin_theta) *
           std::pow(std::cos(phi), m.cos_phi) *
           std::pow(std::sin(phi), m.sin_phi);
  }
  return acc;
}

int TrigPoly::theta_degree() const {
  int d = 0;
  for (const auto& m : terms) d = std::max(d, m.cos_theta + m.sin_theta);
  return d;
}

int TrigPoly::phi_degree() const {
  int d = 0;
  for (const auto& m : terms) d = std::max(d, m.cos_phi + m.sin_phi);
  return d;
}

double MultiAngleForm::eval(double theta, double phi) const {
  double acc = constant;
  for (const auto& t : terms) {
    acc += t.amplitude * std::cos(t.r * theta + t.s * phi + t.phase);
  }
  return acc;
}

double MultiAngleForm::amplitude_l1() const {
  double acc = 0;
  for (const auto& t : terms) acc += std::abs(t.amplitude);
  return acc;
}

MultiAngleForm angle_expand(const TrigPoly& poly, double verify_tol) {
  if (poly.theta_degree() > kAngleExpandDegreeGuard ||
      poly.phi_degree() > kAngleExpandDegreeGuard) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "polynomial degree exceeds expansion guard " +
                              std::to_string(kAngleExpandDegreeGuard));
  }
  using C = std::complex<double>;
  std::map<std::pair<int, int>, C> freq;  // (r, s) -> coefficient of e^{i(r th + s ph)}

  for (const auto& mono : poly.terms) {
    std::map<std::pair<int, int>, C> acc{{{0, 0}, C(mono.coeff, 0)}};
    auto shift = [&](int dr, int ds, C w_plus, C w_minus) {
      std::map<std::pair<int, int>, C> next;
      for (const auto& [rs, c] : acc) {
        next[{rs.first + dr, rs.second + ds}] += c * w_plus;
        next[{rs.first - dr, rs.second - ds}] += c * w_minus;
      }
      acc = std::move(next);
    };
    const C half(0.5, 0);
    const C ihalf(0, 0.5);  // sin x = -i/2 e^{ix} + i/2 e^{-ix}
    for (int k = 0; k < mono.cos_theta; ++k) shift(1, 0, half, half);
    for (int k = 0; k < mono.sin_theta; ++k) shift(1, 0, -ihalf, ihalf);
    for (int k = 0; k < mono.cos_phi; ++k) shift(0, 1, half, half);
    for (int k = 0; k < mono.sin_phi; ++k) shift(0, 1, -ihalf, ihalf);
    for (const auto& [rs, c] : acc) freq[rs] += c;
  }

  MultiAngleForm out;
  for (const auto& [rs, c] : freq) {
    const auto [r, s] = rs;
    if (r == 0 && s == 0) {
      out.constant += c.real();
      continue;
    }
    if (r < 0 || (r == 0 && s < 0)) continue;  // paired with the conjugate
    const double amp = 2.0 * std::abs(c);
    if (amp < 1e-14) continue;
    out.terms.push_back({amp, r, s, std::arg(c)});
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
    return std::pair{a.r, a.s} < std::pair{b.r, b.s};
  });

  // Identity check on a 17x17 grid.
  for (int a = 0; a < 17; ++a) {
    for (int b = 0; b < 17; ++b) {
      const double th = 2 * std::numbers::pi * a / 17.0;
      const double ph = 2 * std::numbers::pi * b / 17.0;
      const double lhs = poly.eval(th, ph);
      const double rhs = out.eval(th, ph);
      if (std::abs(lhs - rhs) > verify_tol) {
        throw std::logic_error("angle_expand identity check failed: |" +
                               std::to_string(lhs) + " - " +
                               std::to_string(rhs) + "| > tol");
      }
    }
  }
  return out;
}

}  // namespace rigor
