#pragma once

#include <string>
#include <vector>

namespace rigor {

// Monomial c * cos^a(theta) sin^b(theta) cos^p(phi) sin^q(phi).
struct TrigMonomial {
  double coeff = 0.0;
  int cos_theta = 0;
  int sin_theta = 0;
  int cos_phi = 0;
  int sin_phi = 0;
};

struct TrigPoly {
  std::vector<TrigMonomial> terms;
  double eval(double theta, double phi) const;
  int theta_degree() const;
  int phi_degree() const;
};

// One cosine term A * cos(r*theta + s*phi + t).
struct AngleTerm {
  double amplitude = 0.0;
  int r = 0;
  int s = 0;
  double phase = 0.0;
};

// Finite multiple-angle form: constant + sum of cosine terms, with (r, s)
// canonicalized to the half-lattice r > 0 or (r == 0 and s > 0).
struct MultiAngleForm {
  double constant = 0.0;
  std::vector<AngleTerm> terms;
  double eval(double theta, double phi) const;
  double amplitude_l1() const;
};

inline constexpr int kAngleExpandDegreeGuard = 12;

// Exact linearization via iterated frequency-domain convolution. The result
// is verified against the input on a 17x17 (theta, phi) grid to verify_tol;
// a mismatch throws (it would indicate a defect, not bad input).
MultiAngleForm angle_expand(const TrigPoly& poly, double verify_tol = 1e-9);

}  // namespace rigor
