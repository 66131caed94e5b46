#include "rigor/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "cell_builder.hpp"
#include "rigor/flex_sim.hpp"
#include "rigor/gadgets.hpp"
#include "rigor/rigidity.hpp"

namespace rigor {

using detail::CellBuilder;
using detail::Cx;

namespace {

constexpr double kArmRatio = 0.8;
constexpr double kCellTol = 1e-8;

double normalize_phase(double p) {
  while (p > std::numbers::pi) p -= 2 * std::numbers::pi;
  while (p <= -std::numbers::pi) p += 2 * std::numbers::pi;
  return p;
}

// Certify one representative gadget per (kind, k) used by an assembly.
// Results are cached per process; assembly refuses uncertified kinds.
void require_certified(GadgetKind kind, int k = 0) {
  static std::mutex mu;
  static std::map<std::pair<GadgetKind, int>, bool> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({kind, k});
  if (it == cache.end()) {
    Gadget g;
    switch (kind) {
      case GadgetKind::Multiplier: g = make_multiplier(k); break;
      case GadgetKind::Reversor: g = make_reversor(); break;
      case GadgetKind::Additor: g = make_additor(); break;
      case GadgetKind::Translator: g = make_translator(); break;
      case GadgetKind::Parallelogram: g = make_parallelogram(); break;
      case GadgetKind::LineConstraint: g = make_line_constraint(); break;
    }
    const CertificationReport rep = certify(g);
    it = cache.emplace(std::make_pair(kind, k), rep.pass).first;
  }
  if (!it->second) {
    throw std::runtime_error("gadget failed certification: " +
                             to_string(kind) +
                             (k ? "(" + std::to_string(k) + ")" : ""));
  }
}

// Builds hub arms for integer frequency rays of the two driver angles and
// composes term chains. All arms share the hub A; angles are tracked
// analytically (r*theta0 + s*phi0) to avoid wrap ambiguity.
class Assembler {
 public:
  Assembler(double theta0, double phi0, double scale = 1.0)
      : theta0_(theta0), phi0_(phi0), S_(scale) {
    A_ = b_.add({0, 0});
    base_tip_ = b_.add({S_, 0});
    b_.bar(A_, base_tip_);
    arm_len_[{0, 0}] = S_;
    arm_tip_[{0, 0}] = base_tip_;
  }

  int hub() const { return A_; }
  int base_tip() const { return base_tip_; }
  double scale() const { return S_; }
  double theta0() const { return theta0_; }

  // Arm tip for the ray r*theta + s*phi. Builds multiplier cascades,
  // reversor cells and averager/doubler pairs on demand.
  int ray(int r, int s) {
    const Key key{r, s};
    auto it = arm_tip_.find(key);
    if (it != arm_tip_.end()) return it->second;
    int tip;
    if (s == 0) {
      tip = pure_ray(r, theta0_, theta_tips_, theta_neg_tips_);
    } else if (r == 0) {
      tip = pure_ray(s, phi0_, phi_tips_, phi_neg_tips_);
    } else {
      tip = mixed_ray(r, s);
    }
    arm_tip_[key] = tip;
    return tip;
  }

  double ray_angle(int r, int s) const { return r * theta0_ + s * phi0_; }
  double ray_length(int r, int s) const { return arm_len_.at({r, s}); }

  // Attachment tip at radius `amp` and angle ray + phase, rigidly tied to
  // the ray arm (collinear rider for phase 0 or pi, triangle otherwise).
  int mount(int r, int s, double amp, double phase) {
    const int tip = ray(r, s);
    const double ang = ray_angle(r, s);
    const double ph = normalize_phase(phase);
    if (std::abs(ph) < 1e-12) {
      return b_.collinear_rider(A_, tip, amp);
    }
    if (std::abs(std::abs(ph) - std::numbers::pi) < 1e-12) {
      return b_.collinear_rider(A_, tip, -amp);
    }
    const int T = b_.add(std::polar(amp, ang + ph));
    b_.bar(A_, T);
    b_.bar(T, tip);
    return T;
  }

  // Starts the term chain at (0, -drop); returns the anchor joint.
  int start_chain(double drop) {
    chain_tip_ = b_.add(Cx(0.0, -drop));
    anchor_ = chain_tip_;
    return chain_tip_;
  }

  // Appends one term bar of length |amp| parallel to ray + phase.
  void chain_term(double amp, int r, int s, double phase) {
    double ph = phase;
    if (amp < 0) {
      amp = -amp;
      ph += std::numbers::pi;
    }
    require_certified(GadgetKind::Translator);
    const int m = mount(r, s, amp, ph);
    const double reach =
        std::abs(b_.at(chain_tip_)) + 2 * total_amplitude_ + 1.0;
    const int next = translator(m, chain_tip_, 0.75 * reach);
    chain_tip_ = next;
    total_amplitude_ += amp;
  }

  int chain_tip() const { return chain_tip_; }
  int anchor() const { return anchor_; }

  // Peaucellier cell pinning `joint` to the vertical line through line_x.
  void add_line_constraint(int joint, double line_x) {
    require_certified(GadgetKind::LineConstraint);
    const Cx tp = b_.at(joint);
    if (std::abs(tp.real() - line_x) > 1e-9) {
      throw std::runtime_error(
          "line constraint: built configuration is off the target line");
    }
    const double span = 2.0 * total_amplitude_ + 1.0;
    const double cs = span;  // cell scale
    const double L = 2.5 * cs, s = 1.5 * cs, q = 0.95 * cs;
    const double inv = (L * L - s * s) / (2 * q);
    const Cx O(line_x - inv, tp.imag());
    const Cx Q = O + Cx(q, 0);
    // P = preimage of the tracer under the inversion at O.
    const Cx d = tp - O;
    const double dist_pp = std::abs(d);
    const Cx P = O + d / dist_pp * ((L * L - s * s) / dist_pp);
    if (std::abs(std::abs(P - Q) - q) > 1e-6 * cs) {
      throw std::runtime_error("line constraint: crank radius mismatch");
    }
    const Cx mid = (P + tp) / 2.0;
    const double half = std::abs(tp - P) / 2.0;
    const double h = std::sqrt(s * s - half * half);
    const Cx perp = Cx(0, 1) * (tp - P) / std::abs(tp - P);
    const int Oi = b_.add(O);
    const int Qi = b_.add(Q);
    const int Pi = b_.add(P);
    const int R1 = b_.add(mid + h * perp);
    const int R2 = b_.add(mid - h * perp);
    b_.bar(Oi, R1);
    b_.bar(Oi, R2);
    b_.bar(R1, Pi);
    b_.bar(R2, Pi);
    b_.bar(R1, joint);
    b_.bar(R2, joint);
    b_.bar(Qi, Pi);
    pins_.push_back(Oi);
    pins_.push_back(Qi);
    record("line_constraint", {Oi, Qi, Pi, R1, R2, joint});
  }

  // Degree-two driver vertex coincident with the hub (Definition 5.2 form);
  // its two bars duplicate existing arm constraints consistently.
  struct Driver {
    int v1, v2, v3;
    double radius;
  };
  Driver make_driver() {
    const int v3 = ray(1, 0);
    const int v1 = b_.add({0, 0});
    b_.bar(v1, base_tip_);
    b_.bar(v1, v3);
    pins_.push_back(v1);
    return {v1, base_tip_, v3, arm_len_.at({1, 0})};
  }

  int make_phi_driver_tip() { return ray(0, 1); }
  double phi_radius() const { return arm_len_.at({0, 1}); }

  // Contraparallelogram cells fold where their two rays align (relative
  // angle in pi Z). Each cell contributes a linear fold locus
  // c_r * theta + off = k pi; the operating range shrinks to the maximal
  // fold-free interval around the build angle.
  std::array<double, 2> clip_range(std::array<double, 2> range,
                                   double margin = 0.15) const {
    double lo = range[0], hi = range[1];
    const double build = theta0_;
    for (const auto& [cr, off] : fold_loci_) {
      if (std::abs(cr) < 1e-12) continue;
      // solutions of cr*theta + off = k*pi
      const double period = std::numbers::pi / std::abs(cr);
      double theta_star =
          (std::round((cr * build + off) / std::numbers::pi) *
               std::numbers::pi -
           off) /
          cr;
      for (double t = theta_star - 3 * period; t <= theta_star + 3 * period;
           t += period) {
        if (t < build && t + margin > lo) lo = t + margin;
        if (t > build && t - margin < hi) hi = t - margin;
      }
    }
    if (!(lo < hi)) {
      throw std::runtime_error("operating range collapsed by cell folds");
    }
    return {lo, hi};
  }

  Linkage finish(Driver drv, int tracer, std::array<double, 2> range,
                 double trace_tolerance) {
    range = clip_range(range);
    Linkage l;
    std::vector<int> all_pins = pins_;
    all_pins.push_back(A_);
    all_pins.push_back(base_tip_);
    if (anchor_ >= 0) all_pins.push_back(anchor_);
    std::sort(all_pins.begin(), all_pins.end());
    all_pins.erase(std::unique(all_pins.begin(), all_pins.end()),
                   all_pins.end());
    l.framework = b_.framework();
    l.v1 = drv.v1;
    l.v2 = drv.v2;
    l.v3 = drv.v3;
    l.driver_radius = drv.radius;
    l.tracer = tracer;
    l.range = range;
    l.pins = std::move(all_pins);
    l.gadgets = uses_;
    if (anchor_ >= 0) {
      l.tracer_origin = l.framework.vertex(anchor_);
    }
    for (const auto& u : uses_) l.composed_tolerance += u.tolerance;
    if (l.composed_tolerance > trace_tolerance) {
      throw std::runtime_error(
          "composition tolerance budget exceeded: " +
          std::to_string(l.composed_tolerance) + " > " +
          std::to_string(trace_tolerance));
    }
    return l;
  }

  void pin(int v) { pins_.push_back(v); }

 private:
  using Key = std::pair<int, int>;

  void record(std::string kind, std::vector<int> verts) {
    uses_.push_back({std::move(kind), std::move(verts), kCellTol});
  }

  // Positive and negative cascades along one driver angle. `which` tags the
  // cache keys: theta rays are (m, 0), phi rays are (0, m).
  int pure_ray(int m, double ang0, std::map<int, int>& pos_tips,
               std::map<int, int>& neg_tips) {
    const bool is_theta = (&pos_tips == &theta_tips_);
    auto key = [&](int mm) { return is_theta ? Key{mm, 0} : Key{0, mm}; };
    if (m == 0) return base_tip_;
    if (m > 0) {
      if (auto it = pos_tips.find(m); it != pos_tips.end()) return it->second;
      if (m == 1) {
        const int tip = b_.add(std::polar(S_ * kArmRatio, ang0));
        b_.bar(A_, tip);
        pos_tips[1] = tip;
        arm_len_[key(1)] = S_ * kArmRatio;
        arm_tip_[key(1)] = tip;
        return tip;
      }
      require_certified(GadgetKind::Multiplier, m);
      const int lo = pure_ray(m - 2, ang0, pos_tips, neg_tips);
      const int hi = pure_ray(m - 1, ang0, pos_tips, neg_tips);
      const int tip = b_.bisector_cell(A_, lo, hi);
      record("multiplier", {A_, lo, hi, tip});
      if (is_theta) fold_loci_.push_back({1.0, 0.0});
      pos_tips[m] = tip;
      arm_len_[key(m)] = S_ * std::pow(kArmRatio, m);
      arm_tip_[key(m)] = tip;
      return tip;
    }
    // Negative multiples: reversor off the +|m| chain base, then a cascade
    // sharing the short base rider.
    const int mm = -m;
    if (auto it = neg_tips.find(mm); it != neg_tips.end()) return it->second;
    require_certified(GadgetKind::Reversor);
    int& rider = is_theta ? theta_neg_rider_ : phi_neg_rider_;
    if (rider < 0) {
      rider = b_.collinear_rider(A_, base_tip_,
                                 S_ * kArmRatio * kArmRatio);
    }
    if (mm == 1) {
      const int u = pure_ray(1, ang0, pos_tips, neg_tips);
      const int tip = b_.bisector_cell(A_, u, rider);
      record("reversor", {A_, u, rider, tip});
      if (is_theta) fold_loci_.push_back({1.0, 0.0});
      neg_tips[1] = tip;
      arm_len_[key(-1)] = S_ * std::pow(kArmRatio, 3);
      arm_tip_[key(-1)] = tip;
      return tip;
    }
    const int lo = mm == 2 ? rider : pure_ray(-(mm - 2), ang0, pos_tips, neg_tips);
    const int hi = pure_ray(-(mm - 1), ang0, pos_tips, neg_tips);
    const int tip = b_.bisector_cell(A_, lo, hi);
    record("multiplier", {A_, lo, hi, tip});
    if (is_theta) fold_loci_.push_back({1.0, 0.0});
    neg_tips[mm] = tip;
    arm_len_[key(-mm)] = S_ * std::pow(kArmRatio, mm + 2);
    arm_tip_[key(-mm)] = tip;
    return tip;
  }

  int mixed_ray(int r, int s) {
    require_certified(GadgetKind::Additor);
    int u_tip = ray(r, 0);
    double u_len = arm_len_.at({r, 0});
    double u_ang = ray_angle(r, 0);
    int w_tip = ray(0, s);
    double w_len = arm_len_.at({0, s});
    double w_ang = ray_angle(0, s);
    if (w_len > u_len) {
      std::swap(u_tip, w_tip);
      std::swap(u_len, w_len);
      std::swap(u_ang, w_ang);
    }
    if (u_len - w_len < 1e-9) {
      // Equal arms degenerate the contraparallelogram; shorten the w side.
      w_tip = b_.collinear_rider(A_, w_tip, w_len * kArmRatio);
      w_len *= kArmRatio;
    }
    // Averager: passive bisector arm, fused w tip.
    const double v_len = std::sqrt(u_len * w_len);
    const double v_ang = (u_ang + w_ang) / 2.0;
    const int v_tip = b_.add(std::polar(v_len, v_ang));
    b_.bar(A_, v_tip);
    b_.bisector_cell_into(A_, u_tip, v_tip, w_tip);
    record("additor-averager", {A_, u_tip, v_tip, w_tip});
    // Doubler back to the base ray: out = 2 * bisector = u + w.
    const int out = b_.bisector_cell(A_, base_tip_, v_tip);
    record("additor-doubler", {A_, base_tip_, v_tip, out});
    // averager folds where r*theta = s*phi0 (mod 2pi); doubler where the
    // bisector meets the base ray
    fold_loci_.push_back({r / 2.0, -s * phi0_ / 2.0});
    fold_loci_.push_back({r / 2.0, s * phi0_ / 2.0});
    arm_len_[{r, s}] = v_len * v_len / S_;
    return out;
  }

  // Two-parallelogram translator with explicit connector length.
  int translator(int S_tip, int P_prev, double connector) {
    const Cx t = b_.at(P_prev);  // hub is at the origin
    const double dist_t = std::abs(t);
    const double m = std::max(connector, 0.6 * dist_t + 0.5);
    const double beta = std::acos(std::clamp(dist_t / (2 * m), -1.0, 1.0));
    const Cx dir = t / dist_t;
    const Cx J1p = m * dir * std::polar(1.0, beta);
    const int J1 = b_.add(J1p);
    const int J2 = b_.add(J1p + b_.at(S_tip));
    b_.bar(A_, J1);
    b_.bar(S_tip, J2);
    b_.bar(J1, J2);
    const int next = b_.add(t + b_.at(S_tip));
    b_.bar(J1, P_prev);
    b_.bar(J2, next);
    b_.bar(P_prev, next);
    record("translator", {A_, S_tip, J1, J2, P_prev, next});
    return next;
  }

  CellBuilder b_;
  double theta0_, phi0_, S_;
  int A_ = -1, base_tip_ = -1;
  int chain_tip_ = -1, anchor_ = -1;
  double total_amplitude_ = 0.0;
  std::map<int, int> theta_tips_, theta_neg_tips_, phi_tips_, phi_neg_tips_;
  int theta_neg_rider_ = -1, phi_neg_rider_ = -1;
  std::map<Key, int> arm_tip_;
  std::map<Key, double> arm_len_;
  std::vector<std::pair<double, double>> fold_loci_;  // (c_r, offset)
  std::vector<int> pins_;
  std::vector<GadgetUse> uses_;
};

}  // namespace

Linkage make_linkage(Framework f, int v1, int v2, int v3, int tracer,
                     std::array<double, 2> range, std::vector<int> pins) {
  if (f.degree(v1) != 2 || !f.has_edge(v1, v2) || !f.has_edge(v1, v3)) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "driver vertex must have degree two with edges to "
                          "v2 and v3");
  }
  Linkage l;
  l.driver_radius = dist(f.vertex(v1), f.vertex(v3));
  l.framework = std::move(f);
  l.v1 = v1;
  l.v2 = v2;
  l.v3 = v3;
  l.tracer = tracer;
  l.range = range;
  l.pins = std::move(pins);
  return l;
}

Linkage term_linkage(double amplitude, int r, int s, double phase) {
  if (amplitude == 0.0) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "amplitude must be nonzero");
  }
  const std::array<double, 2> range{0.2, 1.2};
  if (r == 1 && s == 0 && phase == 0.0 && amplitude > 0) {
    // One bar: the driver arm itself is the tracer.
    CellBuilder b;
    const int v1 = b.add({0, 0});
    const int v2 = b.add({1, 0});
    const int v3 = b.add(std::polar(amplitude, range[1]));
    b.bar(v1, v2);
    b.bar(v1, v3);
    Linkage l;
    l.framework = b.framework();
    l.v1 = v1;
    l.v2 = v2;
    l.v3 = v3;
    l.tracer = v3;
    l.range = range;
    l.pins = {v1, v2};
    l.driver_radius = amplitude;
    return l;
  }
  Assembler a(range[1], 0.35);
  a.start_chain(2.0 + 2.5 * std::abs(amplitude));
  a.chain_term(amplitude, r, s, phase);
  const auto drv = a.make_driver();
  Linkage l = a.finish(drv, a.chain_tip(), range, 1e-6);
  if (s != 0) {
    PhiDriver phi;
    phi.joint = a.make_phi_driver_tip();  // already built by the term
    phi.radius = a.phi_radius();
    phi.value = 0.35;
    l.phi = phi;
    l.pins.push_back(phi.joint);
  }
  return l;
}

Linkage assemble_curve_linkage(const MultiAngleForm& form,
                               const AssembleOptions& opt) {
  if (form.terms.empty()) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "multi-angle form has no terms");
  }
  const std::array<double, 2> range{0.2, 1.2};
  double theta0 = range[1];
  const double phi0 = opt.phi_value;

  if (opt.close_loop) {
    // Pick the driver's build angle on the curve: sum A cos(...) = constant.
    auto value = [&](double th) {
      double acc = 0;
      for (const auto& t : form.terms) {
        acc += t.amplitude * std::cos(t.r * th + t.s * phi0 + t.phase);
      }
      return acc - form.constant;
    };
    double lo = range[0], hi = range[1];
    double flo = value(lo), fhi = value(hi);
    if (flo * fhi > 0) {
      throw std::runtime_error(
          "loop closure: curve does not meet the line x = C in the operating "
          "range");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = (lo + hi) / 2, fm = value(mid);
      if (flo * fm <= 0) {
        hi = mid;
        fhi = fm;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    theta0 = (lo + hi) / 2;
  }

  double amp_sum = 0;
  for (const auto& t : form.terms) amp_sum += std::abs(t.amplitude);

  Assembler a(theta0, phi0);
  a.start_chain(2.0 + 2.5 * amp_sum);
  for (const auto& t : form.terms) {
    a.chain_term(t.amplitude, t.r, t.s, t.phase);
  }
  const auto drv = a.make_driver();
  bool has_phi = false;
  for (const auto& t : form.terms) has_phi = has_phi || t.s != 0;
  int phi_joint = -1;
  if (has_phi) phi_joint = a.make_phi_driver_tip();
  if (opt.close_loop) {
    a.add_line_constraint(a.chain_tip(), form.constant);
  }
  const std::array<double, 2> closed_range{std::max(range[0], theta0 - 0.3),
                                           std::min(range[1], theta0 + 0.3)};
  Linkage l = a.finish(drv, a.chain_tip(),
                       opt.close_loop ? closed_range : range,
                       opt.trace_tolerance);
  if (has_phi) {
    PhiDriver phi;
    phi.joint = phi_joint;
    phi.radius = a.phi_radius();
    phi.value = phi0;
    l.phi = phi;
    // In closure mode the loop determines phi from theta; otherwise the
    // second angle is frozen at its build value during traces.
    if (!opt.close_loop) l.pins.push_back(phi.joint);
  }
  return l;
}

Linkage fourier_linkage(const FourierCoeffs& coeffs, int N,
                        PointednessReport* pointedness, double tail_bound) {
  if (N < 1) {
    throw ValidationError(ValidationError::Kind::BadInput, "N >= 1");
  }
  double l1 = 0;
  for (double a : coeffs.a) l1 += std::abs(a);
  for (double b : coeffs.b) l1 += std::abs(b);
  if (!std::isfinite(l1)) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "coefficients must be absolutely summable");
  }
  struct Elem {
    double amp;
    int r;
    double phase;
  };
  std::vector<Elem> elems;
  // Abscissa pair: (cos t, 0).
  elems.push_back({0.5, 1, 0.0});
  elems.push_back({0.5, -1, 0.0});
  const double half_pi = std::numbers::pi / 2;
  for (int n = 1; n <= N; ++n) {
    const double an =
        n <= static_cast<int>(coeffs.a.size()) ? coeffs.a[n - 1] : 0.0;
    const double bn =
        n <= static_cast<int>(coeffs.b.size()) ? coeffs.b[n - 1] : 0.0;
    if (an != 0.0) {
      // (0, an cos nt) = an/2 [e^{i(nt+pi/2)} + e^{i(-nt+pi/2)}]
      elems.push_back({an / 2, n, half_pi});
      elems.push_back({an / 2, -n, half_pi});
    }
    if (bn != 0.0) {
      // (0, bn sin nt) = bn/2 [e^{i nt} + e^{i(pi - nt)}]
      elems.push_back({bn / 2, n, 0.0});
      elems.push_back({bn / 2, -n, std::numbers::pi});
    }
  }
  // Pointedness: chain bars ordered by decreasing amplitude.
  std::stable_sort(elems.begin(), elems.end(), [](const Elem& a, const Elem& b) {
    return std::abs(a.amp) > std::abs(b.amp);
  });

  const std::array<double, 2> range{0.2, 1.2};
  double amp_sum = 0;
  for (const auto& e : elems) amp_sum += std::abs(e.amp);

  Assembler a(range[1], 0.35);
  a.start_chain(2.0 + 2.5 * amp_sum);
  for (const auto& e : elems) a.chain_term(e.amp, e.r, 0, e.phase);
  const auto drv = a.make_driver();
  Linkage l = a.finish(drv, a.chain_tip(), range, 1e-6);

  if (pointedness) {
    pointedness->chain_bar_lengths.clear();
    for (const auto& e : elems) {
      pointedness->chain_bar_lengths.push_back(std::abs(e.amp));
    }
    pointedness->non_increasing =
        std::is_sorted(pointedness->chain_bar_lengths.rbegin(),
                       pointedness->chain_bar_lengths.rend());
    pointedness->tail_bound = tail_bound;
  }
  return l;
}

TraceResult trace(const Linkage& l, int samples, const TraceOptions& opt) {
  if (samples < 2) {
    throw ValidationError(ValidationError::Kind::BadInput, "samples >= 2");
  }
  TraceResult out;
  const Framework& f = l.framework;
  std::vector<int> pins = l.pins;
  pins.push_back(l.v3);
  std::sort(pins.begin(), pins.end());
  pins.erase(std::unique(pins.begin(), pins.end()), pins.end());

  const Vec2 hub = f.vertex(l.v1);
  std::vector<Vec2> pos = f.vertices();
  out.unique_everywhere = true;

  for (int k = 0; k < samples; ++k) {
    // Sweep from range[1] down to range[0] so the cosine angle function
    // increases strictly (Definition of a plane linkage).
    const double th = l.range[1] + (l.range[0] - l.range[1]) *
                                       static_cast<double>(k) / (samples - 1);
    std::vector<Vec2> start = pos;
    start[l.v3] = hub + Vec2::polar(l.driver_radius, th);
    const ProjectionResult proj = project_to_manifold(
        f, std::move(start), f.edge_lengths(), pins, opt.proj_tol, 120);
    if (!proj.converged) {
      ++out.failed_samples;
      continue;
    }
    pos = proj.positions;
    out.driver_angle.push_back(th);
    out.points.push_back(pos[l.tracer]);
    out.residual.push_back(proj.residual);
    out.max_residual = std::max(out.max_residual, proj.residual);
    out.g.push_back((pos[l.v2] - pos[l.v1]).dot(pos[l.v3] - pos[l.v1]));

    if (opt.check_uniqueness) {
      Framework cur = f.with_positions(pos);
      const Eigen::MatrixXd R = rigidity_matrix(cur).dense();
      std::vector<char> pinned(f.vertex_count(), 0);
      for (int v : pins) pinned[v] = 1;
      std::vector<int> cols;
      for (int v = 0; v < f.vertex_count(); ++v) {
        if (!pinned[v]) {
          cols.push_back(2 * v);
          cols.push_back(2 * v + 1);
        }
      }
      if (!cols.empty()) {
        Eigen::MatrixXd Rf(R.rows(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
          Rf.col(c) = R.col(cols[c]);
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Rf);
        cod.setThreshold(1e-9);
        if (cod.rank() < static_cast<Eigen::Index>(cols.size())) {
          out.unique_everywhere = false;
        }
      }
    }
  }
  out.g_strictly_increasing = out.g.size() >= 2;
  for (std::size_t k = 1; k < out.g.size(); ++k) {
    if (!(out.g[k] > out.g[k - 1])) out.g_strictly_increasing = false;
  }
  return out;
}

}  // namespace rigor
