// rigor: rigidity and flexibility analysis for planar bar-joint frameworks,
// truncation-chain protocols, and Kempe-style linkage synthesis.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "rigor/congruence.hpp"
#include "rigor/flex_sim.hpp"
#include "rigor/generators.hpp"
#include "rigor/json_io.hpp"
#include "rigor/linkage.hpp"
#include "rigor/multi_angle.hpp"
#include "rigor/rigidity.hpp"
#include "rigor/svg.hpp"
#include "rigor/version.hpp"

using nlohmann::json;
using namespace rigor;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::string command_echo(int argc, char** argv) {
  std::ostringstream ss;
  for (int k = 0; k < argc; ++k) {
    if (k) ss << ' ';
    ss << argv[k];
  }
  return ss.str();
}

std::string g_command;

json meta_block() {
  return {{"tool", "rigor"}, {"version", kVersion}, {"command", g_command}};
}

std::string csv_header() {
  return std::string("# rigor ") + kVersion + "\n# cmd: " + g_command + "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    atomic_write_text(path, content);
  }
}

struct FamilySpec {
  std::string family;
  int n = 4;
  std::string signs = "+-";
  int levels = 3;
  std::string direction = "inward";
  int bays = 3;
  int depth = 2;
  int cells = 4;
  double aspect = 1.0;
  int nx = 2, ny = 2;
  std::string cell = "square-diag";

  void add_options(CLI::App* app) {
    app->add_option("--family", family, "family name")->required();
    app->add_option("--n", n, "chain edges / rectangles");
    app->add_option("--signs", signs, "harmonic-chain sign pattern, e.g. +-+-");
    app->add_option("--levels", levels, "cobweb levels");
    app->add_option("--direction", direction, "cobweb: inward|outward|two-way");
    app->add_option("--bays", bays, "winerack bays");
    app->add_option("--depth", depth, "cantor tree depth");
    app->add_option("--cells", cells, "strip tower cells");
    app->add_option("--aspect", aspect, "strip tower cell aspect");
    app->add_option("--nx", nx, "lattice repeats in x");
    app->add_option("--ny", ny, "lattice repeats in y");
    app->add_option("--cell", cell, "lattice cell: square-diag|kagome");
  }

  CobwebDirection cobweb_dir() const {
    if (direction == "inward") return CobwebDirection::Inward;
    if (direction == "outward") return CobwebDirection::Outward;
    if (direction == "two-way") return CobwebDirection::TwoWay;
    throw ValidationError(ValidationError::Kind::BadInput,
                          "unknown cobweb direction: " + direction);
  }

  std::vector<int> sign_vector(int len) const {
    std::vector<int> out;
    if (signs.empty()) {
      throw ValidationError(ValidationError::Kind::BadInput, "empty signs");
    }
    for (int k = 0; k < len; ++k) {
      const char c = signs[k % signs.size()];
      if (c == '+') {
        out.push_back(1);
      } else if (c == '-') {
        out.push_back(-1);
      } else {
        throw ValidationError(ValidationError::Kind::BadInput,
                              "signs must be + or -");
      }
    }
    return out;
  }

  Framework lattice_cell() const {
    if (cell == "square-diag") return unit_square_cell_with_diagonals();
    if (cell == "kagome") return kagome_cell();
    throw ValidationError(ValidationError::Kind::BadInput,
                          "unknown cell: " + cell);
  }

  Vec2 lattice_ty() const {
    return cell == "kagome" ? Vec2{0.5, std::sqrt(3.0) / 2} : Vec2{0, 1};
  }

  Framework build() const {
    if (family == "harmonic-chain") {
      return harmonic_chain(n, sign_vector(n)).with_family({family, n});
    }
    if (family == "diminishing-rectangles") {
      return diminishing_rectangles(n).with_family({family, n});
    }
    if (family == "dyadic-cobweb") {
      return dyadic_cobweb(levels, cobweb_dir())
          .with_family({family + "-" + direction, levels});
    }
    if (family == "winerack") {
      return winerack(bays).with_family({family, bays});
    }
    if (family == "cantor-tree") {
      return cantor_tree(depth).with_family({family, depth});
    }
    if (family == "strip-tower") {
      return strip_tower(cells, aspect).with_family({family, cells});
    }
    if (family == "periodic-lattice") {
      return periodic_lattice(lattice_cell(), nx, ny, {1, 0}, lattice_ty())
          .with_family({family + "-" + cell, std::max(nx, ny)});
    }
    throw ValidationError(ValidationError::Kind::BadInput,
                          "unknown family: " + family);
  }

  FrameworkFamily chain() const {
    if (family == "harmonic-chain") {
      std::vector<int> pattern;
      for (char c : signs) pattern.push_back(c == '+' ? 1 : -1);
      return harmonic_chain_family(pattern);
    }
    if (family == "diminishing-rectangles") return diminishing_rectangles_family();
    if (family == "dyadic-cobweb") return dyadic_cobweb_family(cobweb_dir());
    if (family == "winerack") return winerack_family();
    if (family == "cantor-tree") return cantor_tree_family();
    if (family == "strip-tower") return strip_tower_family(aspect);
    if (family == "periodic-lattice") {
      return periodic_lattice_family(lattice_cell(), {1, 0}, lattice_ty(),
                                     family + "-" + cell);
    }
    throw ValidationError(ValidationError::Kind::BadInput,
                          "unknown family: " + family);
  }
};

FourierCoeffs parse_fourier_spec(const std::string& spec, int N,
                                 double* tail_bound) {
  FourierCoeffs out;
  *tail_bound = 0.0;
  auto power_tail = [N](double p) {
    double acc = 0;
    for (int n = N + 1; n <= 2000000; ++n) acc += std::pow(n, -p);
    acc += std::pow(2000000.0, 1 - p) / (p - 1);
    return acc;
  };
  if (spec == "1/n^2") {
    for (int n = 1; n <= N; ++n) out.a.push_back(1.0 / (n * n));
    *tail_bound = power_tail(2.0);
    return out;
  }
  if (spec == "1/n^3") {
    for (int n = 1; n <= N; ++n) out.a.push_back(1.0 / (n * n * n));
    *tail_bound = power_tail(3.0);
    return out;
  }
  if (spec == "square") {
    out.b.assign(N, 0.0);
    for (int n = 1; n <= N; n += 2) {
      out.b[n - 1] = 4.0 / (std::numbers::pi * n);
    }
    // square-wave tail is not absolutely summable at a useful rate;
    // reported as the partial-sum comparison only
    *tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  throw ValidationError(ValidationError::Kind::BadInput,
                        "unknown fourier spec: " + spec +
                            " (use 1/n^2, 1/n^3, square)");
}

std::string trajectory_csv(const FlexTrajectory& traj) {
  std::ostringstream ss;
  ss << csv_header();
  const int n = static_cast<int>(traj.positions.front().size());
  ss << "t";
  for (int v = 0; v < n; ++v) ss << ", v" << v << "x, v" << v << "y";
  ss << "\n";
  for (std::size_t k = 0; k < traj.positions.size(); ++k) {
    ss << format_double(traj.times[k]);
    for (const Vec2& p : traj.positions[k]) {
      ss << ", " << format_double(p.x) << ", " << format_double(p.y);
    }
    ss << "\n";
  }
  return ss.str();
}

int cmd_generate(const FamilySpec& spec, const std::string& out) {
  const Framework f = spec.build();
  json j = framework_to_json(f);
  j["meta"] = meta_block();
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_analyze(const std::string& in, double tol, const std::string& out) {
  const Framework f = framework_from_json(json::parse(read_text_file(in)));
  const FlexSpaceReport rep = flex_space(f, tol);
  json j = flex_report_to_json(rep);
  j["meta"] = meta_block();
  write_output(out, j.dump(2) + "\n");
  return rep.proper_dim > 0 ? kExitNegative : 0;
}

int cmd_flex(const std::string& in, std::pair<int, int> pins, int steps,
             double arc_step, double proj_tol, const std::string& out,
             const std::string& svg_out, int svg_sample) {
  const Framework f = framework_from_json(json::parse(read_text_file(in)));
  SimulateOptions opt;
  opt.steps = steps;
  opt.arc_step = arc_step;
  opt.proj_tol = proj_tol;
  const FlexTrajectory traj = simulate_flex(f, {pins.first, pins.second}, opt);
  write_output(out, trajectory_csv(traj));
  if (!svg_out.empty()) {
    const int k = svg_sample < 0
                      ? static_cast<int>(traj.positions.size()) - 1
                      : std::min<int>(svg_sample, traj.positions.size() - 1);
    const Framework snap = f.with_positions(traj.positions[k]);
    write_output(svg_out, render_svg(snap));
  }
  if (traj.stall) {
    std::cerr << "note: trajectory stalled at step " << traj.stall->step
              << ": " << traj.stall->reason << "\n";
  }
  return traj.proper ? 0 : kExitNegative;
}

int cmd_sweep(const FamilySpec& spec, int i, int j, int rmax, int steps,
              double arc_step, int threads, const std::string& out) {
  const FrameworkFamily fam = spec.chain();
  const int pi = i >= 0 ? i : fam.pair_i;
  const int pj = j >= 0 ? j : fam.pair_j;
  if (pi < 0 || pj < 0) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "family has no default pair; pass --i and --j");
  }
  ProtocolOptions opt;
  opt.steps = steps;
  opt.arc_step = arc_step;
  opt.threads = threads;
  const ProtocolReport rep = chain_flex_protocol(fam, pi, pj, rmax, opt);
  std::ostringstream ss;
  ss << csv_header();
  ss << "rank, delta, M, residual, verdict\n";
  for (const auto& row : rep.rows) {
    ss << row.rank << ", " << format_double(row.delta) << ", "
       << format_double(row.M) << ", " << format_double(row.residual) << ", "
       << rep.verdict << "\n";
  }
  write_output(out, ss.str());
  return rep.satisfied ? 0 : kExitNegative;
}

TrigPoly poly_from_json(const json& j) {
  TrigPoly p;
  for (const auto& m : j.at("monomials")) {
    p.terms.push_back({m.at("coeff").get<double>(),
                       m.value("cos_theta", 0), m.value("sin_theta", 0),
                       m.value("cos_phi", 0), m.value("sin_phi", 0)});
  }
  return p;
}

json form_to_json(const MultiAngleForm& form) {
  json j;
  j["constant"] = form.constant;
  auto& terms = j["terms"] = json::array();
  for (const auto& t : form.terms) {
    terms.push_back({{"amplitude", t.amplitude},
                     {"r", t.r},
                     {"s", t.s},
                     {"phase", t.phase}});
  }
  return j;
}

MultiAngleForm form_from_json(const json& j) {
  MultiAngleForm form;
  form.constant = j.value("constant", 0.0);
  for (const auto& t : j.at("terms")) {
    form.terms.push_back({t.at("amplitude").get<double>(), t.at("r").get<int>(),
                          t.at("s").get<int>(), t.value("phase", 0.0)});
  }
  return form;
}

int cmd_kempe_expand(const std::string& in, const std::string& out) {
  const TrigPoly poly = poly_from_json(json::parse(read_text_file(in)));
  const MultiAngleForm form = angle_expand(poly);
  json j = form_to_json(form);
  j["meta"] = meta_block();
  write_output(out, j.dump(2) + "\n");
  return 0;
}

struct KempeBuildArgs {
  std::string form_path;
  std::string fourier;
  int N = 4;
  bool close_loop = false;
};

Linkage build_linkage(const KempeBuildArgs& a, double* tail_bound,
                      PointednessReport* pointedness) {
  *tail_bound = 0.0;
  if (!a.fourier.empty()) {
    const FourierCoeffs coeffs = parse_fourier_spec(a.fourier, a.N, tail_bound);
    return fourier_linkage(coeffs, a.N, pointedness, *tail_bound);
  }
  if (a.form_path.empty()) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "pass --form or --fourier");
  }
  const MultiAngleForm form =
      form_from_json(json::parse(read_text_file(a.form_path)));
  AssembleOptions opt;
  opt.close_loop = a.close_loop;
  return assemble_curve_linkage(form, opt);
}

int cmd_kempe_build(const KempeBuildArgs& a, const std::string& out) {
  double tail = 0;
  PointednessReport pointedness;
  const Linkage l = build_linkage(a, &tail, &pointedness);
  json j = linkage_to_json(l);
  j["meta"] = meta_block();
  if (!a.fourier.empty()) {
    j["pointedness"] = {
        {"chain_bar_lengths", pointedness.chain_bar_lengths},
        {"non_increasing", pointedness.non_increasing},
        {"tail_bound", std::isfinite(tail) ? json(tail) : json()}};
  }
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_kempe_trace(const KempeBuildArgs& a, const std::string& linkage_path,
                    int samples, const std::string& out,
                    const std::string& svg_out, const std::string& report_out) {
  double tail = 0;
  PointednessReport pointedness;
  Linkage l;
  if (!linkage_path.empty()) {
    l = linkage_from_json(json::parse(read_text_file(linkage_path)));
  } else {
    l = build_linkage(a, &tail, &pointedness);
  }
  const TraceResult tr = trace(l, samples);

  std::ostringstream ss;
  ss << csv_header();
  ss << "t, tracer_x, tracer_y, residual, g\n";
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    ss << format_double(tr.driver_angle[k]) << ", "
       << format_double(tr.points[k].x) << ", " << format_double(tr.points[k].y)
       << ", " << format_double(tr.residual[k]) << ", "
       << format_double(tr.g[k]) << "\n";
  }
  write_output(out, ss.str());

  double max_dev_partial = 0;
  if (!a.fourier.empty()) {
    const FourierCoeffs coeffs = parse_fourier_spec(a.fourier, a.N, &tail);
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
      const double t = tr.driver_angle[k];
      double partial = 0;
      for (int n = 1; n <= a.N; ++n) {
        if (n <= static_cast<int>(coeffs.a.size())) {
          partial += coeffs.a[n - 1] * std::cos(n * t);
        }
        if (n <= static_cast<int>(coeffs.b.size())) {
          partial += coeffs.b[n - 1] * std::sin(n * t);
        }
      }
      max_dev_partial =
          std::max(max_dev_partial,
                   std::abs(tr.points[k].y - l.tracer_origin.y - partial));
    }
  }

  if (!report_out.empty()) {
    json rep;
    rep["meta"] = meta_block();
    rep["samples"] = static_cast<int>(tr.points.size());
    rep["max_residual"] = tr.max_residual;
    rep["g_strictly_increasing"] = tr.g_strictly_increasing;
    rep["unique_everywhere"] = tr.unique_everywhere;
    rep["composed_tolerance"] = l.composed_tolerance;
    if (!a.fourier.empty()) {
      rep["max_deviation_from_partial_sum"] = max_dev_partial;
      rep["tail_bound"] = std::isfinite(tail) ? json(tail) : json();
      rep["pointedness_non_increasing"] = pointedness.non_increasing;
    }
    write_output(report_out, rep.dump(2) + "\n");
  }
  if (!svg_out.empty()) {
    std::vector<Vec2> target;
    if (!a.fourier.empty()) {
      const FourierCoeffs coeffs = parse_fourier_spec(a.fourier, a.N, &tail);
      for (std::size_t k = 0; k < tr.points.size(); ++k) {
        const double t = tr.driver_angle[k];
        double y = 0;
        for (int n = 1; n <= a.N; ++n) {
          if (n <= static_cast<int>(coeffs.a.size())) {
            y += coeffs.a[n - 1] * std::cos(n * t);
          }
          if (n <= static_cast<int>(coeffs.b.size())) {
            y += coeffs.b[n - 1] * std::sin(n * t);
          }
        }
        target.push_back(Vec2{std::cos(t), y} + l.tracer_origin);
      }
    }
    write_output(svg_out, render_svg(l.framework, tr.points, target));
  }
  return tr.g_strictly_increasing && tr.unique_everywhere &&
                 tr.failed_samples == 0
             ? 0
             : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  g_command = command_echo(argc, argv);
  CLI::App app{"rigor: planar bar-joint framework rigidity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  int threads = 1;
  if (const char* env = std::getenv("RIGOR_THREADS")) {
    threads = std::max(1, std::atoi(env));
  }

  // generate
  auto* gen = app.add_subcommand("generate", "emit a framework as JSON");
  FamilySpec gen_spec;
  gen_spec.add_options(gen);
  std::string gen_out;
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "flex-space report for a framework");
  std::string ana_in, ana_out;
  double ana_tol = kNullTol;
  ana->add_option("--in", ana_in, "framework JSON")->required();
  ana->add_option("--tol", ana_tol, "null-space tolerance");
  ana->add_option("-o,--out", ana_out, "report path (default stdout)");

  // flex
  auto* flx = app.add_subcommand("flex", "simulate a continuous flex");
  std::string flx_in, flx_out, flx_svg;
  std::string flx_pins = "0,1";
  int flx_steps = 100, flx_svg_sample = -1;
  double flx_arc = 0.01, flx_proj_tol = 1e-10;
  flx->add_option("--in", flx_in, "framework JSON")->required();
  flx->add_option("--pins", flx_pins, "base edge as i,j");
  flx->add_option("--steps", flx_steps, "continuation steps");
  flx->add_option("--arc-step", flx_arc, "arc length per step");
  flx->add_option("--proj-tol", flx_proj_tol, "projection tolerance");
  flx->add_option("-o,--out", flx_out, "trajectory CSV path");
  flx->add_option("--svg", flx_svg, "SVG snapshot path");
  flx->add_option("--svg-sample", flx_svg_sample, "sample index (default last)");

  // sweep
  auto* swp = app.add_subcommand("sweep", "chain flex protocol over a family");
  FamilySpec swp_spec;
  swp_spec.add_options(swp);
  std::string swp_out;
  int swp_i = -1, swp_j = -1, swp_rmax = 6, swp_steps = 50;
  double swp_arc = 0.01;
  swp->add_option("--i", swp_i, "designated vertex i (default family pair)");
  swp->add_option("--j", swp_j, "designated vertex j");
  swp->add_option("--rmax", swp_rmax, "maximum rank");
  swp->add_option("--steps", swp_steps, "continuation steps per rank");
  swp->add_option("--arc-step", swp_arc, "arc length per step");
  swp->add_option("--threads", threads, "parallel ranks");
  swp->add_option("-o,--out", swp_out, "protocol CSV path");

  // kempe
  auto* kmp = app.add_subcommand("kempe", "curve-to-linkage construction");
  kmp->require_subcommand(1);
  auto* kexp = kmp->add_subcommand("expand", "multiple-angle expansion");
  std::string kexp_in, kexp_out;
  kexp->add_option("--in", kexp_in, "trig polynomial JSON")->required();
  kexp->add_option("-o,--out", kexp_out, "form JSON path");

  KempeBuildArgs kargs;
  auto* kbld = kmp->add_subcommand("build", "assemble a linkage");
  std::string kbld_out;
  kbld->add_option("--form", kargs.form_path, "multi-angle form JSON");
  kbld->add_option("--fourier", kargs.fourier, "fourier spec: 1/n^2|1/n^3|square");
  kbld->add_option("--N", kargs.N, "fourier truncation order");
  kbld->add_flag("--close-loop", kargs.close_loop, "pin tracer to x = C");
  kbld->add_option("-o,--out", kbld_out, "linkage JSON path");

  auto* ktrc = kmp->add_subcommand("trace", "drive a linkage and record it");
  std::string ktrc_in, ktrc_out, ktrc_svg, ktrc_rep;
  int ktrc_samples = 100;
  ktrc->add_option("--in", ktrc_in, "linkage JSON (else --form/--fourier)");
  ktrc->add_option("--form", kargs.form_path, "multi-angle form JSON");
  ktrc->add_option("--fourier", kargs.fourier, "fourier spec");
  ktrc->add_option("--N", kargs.N, "fourier truncation order");
  ktrc->add_option("--samples", ktrc_samples, "trace samples");
  ktrc->add_option("-o,--out", ktrc_out, "trace CSV path");
  ktrc->add_option("--svg", ktrc_svg, "SVG overlay path");
  ktrc->add_option("--report", ktrc_rep, "validity report JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_generate(gen_spec, gen_out);
    if (*ana) return cmd_analyze(ana_in, ana_tol, ana_out);
    if (*flx) {
      const auto comma = flx_pins.find(',');
      if (comma == std::string::npos) {
        throw ValidationError(ValidationError::Kind::BadInput,
                              "--pins expects i,j");
      }
      const int pi = std::stoi(flx_pins.substr(0, comma));
      const int pj = std::stoi(flx_pins.substr(comma + 1));
      return cmd_flex(flx_in, {pi, pj}, flx_steps, flx_arc, flx_proj_tol,
                      flx_out, flx_svg, flx_svg_sample);
    }
    if (*swp) {
      return cmd_sweep(swp_spec, swp_i, swp_j, swp_rmax, swp_steps, swp_arc,
                       threads, swp_out);
    }
    if (*kmp) {
      if (*kexp) return cmd_kempe_expand(kexp_in, kexp_out);
      if (*kbld) return cmd_kempe_build(kargs, kbld_out);
      if (*ktrc) {
        return cmd_kempe_trace(kargs, ktrc_in, ktrc_samples, ktrc_out,
                               ktrc_svg, ktrc_rep);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
