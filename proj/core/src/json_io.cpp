#include "rigor/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace rigor {

using nlohmann::json;

json framework_to_json(const Framework& f) {
  json j;
  j["dimension"] = 2;
  auto& verts = j["vertices"] = json::array();
  for (const Vec2& p : f.vertices()) verts.push_back({p.x, p.y});
  auto& edges = j["edges"] = json::array();
  for (const Edge& e : f.edges()) edges.push_back({e.i, e.j});
  if (!f.labels().empty()) j["labels"] = f.labels();
  if (f.family()) {
    j["family"] = {{"name", f.family()->name}, {"rank", f.family()->rank}};
  }
  return j;
}

Framework framework_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "framework JSON needs vertices and edges");
  }
  if (j.contains("dimension") && j["dimension"].get<int>() != 2) {
    throw ValidationError(ValidationError::Kind::BadInput,
                          "only dimension 2 is supported");
  }
  std::vector<Vec2> pos;
  for (const auto& v : j["vertices"]) {
    pos.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j["labels"].get<std::vector<std::string>>();
  }
  Framework f = Framework::build(std::move(pos), edges, std::move(labels));
  if (j.contains("family")) {
    f = f.with_family({j["family"].at("name").get<std::string>(),
                       j["family"].at("rank").get<int>()});
  }
  return f;
}

json flex_report_to_json(const FlexSpaceReport& rep) {
  json j;
  j["singular_values"] = rep.singular_values;  // ascending
  j["nullity"] = rep.nullity;
  j["trivial_dim"] = rep.trivial_dim;
  j["proper_dim"] = rep.proper_dim;
  j["smallest_nontrivial_sv"] = rep.smallest_nontrivial_sv;
  j["tol"] = rep.tol;
  j["flags"] = {{"degenerate_geometry", rep.degenerate},
                {"infinitesimally_rigid", rep.proper_dim == 0}};
  auto& flexes = j["flex_vectors"] = json::array();
  for (int k = 0; k < rep.proper_dim; ++k) {
    json vec = json::array();
    for (int v = 0; 2 * v + 1 < rep.proper_basis.rows(); ++v) {
      vec.push_back({rep.proper_basis(2 * v, k), rep.proper_basis(2 * v + 1, k)});
    }
    flexes.push_back(std::move(vec));
  }
  return j;
}

json linkage_to_json(const Linkage& l) {
  json j = framework_to_json(l.framework);
  j["driver"] = {{"v1", l.v1}, {"v2", l.v2}, {"v3", l.v3}};
  j["tracer"] = l.tracer;
  j["range"] = {l.range[0], l.range[1]};
  auto& gs = j["gadgets"] = json::array();
  for (const auto& g : l.gadgets) {
    gs.push_back({{"kind", g.kind},
                  {"vertex_indices", g.vertices},
                  {"tolerance", g.tolerance}});
  }
  j["pins"] = l.pins;
  j["driver_radius"] = l.driver_radius;
  j["tracer_origin"] = {l.tracer_origin.x, l.tracer_origin.y};
  j["composed_tolerance"] = l.composed_tolerance;
  if (l.phi) {
    j["phi"] = {{"joint", l.phi->joint},
                {"radius", l.phi->radius},
                {"value", l.phi->value}};
  }
  return j;
}

Linkage linkage_from_json(const json& j) {
  Linkage l;
  l.framework = framework_from_json(j);
  l.v1 = j.at("driver").at("v1").get<int>();
  l.v2 = j.at("driver").at("v2").get<int>();
  l.v3 = j.at("driver").at("v3").get<int>();
  l.tracer = j.at("tracer").get<int>();
  l.range = {j.at("range").at(0).get<double>(), j.at("range").at(1).get<double>()};
  if (j.contains("gadgets")) {
    for (const auto& g : j["gadgets"]) {
      l.gadgets.push_back({g.at("kind").get<std::string>(),
                           g.at("vertex_indices").get<std::vector<int>>(),
                           g.at("tolerance").get<double>()});
    }
  }
  if (j.contains("pins")) l.pins = j["pins"].get<std::vector<int>>();
  if (j.contains("driver_radius")) {
    l.driver_radius = j["driver_radius"].get<double>();
  } else {
    l.driver_radius =
        dist(l.framework.vertex(l.v1), l.framework.vertex(l.v3));
  }
  if (j.contains("tracer_origin")) {
    l.tracer_origin = {j["tracer_origin"].at(0).get<double>(),
                       j["tracer_origin"].at(1).get<double>()};
  }
  if (j.contains("composed_tolerance")) {
    l.composed_tolerance = j["composed_tolerance"].get<double>();
  }
  if (j.contains("phi")) {
    PhiDriver phi;
    phi.joint = j["phi"].at("joint").get<int>();
    phi.radius = j["phi"].at("radius").get<double>();
    phi.value = j["phi"].at("value").get<double>();
    l.phi = phi;
  }
  return l;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp);
    }
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace rigor
