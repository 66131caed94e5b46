#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "rigor/framework.hpp"
#include "rigor/linkage.hpp"
#include "rigor/rigidity.hpp"

namespace rigor {

// Framework interchange JSON:
//   {"dimension": 2, "vertices": [[x,y],...], "edges": [[i,j],...],
//    "labels": [...]?, "family": {"name":..., "rank":...}?}
nlohmann::json framework_to_json(const Framework& f);
Framework framework_from_json(const nlohmann::json& j);

nlohmann::json flex_report_to_json(const FlexSpaceReport& rep);

// Linkage JSON: framework fields plus driver/tracer/range/gadgets.
nlohmann::json linkage_to_json(const Linkage& l);
Linkage linkage_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
// Writes atomically (temp file + rename).
void atomic_write_text(const std::string& path, const std::string& content);

// Fixed 17-significant-digit float formatting for CSV outputs.
std::string format_double(double x);

}  // namespace rigor
