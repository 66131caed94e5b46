#pragma once

#include <string>
#include <vector>

#include "rigor/framework.hpp"

namespace rigor {

// Deterministic SVG snapshot: fixed viewport from the bounding box with 5%
// margin, edges as lines, vertices as circles, optional traced path as a
// polyline overlay.
std::string render_svg(const Framework& f,
                       const std::vector<Vec2>& trace_path = {},
                       const std::vector<Vec2>& target_path = {});

}  // namespace rigor
