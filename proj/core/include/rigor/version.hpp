#pragma once

namespace rigor {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rigor
