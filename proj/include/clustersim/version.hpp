#pragma once

namespace clustersim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace clustersim
