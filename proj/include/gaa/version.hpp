#pragma once

namespace gaa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gaa
