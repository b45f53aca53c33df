#pragma once

namespace kwise {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kwise
