#pragma once

namespace sulfsim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace sulfsim
