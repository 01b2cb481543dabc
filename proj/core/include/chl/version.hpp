#pragma once

namespace chl {

inline constexpr const char* kVersion = "1.0.0";

} // namespace chl
