#pragma once

namespace wannuity {

inline constexpr const char* kVersion = "0.1.0";

} // namespace wannuity
