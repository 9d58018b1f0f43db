#pragma once

namespace shiftlab {

inline constexpr const char* kToolName = "shiftlab";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace shiftlab
