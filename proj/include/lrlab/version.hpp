#pragma once

namespace lrlab {

inline constexpr const char* kToolName = "lrlab";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace lrlab
