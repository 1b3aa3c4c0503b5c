#pragma once

namespace fadingnet {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "fadingnet";

inline const char* tool_version() { return "fadingnet 0.1.0"; }

}  // namespace fadingnet
