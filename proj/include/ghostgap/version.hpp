#pragma once

#include <string_view>

namespace ghostgap {

inline constexpr std::string_view kToolName = "ghostgap";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline std::string tool_version_string() {
    return std::string(kToolName) + " " + std::string(kToolVersion);
}

}  // namespace ghostgap
