#pragma once

namespace qprob {

inline constexpr const char* k_tool_name = "qprob";
inline constexpr const char* k_tool_version = "0.1.0";

}
