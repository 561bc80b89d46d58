#pragma once

namespace qeit {

inline constexpr const char* version = "1.0.0";

}  // namespace qeit
