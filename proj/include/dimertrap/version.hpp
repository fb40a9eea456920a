#pragma once

namespace dimertrap {

inline constexpr const char* version = "0.1.0";

}  // namespace dimertrap
