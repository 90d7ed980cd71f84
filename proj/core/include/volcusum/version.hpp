#pragma once

namespace volcusum {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace volcusum
