#pragma once

namespace sphval {

inline constexpr const char* version = "0.1.0";

}  // namespace sphval
