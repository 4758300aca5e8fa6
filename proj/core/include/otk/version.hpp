#pragma once

namespace otk {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace otk
