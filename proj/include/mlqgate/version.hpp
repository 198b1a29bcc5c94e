#pragma once

namespace mlqgate {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mlqgate
