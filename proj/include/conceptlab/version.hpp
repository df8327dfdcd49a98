#pragma once

namespace conceptlab {

inline constexpr const char* kToolVersion = "conceptlab 0.1.0";

}  // namespace conceptlab
