#pragma once

namespace emso {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kInterfaceVersion = "1";

}  // namespace emso
