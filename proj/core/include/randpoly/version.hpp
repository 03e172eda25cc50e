#pragma once

#define RANDPOLY_VERSION_MAJOR 0
#define RANDPOLY_VERSION_MINOR 1
#define RANDPOLY_VERSION_PATCH 0

namespace randpoly {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace randpoly
