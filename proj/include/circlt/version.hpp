#pragma once

namespace circlt {
inline constexpr const char* kLibraryName = "circlt";
inline constexpr const char* kVersion = "0.1.0";
}  // namespace circlt
