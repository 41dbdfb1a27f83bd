#pragma once

namespace fpx {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace fpx
