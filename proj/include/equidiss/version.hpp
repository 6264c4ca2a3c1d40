#pragma once

namespace equidiss {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace equidiss
