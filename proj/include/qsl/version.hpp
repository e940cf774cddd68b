#pragma once

namespace qsl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsl
