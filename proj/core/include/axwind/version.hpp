#pragma once

namespace axwind {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace axwind
