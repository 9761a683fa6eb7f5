#pragma once

namespace cohest {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cohest
