#pragma once

namespace xiboot {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xiboot
