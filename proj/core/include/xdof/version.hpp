#pragma once

namespace xdof {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xdof
