#pragma once

namespace lorentz {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lorentz
