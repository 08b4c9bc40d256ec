#pragma once

namespace defectchain {

inline constexpr const char* version = "1.0.0";

} // namespace defectchain
