#pragma once

namespace tsg {
inline constexpr const char* kVersion = "0.1.0";
}
