#pragma once

namespace cgl {
inline constexpr const char* kVersion = "0.1.0";
}
