#pragma once

namespace specnorm {
inline constexpr const char* kVersion = "0.1.0";
}
