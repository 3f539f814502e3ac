#pragma once

namespace snc {
inline constexpr const char* kVersion = "0.1.0";
}
