#pragma once

namespace kgz {
inline constexpr const char* kVersion = "1.0.0";
}
