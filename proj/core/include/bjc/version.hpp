#pragma once

namespace bjc {

// Library and tool version, embedded in every serialized table.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace bjc
