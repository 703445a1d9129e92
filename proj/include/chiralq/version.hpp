#pragma once

namespace chiralq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chiralq
