#pragma once

namespace condlint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace condlint
