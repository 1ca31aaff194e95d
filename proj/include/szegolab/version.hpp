#pragma once

namespace szegolab {

inline constexpr const char* kVersionTag = "szegolab-0.1.0";

}  // namespace szegolab
