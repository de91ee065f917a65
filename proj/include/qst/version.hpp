#pragma once

namespace qst {

inline constexpr const char* kVersionTag = "qst 0.1.0";

}  // namespace qst
