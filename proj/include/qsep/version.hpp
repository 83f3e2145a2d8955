#pragma once

namespace qsep {

inline constexpr const char* kToolVersion = "qsep 0.1.0";

}  // namespace qsep
