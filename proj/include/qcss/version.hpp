#pragma once

namespace qcss {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qcss
