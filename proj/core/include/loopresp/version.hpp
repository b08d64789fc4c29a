#pragma once

namespace loopresp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace loopresp
