#pragma once

namespace opinionsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace opinionsim
