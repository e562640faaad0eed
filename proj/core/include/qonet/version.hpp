#pragma once

namespace qonet {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qonet
