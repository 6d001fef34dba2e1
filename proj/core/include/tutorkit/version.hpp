#pragma once

namespace tutorkit {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace tutorkit
