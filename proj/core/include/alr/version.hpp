#pragma once

namespace alr {

inline constexpr const char* kVersion = "0.1.0";

}
