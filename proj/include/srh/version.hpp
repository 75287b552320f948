#pragma once

namespace srh {
inline constexpr const char* version = "0.1.0";
}
