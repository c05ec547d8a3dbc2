#pragma once

namespace holo {

inline constexpr const char* version = "0.1.0";

} // namespace holo
