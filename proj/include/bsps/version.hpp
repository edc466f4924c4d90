#pragma once

namespace bsps {

inline constexpr const char* kVersion = "0.1.0";

} // namespace bsps
