#pragma once

namespace diskpat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diskpat
