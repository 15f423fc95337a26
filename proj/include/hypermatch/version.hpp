#pragma once

namespace hypermatch {

inline constexpr const char* kVersion = "1.0.0";

// Generator family is part of the reproducibility contract: archived CSVs
// can only be regenerated while this identifier stays the same.
inline constexpr const char* kRngFamily = "splitmix64/mask-reject-v1";

} // namespace hypermatch
