#pragma once

namespace mactt {

inline constexpr int kDefaultTruncation = 6;

/// Truncation dimension used when a caller does not pass one explicitly.
/// Reads MACTT_TRUNCATION once; falls back to kDefaultTruncation.
int default_truncation();

}  // namespace mactt
