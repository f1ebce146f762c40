#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fatigue/errors.hpp"

namespace fatigue {

// Constant-amplitude lifetimes N^f keyed by the upper load level, for one
// fixed lower level. Entries must be strictly decreasing in s_max; the
// factory below enforces this.
struct SNTable {
  double s_min = 0.2;
  std::map<double, std::uint64_t> entries;
  std::uint64_t params_fingerprint = 0;

  // Throws MissingSNEntry when the level is absent (exact key match).
  std::uint64_t lookup(double s_max) const;

  // Validates strict monotonicity (N^f decreasing in s_max).
  static SNTable make(double s_min, std::map<double, std::uint64_t> entries,
                      std::uint64_t fingerprint);
};

} // namespace fatigue
