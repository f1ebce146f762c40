#include "fatigue/sn_table.hpp"

#include <cmath>
#include <string>

namespace fatigue {

std::uint64_t SNTable::lookup(double s_max) const {
  // Tolerant key match: levels are grid multiples of 0.05 but may arrive
  // through different arithmetic paths.
  auto it = entries.lower_bound(s_max - 1e-9);
  if (it != entries.end() && std::abs(it->first - s_max) < 1e-9) {
    return it->second;
  }
  throw MissingSNEntry("no S-N entry for s_max=" + std::to_string(s_max));
}

SNTable SNTable::make(double s_min, std::map<double, std::uint64_t> entries,
                      std::uint64_t fingerprint) {
  const std::uint64_t* prev = nullptr;
  for (const auto& [level, n_f] : entries) {
    if (prev != nullptr && n_f >= *prev) {
      throw MissingSNEntry("S-N table not strictly decreasing at s_max=" +
                           std::to_string(level));
    }
    prev = &n_f;
  }
  SNTable t;
  t.s_min = s_min;
  t.entries = std::move(entries);
  t.params_fingerprint = fingerprint;
  return t;
}

} // namespace fatigue
