#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fatigue/errors.hpp"
#include "fatigue/sn_table.hpp"

namespace fatigue {

// Block loading: an ordered list of upper load levels over a fixed lower
// level, each held for an explicit cycle count, a consumed-life fraction
// (resolved through an S-N table), or until failure.

enum class DurationKind { ExplicitCycles, ConsumedFraction, ToFailure };

struct LoadBlock {
  double s_max = 0.0;
  DurationKind kind = DurationKind::ToFailure;
  std::uint64_t cycles = 0; // valid when kind == ExplicitCycles
  double eta = 0.0;         // valid when kind == ConsumedFraction

  static LoadBlock explicit_cycles(double s_max, std::uint64_t cycles) {
    return {s_max, DurationKind::ExplicitCycles, cycles, 0.0};
  }
  static LoadBlock consumed_fraction(double s_max, double eta) {
    return {s_max, DurationKind::ConsumedFraction, 0, eta};
  }
  static LoadBlock to_failure(double s_max) {
    return {s_max, DurationKind::ToFailure, 0, 0.0};
  }
};

struct LoadScenario {
  double s_min = 0.2;
  double fc = 70.0; // MPa
  std::vector<LoadBlock> blocks;

  // Throws InvalidScenario on empty block list, s_max <= s_min, or
  // eta outside [0, 1].
  void validate() const;
};

struct CycleDiscretization {
  int substeps_per_branch = 20;
};

// Replaces every ConsumedFraction duration by round(eta * N^f) cycles using
// the table; ExplicitCycles and ToFailure pass through. Idempotent.
LoadScenario resolve_durations(const LoadScenario& scenario, const SNTable& sn);

enum class BranchTag { Up, Down };

// Materializes the per-substep stress targets of an explicit scenario:
// per cycle an up-ramp s_min*fc -> s_max*fc and a down-ramp back, each split
// into substeps (total = sum of cycles * 2 * substeps). The initial ramp from
// the unloaded state is the simulator's job. Intended for small scenarios
// (tests, traces); the simulator drives long runs directly.
std::vector<std::pair<double, BranchTag>> stress_targets(
    const LoadScenario& scenario, const CycleDiscretization& disc);

} // namespace fatigue
