#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fatigue/load_protocol.hpp"
#include "fatigue/material.hpp"
#include "fatigue/sn_table.hpp"

namespace fatigue {

// Cycle-by-cycle fatigue driver. Failure is declared when the tangent becomes
// singular (kappa <= 0 or D(omega2) <= 0) or when omega2 reaches omega_crit.
// N^f counts fully completed cycles: failure mid-cycle attributes to the
// current, uncounted cycle.

struct SimLimits {
  std::uint64_t max_cycles = 10'000'000;
  double omega_crit = 10.0;
};

enum class FailureMode { None, TangentSingular, OmegaCritical };

struct ConstantAmplitudeResult {
  bool runout = false;
  std::uint64_t n_f = 0;
  FailureMode mode = FailureMode::None;
};

ConstantAmplitudeResult run_constant_amplitude(const MaterialParameters& p,
                                               double s_max, double s_min,
                                               const SimLimits& limits,
                                               const CycleDiscretization& disc);

// Low-level primitive: advances `state` by up to `cycles` cycles between
// s_min*fc and s_max*fc (no initial ramp). Returns completed cycles and
// whether failure occurred.
struct CycleRunOutcome {
  std::uint64_t completed = 0;
  bool failed = false;
  FailureMode mode = FailureMode::None;
};

CycleRunOutcome run_cycles(const MaterialParameters& p, UniaxialState& state,
                           double s_max, double s_min, std::uint64_t cycles,
                           const SimLimits& limits,
                           const CycleDiscretization& disc);

// One constant-amplitude run per level; throws MissingSNEntry for runouts.
// Runs parallelize over levels; the table is assembled in level order.
SNTable build_sn_table(const MaterialParameters& p,
                       const std::vector<double>& levels, double s_min,
                       const SimLimits& limits, const CycleDiscretization& disc,
                       int threads = 1);

struct TwoStageResult {
  double eta_cons = 0.0;
  double eta_rem = 0.0;
  double sum_eta = 0.0;
};

// Two-block scenario: round(eta_cons * N1^f) cycles at s1max, then s2max to
// failure; eta_rem = N2 / N2^f. eta_cons = 0 skips the first block (the
// second block then reproduces its constant-amplitude run, so sum_eta = 1
// exactly); eta_cons = 1 short-circuits to sum_eta = 1.
TwoStageResult run_two_stage(const MaterialParameters& p, double s1max,
                             double s2max, double s_min, double eta_cons,
                             const SNTable& sn, const SimLimits& limits,
                             const CycleDiscretization& disc);

struct ScenarioResult {
  bool failed = false;
  std::optional<std::size_t> failure_block;
  FailureMode mode = FailureMode::None;
  std::vector<std::uint64_t> cycles_per_block;
  // Per completed cycle: strain magnitude at the upper and lower reversal and
  // damage at cycle end. Indices align across the three vectors.
  std::vector<double> eps_top;
  std::vector<double> eps_bot;
  std::vector<double> damage_history;
};

// Full history capture; durations must be resolvable (no ConsumedFraction;
// use resolve_durations first). Only the final block may be ToFailure.
ScenarioResult run_scenario(const MaterialParameters& p,
                            const LoadScenario& scenario,
                            const SimLimits& limits,
                            const CycleDiscretization& disc);

} // namespace fatigue
