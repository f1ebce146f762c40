#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fatigue/simulator.hpp"

namespace fatigue {

// Iterative remaining-lifetime prediction across multi-level block loading.
// Each load jump i contributes a correction delta_eta_i = 1 - eta_out_i,
// where eta_out_i is a predictor estimate of the accumulated lifetime given
// (S_i, dS_i, eta_new_i); the corrections accumulate into the running sum
// and shrink (or extend) the remaining life at the final level.

struct MultiLevelScenario {
  std::vector<double> s_max; // n levels
  std::vector<double> eta;   // n-1 consumed fractions (final level open)
  double s_min = 0.2;

  void validate() const;
};

struct JumpRecord {
  int i = 0; // 1-based jump index
  double delta_s = 0.0;
  double eta_new = 0.0;
  double eta_out = 0.0;
  double delta_eta = 0.0;
  double sum_eta = 0.0;
  double eta_rem_next = 0.0;
};

struct LifetimeTrace {
  std::vector<JumpRecord> jumps;
  // Set when the eta_new >= 1 check fires before the final level.
  std::optional<int> failure_at_level;
  double remaining_raw = 0.0; // may be negative when corrections overshoot
  double remaining = 0.0;     // clamped to [0, 1]
};

using Predictor = std::function<double(double s1max, double delta_smax,
                                       double eta_cons)>;

// Plain Palmgren-Miner accumulation.
double pm_sum(const std::vector<double>& etas);

// Throws PredictorOutOfRange when an eta_out leaves [out_min, out_max].
LifetimeTrace predict_remaining(const Predictor& predictor,
                                const MultiLevelScenario& scenario,
                                double out_min = 0.0, double out_max = 2.0);

// Ground truth: runs the blocks in the simulator; the remaining fraction is
// N_last / N_last^f. Scenarios failing before the final level are flagged
// excluded instead of producing a fraction.
struct OracleRemaining {
  bool excluded = false;
  std::size_t failed_at_block = 0; // valid when excluded
  double remaining = 0.0;
};

OracleRemaining oracle_remaining(const MaterialParameters& p, const SNTable& sn,
                                 const MultiLevelScenario& scenario,
                                 const SimLimits& limits,
                                 const CycleDiscretization& disc);

// Accumulated lifetime actually spent when the scenario is driven to failure
// according to the trace: consumed fractions of completed blocks plus the
// (clamped) remaining fraction at the level where life runs out.
double accumulated_at_failure(const MultiLevelScenario& scenario,
                              const LifetimeTrace& trace);

} // namespace fatigue
