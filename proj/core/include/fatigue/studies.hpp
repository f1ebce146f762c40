#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fatigue/lifetime.hpp"

namespace fatigue {

// Validation campaigns: multi-level R^2 comparisons against the simulator
// oracle and the multi-jump statistical study.

enum class StudyFamily { HLH, LHL, Ascending, Descending, Alternating };

std::string family_name(StudyFamily f);

struct StudySpec {
  StudyFamily family = StudyFamily::HLH;
  int num_levels = 3;
  // Consumed-life fractions swept per level (three-level default
  // {0.05..0.40} step 0.05).
  std::vector<double> eta_grid;
  double delta_s = 0.2; // jump magnitude for alternating scenarios
  std::uint64_t seed = 1;
  std::size_t sample_cap = 0; // 0 = exhaustive

  static StudySpec three_level(StudyFamily f);
  static StudySpec multi_jump(int levels, std::size_t samples,
                              std::uint64_t seed);
};

struct ScenarioRecord {
  std::size_t id = 0;
  double true_remaining = 0.0;
  double predicted_remaining = 0.0;
  double accumulated = 0.0; // Algorithm-1 accumulated lifetime at failure
  bool excluded = false;
};

struct StudyResult {
  std::vector<ScenarioRecord> records;
  double r2 = 0.0;
  std::size_t excluded_count = 0;
  double mean_sum_eta = 0.0; // multi-jump studies
  bool insufficient_data = false;
};

// Level sets for the three-level families (on the trained grid):
// H-L-H = (0.85, 0.70, 0.85), L-H-L = (0.70, 0.85, 0.70),
// ascending = (0.70, 0.75, 0.80), descending = (0.80, 0.75, 0.70).
std::vector<double> family_levels(StudyFamily f);

// Enumerates the eta grid for the family, excludes scenarios whose oracle
// fails before the final level, and scores predicted vs. true remaining
// life. Scenario evaluations parallelize; records stay in enumeration order.
StudyResult run_sequence_study(const Predictor& predictor,
                               const MaterialParameters& p, const SNTable& sn,
                               const StudySpec& spec, const SimLimits& limits,
                               const CycleDiscretization& disc,
                               int threads = 1);

// Alternating-jump statistics: per scenario the high level is drawn from
// {0.85, 0.90} (low = high - delta_s), the per-level fractions from
// eta_grid, seeded and without replacement up to sample_cap. Reports the
// mean Algorithm-1 accumulated lifetime at failure.
StudyResult run_multi_jump_study(const Predictor& predictor,
                                 const StudySpec& spec, double s_min = 0.2,
                                 int threads = 1);

} // namespace fatigue
