#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fatigue/material.hpp"
#include "fatigue/simulator.hpp"
#include "fatigue/training.hpp"

namespace fatigue {

// Flat `key = value` configuration with [section] headers. Unknown keys are
// rejected so typos fail loudly. Everything has a default; a config file
// only overrides.
struct RunConfig {
  MaterialParameters material;
  double s_min = 0.2;
  CycleDiscretization disc;
  SimLimits limits;
  TrainingConfig training;
  LossWeights loss;
  std::array<double, 3> split_fractions{0.7, 0.15, 0.15};
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";

  // Canonical serialization (sorted, full precision); reparsing reproduces
  // the config exactly.
  std::string dump() const;

  // FNV-1a hash of dump(); embedded in every output artifact so results can
  // be traced back to their configuration.
  std::uint64_t fingerprint() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Applies a `section.key=value` override (the --set flag).
void apply_override(RunConfig& cfg, const std::string& assignment);

} // namespace fatigue
