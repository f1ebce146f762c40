#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fatigue/load_protocol.hpp"
#include "fatigue/simulator.hpp"

namespace fatigue {

// Two-stage scenario grid: 6 levels {0.65..0.90}, all 30 ordered pairs of
// distinct levels, 21 consumed-life fractions {0, 0.05, ..., 1.0}; 630
// samples in canonical (s1max asc, delta_smax asc, eta_cons asc) order.

enum class Split : std::uint8_t { Train = 0, Val = 1, Test = 2 };

struct Sample {
  double s1max = 0.0;
  double delta_smax = 0.0; // s1max - s2max; positive = H-L
  double eta_cons = 0.0;
  double sum_eta = 0.0; // label
  Split split = Split::Train;
};

struct Dataset {
  std::vector<Sample> samples;
  std::uint64_t seed = 0;
  std::uint64_t sn_fingerprint = 0;
};

// The six grid levels, ascending.
std::vector<double> grid_levels();

// 630 (s1max, delta_smax, eta_cons) triples in canonical order.
std::vector<std::array<double, 3>> enumerate_grid();

// Labels every grid entry with run_two_stage; parallelizes over entries with
// results merged by canonical index.
Dataset generate(const MaterialParameters& p, const SNTable& sn,
                 const SimLimits& limits, const CycleDiscretization& disc,
                 std::uint64_t seed, int threads = 1);

// Seeded shuffle then partition with largest-remainder rounding (ties go to
// the later split), e.g. 630 x (0.7, 0.15, 0.15) -> 441/94/95.
void assign_splits(Dataset& ds, const std::array<double, 3>& fractions,
                   std::uint64_t seed);

// The 60-sample training subset (s1max in {0.70, 0.80}, eta_cons in
// {0, 0.35, 0.55, 0.75, 0.95, 1.0}) and its 570-sample complement, as indices
// into the canonical grid. Throws MissingGridEntry unless the dataset is the
// full canonical grid.
struct SmallSubset {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
SmallSubset small_subset(const Dataset& ds);

// CSV: header s1_max,delta_s_max,eta_cons,sum_eta,split; shortest
// round-trip float formatting so a reload is bit-exact.
void write_dataset_csv(const Dataset& ds, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

} // namespace fatigue
