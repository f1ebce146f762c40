#include "fatigue/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fatigue/io.hpp"
#include "fatigue/parallel.hpp"
#include "fatigue/rng.hpp"

namespace fatigue {

std::vector<double> grid_levels() {
  std::vector<double> levels;
  // Derive every grid value by a single integer division so that equal
  // nominal values compare equal regardless of the arithmetic path.
  for (int c = 65; c <= 90; c += 5) levels.push_back(c / 100.0);
  return levels;
}

std::vector<std::array<double, 3>> enumerate_grid() {
  const std::vector<double> levels = grid_levels();
  std::vector<std::array<double, 3>> out;
  out.reserve(630);
  for (int c1 = 65; c1 <= 90; c1 += 5) {
    // delta ascending means s2 descending.
    for (int c2 = 90; c2 >= 65; c2 -= 5) {
      if (c1 == c2) continue;
      const double s1 = c1 / 100.0;
      const double ds = (c1 - c2) / 100.0;
      for (int j = 0; j <= 20; ++j) {
        out.push_back({s1, ds, j / 20.0});
      }
    }
  }
  return out;
}

Dataset generate(const MaterialParameters& p, const SNTable& sn,
                 const SimLimits& limits, const CycleDiscretization& disc,
                 std::uint64_t seed, int threads) {
  const auto grid = enumerate_grid();
  Dataset ds;
  ds.seed = seed;
  ds.sn_fingerprint = sn.params_fingerprint;
  ds.samples.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const auto& [s1, delta, eta] = grid[i];
    const double s2 = s1 - delta;
    const TwoStageResult r =
        run_two_stage(p, s1, s2, sn.s_min, eta, sn, limits, disc);
    ds.samples[i] = {s1, delta, eta, r.sum_eta, Split::Train};
  });
  return ds;
}

void assign_splits(Dataset& ds, const std::array<double, 3>& fractions,
                   std::uint64_t seed) {
  const std::size_t n = ds.samples.size();
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = fractions[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - std::floor(exact);
    assigned += counts[i];
  }
  // Largest remainder; ties resolved toward the later split.
  while (assigned < n) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (remainders[i] >= remainders[best]) best = i;
    }
    ++counts[best];
    remainders[best] = -1.0;
    ++assigned;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto rng = make_stream(seed, "dataset.split");
  deterministic_shuffle(order, rng);
  std::size_t pos = 0;
  for (int part = 0; part < 3; ++part) {
    for (std::size_t k = 0; k < counts[part]; ++k) {
      ds.samples[order[pos++]].split = static_cast<Split>(part);
    }
  }
}

namespace {

int centi(double v) { return static_cast<int>(std::lround(v * 100.0)); }

} // namespace

SmallSubset small_subset(const Dataset& ds) {
  const auto grid = enumerate_grid();
  if (ds.samples.size() != grid.size()) {
    throw MissingGridEntry("dataset is not the canonical 630-sample grid");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (centi(ds.samples[i].s1max) != centi(grid[i][0]) ||
        centi(ds.samples[i].delta_smax) != centi(grid[i][1]) ||
        centi(ds.samples[i].eta_cons) != centi(grid[i][2])) {
      throw MissingGridEntry("dataset ordering does not match the canonical grid");
    }
  }
  SmallSubset out;
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const Sample& s = ds.samples[i];
    const int s1 = centi(s.s1max);
    const int eta = centi(s.eta_cons);
    const bool level_ok = s1 == 70 || s1 == 80;
    const bool eta_ok = eta == 0 || eta == 35 || eta == 55 || eta == 75 ||
                        eta == 95 || eta == 100;
    if (level_ok && eta_ok) {
      out.train.push_back(i);
    } else {
      out.test.push_back(i);
    }
  }
  return out;
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ostringstream os;
  os << "s1_max,delta_s_max,eta_cons,sum_eta,split\n";
  static const char* names[] = {"train", "val", "test"};
  for (const Sample& s : ds.samples) {
    os << format_double(s.s1max) << ',' << format_double(s.delta_smax) << ','
       << format_double(s.eta_cons) << ',' << format_double(s.sum_eta) << ','
       << names[static_cast<int>(s.split)] << '\n';
  }
  write_text_file(path, os.str());
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorruptFile("cannot open " + path);
  std::string line;
  // Leading '#' lines carry provenance comments (config fingerprint).
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
  }
  if (line != "s1_max,delta_s_max,eta_cons,sum_eta,split") {
    throw CorruptFile("bad dataset header in " + path);
  }
  Dataset ds;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string field;
    Sample s;
    try {
      std::getline(ls, field, ',');
      s.s1max = std::stod(field);
      std::getline(ls, field, ',');
      s.delta_smax = std::stod(field);
      std::getline(ls, field, ',');
      s.eta_cons = std::stod(field);
      std::getline(ls, field, ',');
      s.sum_eta = std::stod(field);
    } catch (const std::exception&) {
      throw CorruptFile("bad dataset row: " + line);
    }
    std::getline(ls, field, ',');
    if (field == "train") {
      s.split = Split::Train;
    } else if (field == "val") {
      s.split = Split::Val;
    } else if (field == "test") {
      s.split = Split::Test;
    } else {
      throw CorruptFile("bad split tag: " + field);
    }
    ds.samples.push_back(s);
  }
  return ds;
}

} // namespace fatigue
