#include "fatigue/studies.hpp"

#include <algorithm>
#include <set>

#include "fatigue/network.hpp"
#include "fatigue/parallel.hpp"
#include "fatigue/rng.hpp"

namespace fatigue {

std::string family_name(StudyFamily f) {
  switch (f) {
    case StudyFamily::HLH: return "H-L-H";
    case StudyFamily::LHL: return "L-H-L";
    case StudyFamily::Ascending: return "ascending";
    case StudyFamily::Descending: return "descending";
    case StudyFamily::Alternating: return "alternating";
  }
  return "?";
}

std::vector<double> family_levels(StudyFamily f) {
  switch (f) {
    case StudyFamily::HLH: return {0.85, 0.70, 0.85};
    case StudyFamily::LHL: return {0.70, 0.85, 0.70};
    case StudyFamily::Ascending: return {0.70, 0.75, 0.80};
    case StudyFamily::Descending: return {0.80, 0.75, 0.70};
    case StudyFamily::Alternating:
      throw ConfigError("alternating scenarios are generated, not fixed");
  }
  return {};
}

StudySpec StudySpec::three_level(StudyFamily f) {
  StudySpec spec;
  spec.family = f;
  spec.num_levels = 3;
  for (int j = 1; j <= 8; ++j) spec.eta_grid.push_back(j / 20.0);
  return spec;
}

StudySpec StudySpec::multi_jump(int levels, std::size_t samples,
                                std::uint64_t seed) {
  StudySpec spec;
  spec.family = StudyFamily::Alternating;
  spec.num_levels = levels;
  for (int j = 1; j <= 8; ++j) spec.eta_grid.push_back(j / 40.0);
  spec.delta_s = 0.2;
  spec.seed = seed;
  spec.sample_cap = samples;
  return spec;
}

StudyResult run_sequence_study(const Predictor& predictor,
                               const MaterialParameters& p, const SNTable& sn,
                               const StudySpec& spec, const SimLimits& limits,
                               const CycleDiscretization& disc, int threads) {
  const std::vector<double> levels = family_levels(spec.family);
  const std::size_t g = spec.eta_grid.size();
  // eta combinations for the n-1 closed blocks, lexicographic.
  const std::size_t jumps = levels.size() - 1;
  std::size_t total = 1;
  for (std::size_t j = 0; j < jumps; ++j) total *= g;

  StudyResult res;
  res.records.resize(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    MultiLevelScenario sc;
    sc.s_max = levels;
    std::size_t rest = idx;
    sc.eta.resize(jumps);
    for (std::size_t j = jumps; j-- > 0;) {
      sc.eta[j] = spec.eta_grid[rest % g];
      rest /= g;
    }
    ScenarioRecord rec;
    rec.id = idx;
    const OracleRemaining oracle =
        oracle_remaining(p, sn, sc, limits, disc);
    if (oracle.excluded) {
      rec.excluded = true;
    } else {
      rec.true_remaining = oracle.remaining;
      const LifetimeTrace trace = predict_remaining(predictor, sc);
      rec.predicted_remaining = trace.remaining;
      rec.accumulated = accumulated_at_failure(sc, trace);
    }
    res.records[idx] = rec;
  });

  std::vector<double> preds;
  std::vector<double> truths;
  for (const ScenarioRecord& r : res.records) {
    if (r.excluded) {
      ++res.excluded_count;
      continue;
    }
    preds.push_back(r.predicted_remaining);
    truths.push_back(r.true_remaining);
  }
  if (truths.size() < 2) {
    res.insufficient_data = true;
    return res;
  }
  res.r2 = r2_score(preds, truths);
  double acc = 0.0;
  for (const ScenarioRecord& r : res.records) {
    if (!r.excluded) acc += r.accumulated;
  }
  res.mean_sum_eta = acc / static_cast<double>(truths.size());
  return res;
}

StudyResult run_multi_jump_study(const Predictor& predictor,
                                 const StudySpec& spec, double s_min,
                                 int threads) {
  if (spec.family != StudyFamily::Alternating) {
    throw ConfigError("multi-jump study requires the alternating family");
  }
  const std::size_t g = spec.eta_grid.size();
  const std::size_t jumps = static_cast<std::size_t>(spec.num_levels) - 1;
  // Scenario space: high-level choice {0.85, 0.90} x eta_grid^(n-1).
  double space = 2.0;
  for (std::size_t j = 0; j < jumps; ++j) space *= static_cast<double>(g);

  std::vector<std::uint64_t> chosen;
  if (spec.sample_cap == 0 || space <= static_cast<double>(spec.sample_cap)) {
    const std::uint64_t n = static_cast<std::uint64_t>(space);
    chosen.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) chosen[i] = i;
  } else {
    auto rng = make_stream(spec.seed, "study.multijump");
    std::set<std::uint64_t> seen;
    const std::uint64_t n = static_cast<std::uint64_t>(space);
    while (chosen.size() < spec.sample_cap) {
      const std::uint64_t idx = bounded(rng, n);
      if (seen.insert(idx).second) chosen.push_back(idx);
    }
  }

  StudyResult res;
  res.records.resize(chosen.size());
  parallel_for(chosen.size(), threads, [&](std::size_t k) {
    std::uint64_t rest = chosen[k];
    const double high = (rest % 2 == 0) ? 0.85 : 0.90;
    rest /= 2;
    const double low = high - spec.delta_s;
    MultiLevelScenario sc;
    sc.s_min = s_min;
    sc.s_max.resize(static_cast<std::size_t>(spec.num_levels));
    for (std::size_t i = 0; i < sc.s_max.size(); ++i) {
      sc.s_max[i] = (i % 2 == 0) ? high : low;
    }
    sc.eta.resize(jumps);
    for (std::size_t j = jumps; j-- > 0;) {
      sc.eta[j] = spec.eta_grid[rest % g];
      rest /= g;
    }
    const LifetimeTrace trace = predict_remaining(predictor, sc);
    ScenarioRecord rec;
    rec.id = k;
    rec.predicted_remaining = trace.remaining;
    rec.accumulated = accumulated_at_failure(sc, trace);
    res.records[k] = rec;
  });

  double acc = 0.0;
  for (const ScenarioRecord& r : res.records) acc += r.accumulated;
  res.mean_sum_eta = acc / static_cast<double>(res.records.size());
  return res;
}

} // namespace fatigue
