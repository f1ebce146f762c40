#include "fatigue/lifetime.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fatigue {

void MultiLevelScenario::validate() const {
  if (s_max.size() < 2) throw InvalidScenario("need at least two levels");
  if (eta.size() + 1 != s_max.size()) {
    throw InvalidScenario("need exactly n-1 consumed fractions for n levels");
  }
  for (double s : s_max) {
    if (!(s > s_min) || s > 1.0) {
      throw InvalidScenario("levels must lie in (s_min, 1]");
    }
  }
  for (double e : eta) {
    if (!(e > 0.0) || e > 1.0) {
      throw InvalidScenario("consumed fractions must lie in (0, 1]");
    }
  }
}

double pm_sum(const std::vector<double>& etas) {
  double acc = 0.0;
  for (double e : etas) acc += e;
  return acc;
}

LifetimeTrace predict_remaining(const Predictor& predictor,
                                const MultiLevelScenario& scenario,
                                double out_min, double out_max) {
  scenario.validate();
  const std::size_t n = scenario.s_max.size();
  LifetimeTrace trace;
  double sum_eta = 0.0;
  double eta_new = scenario.eta[0];
  for (std::size_t i = 1; i <= n - 1; ++i) {
    JumpRecord rec;
    rec.i = static_cast<int>(i);
    rec.delta_s = scenario.s_max[i - 1] - scenario.s_max[i];
    rec.eta_new = eta_new;
    rec.eta_out = predictor(scenario.s_max[i - 1], rec.delta_s, eta_new);
    if (rec.eta_out < out_min || rec.eta_out > out_max ||
        !std::isfinite(rec.eta_out)) {
      throw PredictorOutOfRange("eta_out=" + std::to_string(rec.eta_out) +
                                " at jump " + std::to_string(i));
    }
    rec.delta_eta = 1.0 - rec.eta_out;
    sum_eta = (i == 1) ? scenario.eta[0] + rec.delta_eta
                       : sum_eta + scenario.eta[i - 1] + rec.delta_eta;
    rec.sum_eta = sum_eta;
    rec.eta_rem_next = 1.0 - sum_eta;
    trace.jumps.push_back(rec);
    if (i < n - 1) {
      eta_new = sum_eta + scenario.eta[i];
      if (eta_new >= 1.0) {
        trace.failure_at_level = static_cast<int>(i + 1);
        break;
      }
    }
  }
  trace.remaining_raw = 1.0 - sum_eta;
  trace.remaining = trace.failure_at_level
                        ? 0.0
                        : std::clamp(trace.remaining_raw, 0.0, 1.0);
  return trace;
}

OracleRemaining oracle_remaining(const MaterialParameters& p, const SNTable& sn,
                                 const MultiLevelScenario& scenario,
                                 const SimLimits& limits,
                                 const CycleDiscretization& disc) {
  scenario.validate();
  OracleRemaining out;
  UniaxialState state;
  state = step(p, state, scenario.s_min * p.fc, disc.substeps_per_branch);
  const std::size_t n = scenario.s_max.size();
  for (std::size_t b = 0; b + 1 < n; ++b) {
    const std::uint64_t n_f = sn.lookup(scenario.s_max[b]);
    const double v = scenario.eta[b] * static_cast<double>(n_f);
    const double r = std::floor(v + 0.5);
    const std::uint64_t cycles = r <= 0.0 ? 0 : static_cast<std::uint64_t>(r);
    const CycleRunOutcome run = run_cycles(p, state, scenario.s_max[b],
                                           scenario.s_min, cycles, limits, disc);
    if (run.failed) {
      out.excluded = true;
      out.failed_at_block = b;
      return out;
    }
  }
  const std::uint64_t last_nf = sn.lookup(scenario.s_max[n - 1]);
  const CycleRunOutcome fin = run_cycles(p, state, scenario.s_max[n - 1],
                                         scenario.s_min, limits.max_cycles,
                                         limits, disc);
  if (!fin.failed) {
    throw MissingSNEntry("final block ran out at s_max=" +
                         std::to_string(scenario.s_max[n - 1]));
  }
  out.remaining = static_cast<double>(fin.completed) /
                  static_cast<double>(last_nf);
  return out;
}

double accumulated_at_failure(const MultiLevelScenario& scenario,
                              const LifetimeTrace& trace) {
  double acc = 0.0;
  if (trace.failure_at_level) {
    // Life runs out while holding level failure_at_level (1-based): the
    // completed blocks are 1..failure_at_level-1, and the failing level can
    // still absorb at most the remaining fraction after the last jump.
    const std::size_t completed =
        static_cast<std::size_t>(*trace.failure_at_level) - 1;
    for (std::size_t i = 0; i < completed; ++i) acc += scenario.eta[i];
    acc += std::max(trace.jumps.back().eta_rem_next, 0.0);
    return acc;
  }
  acc = pm_sum(scenario.eta);
  return acc + std::clamp(trace.remaining_raw, 0.0, 1.0);
}

} // namespace fatigue
