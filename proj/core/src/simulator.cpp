#include "fatigue/simulator.hpp"

#include <cmath>
#include <string>

#include "fatigue/parallel.hpp"

namespace fatigue {

namespace {

// Shared single-cycle kernel: up-ramp then down-ramp. Returns true when the
// cycle completed without failure.
bool one_cycle(const MaterialParameters& p, UniaxialState& state, double top,
               double bot, const SimLimits& limits,
               const CycleDiscretization& disc, FailureMode& mode) {
  try {
    state = step(p, state, top, disc.substeps_per_branch);
    if (state.omega2 >= limits.omega_crit) {
      mode = FailureMode::OmegaCritical;
      return false;
    }
    state = step(p, state, bot, disc.substeps_per_branch);
    if (state.omega2 >= limits.omega_crit) {
      mode = FailureMode::OmegaCritical;
      return false;
    }
  } catch (const SingularTangent&) {
    mode = FailureMode::TangentSingular;
    return false;
  }
  return true;
}

std::uint64_t round_eta_cycles(double eta, std::uint64_t n_f) {
  const double v = eta * static_cast<double>(n_f);
  const double r = std::floor(v + 0.5); // nearest, half away from zero
  return r <= 0.0 ? 0 : static_cast<std::uint64_t>(r);
}

} // namespace

CycleRunOutcome run_cycles(const MaterialParameters& p, UniaxialState& state,
                           double s_max, double s_min, std::uint64_t cycles,
                           const SimLimits& limits,
                           const CycleDiscretization& disc) {
  const double top = s_max * p.fc;
  const double bot = s_min * p.fc;
  CycleRunOutcome out;
  for (std::uint64_t c = 0; c < cycles; ++c) {
    if (!one_cycle(p, state, top, bot, limits, disc, out.mode)) {
      out.completed = c;
      out.failed = true;
      return out;
    }
    ++state.cycles_completed;
  }
  out.completed = cycles;
  return out;
}

ConstantAmplitudeResult run_constant_amplitude(const MaterialParameters& p,
                                               double s_max, double s_min,
                                               const SimLimits& limits,
                                               const CycleDiscretization& disc) {
  UniaxialState state;
  ConstantAmplitudeResult res;
  try {
    state = step(p, state, s_min * p.fc, disc.substeps_per_branch);
  } catch (const SingularTangent&) {
    res.mode = FailureMode::TangentSingular;
    return res;
  }
  if (state.omega2 >= limits.omega_crit) {
    res.mode = FailureMode::OmegaCritical;
    return res;
  }
  const CycleRunOutcome out =
      run_cycles(p, state, s_max, s_min, limits.max_cycles, limits, disc);
  if (!out.failed) {
    res.runout = true;
    res.n_f = limits.max_cycles;
    return res;
  }
  res.n_f = out.completed;
  res.mode = out.mode;
  return res;
}

SNTable build_sn_table(const MaterialParameters& p,
                       const std::vector<double>& levels, double s_min,
                       const SimLimits& limits, const CycleDiscretization& disc,
                       int threads) {
  std::vector<ConstantAmplitudeResult> results(levels.size());
  parallel_for(levels.size(), threads, [&](std::size_t i) {
    results[i] = run_constant_amplitude(p, levels[i], s_min, limits, disc);
  });
  std::map<double, std::uint64_t> entries;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (results[i].runout) {
      throw MissingSNEntry("runout at s_max=" + std::to_string(levels[i]));
    }
    entries[levels[i]] = results[i].n_f;
  }
  return SNTable::make(s_min, std::move(entries), 0);
}

TwoStageResult run_two_stage(const MaterialParameters& p, double s1max,
                             double s2max, double s_min, double eta_cons,
                             const SNTable& sn, const SimLimits& limits,
                             const CycleDiscretization& disc) {
  const std::uint64_t n1f = sn.lookup(s1max);
  const std::uint64_t n2f = sn.lookup(s2max);
  if (eta_cons >= 1.0) return {1.0, 0.0, 1.0};

  const std::uint64_t n1 = round_eta_cycles(eta_cons, n1f);
  UniaxialState state;
  state = step(p, state, s_min * p.fc, disc.substeps_per_branch);
  if (n1 > 0) {
    const CycleRunOutcome first =
        run_cycles(p, state, s1max, s_min, n1, limits, disc);
    if (first.failed) {
      // Cannot happen for eta_cons < 1 with a consistent table; treat as a
      // fault so a stale S-N table surfaces loudly.
      throw SingularTangent("first block failed before consuming eta=" +
                            std::to_string(eta_cons));
    }
  }
  const CycleRunOutcome second =
      run_cycles(p, state, s2max, s_min, limits.max_cycles, limits, disc);
  if (!second.failed) {
    throw MissingSNEntry("second block ran out at s_max=" +
                         std::to_string(s2max));
  }
  TwoStageResult res;
  res.eta_cons = static_cast<double>(n1) / static_cast<double>(n1f);
  res.eta_rem = static_cast<double>(second.completed) / static_cast<double>(n2f);
  res.sum_eta = res.eta_cons + res.eta_rem;
  return res;
}

ScenarioResult run_scenario(const MaterialParameters& p_in,
                            const LoadScenario& scenario,
                            const SimLimits& limits,
                            const CycleDiscretization& disc) {
  scenario.validate();
  MaterialParameters p = p_in;
  p.fc = scenario.fc; // the scenario file owns the strength
  for (std::size_t b = 0; b < scenario.blocks.size(); ++b) {
    const LoadBlock& blk = scenario.blocks[b];
    if (blk.kind == DurationKind::ConsumedFraction) {
      throw InvalidScenario("unresolved consumed-fraction duration; call "
                            "resolve_durations first");
    }
    if (blk.kind == DurationKind::ToFailure && b + 1 != scenario.blocks.size()) {
      throw InvalidScenario("to-failure block must be last");
    }
  }

  ScenarioResult res;
  UniaxialState state;
  const double bot = scenario.s_min * p.fc;
  try {
    state = step(p, state, bot, disc.substeps_per_branch);
  } catch (const SingularTangent&) {
    res.failed = true;
    res.failure_block = 0;
    res.mode = FailureMode::TangentSingular;
    return res;
  }

  for (std::size_t b = 0; b < scenario.blocks.size(); ++b) {
    const LoadBlock& blk = scenario.blocks[b];
    const double top = blk.s_max * p.fc;
    const std::uint64_t budget = blk.kind == DurationKind::ToFailure
                                     ? limits.max_cycles
                                     : blk.cycles;
    std::uint64_t done = 0;
    FailureMode mode = FailureMode::None;
    for (; done < budget; ++done) {
      UniaxialState before = state;
      if (!one_cycle(p, state, top, bot, limits, disc, mode)) {
        state = before; // keep the last consistent reversal for reporting
        break;
      }
      ++state.cycles_completed;
      // Upper-reversal strain: recompute at the top of this cycle's ramp.
      // The state currently sits at the lower reversal.
      const double eps_top =
          axial_strain(p, top, lateral_strain(p, top, state.omega2),
                       state.omega2);
      res.eps_top.push_back(eps_top);
      res.eps_bot.push_back(state.eps1);
      res.damage_history.push_back(state.omega2);
    }
    res.cycles_per_block.push_back(done);
    if (mode != FailureMode::None) {
      res.failed = true;
      res.failure_block = b;
      res.mode = mode;
      return res;
    }
    if (blk.kind == DurationKind::ToFailure) {
      // Budget exhausted without failure: runout of the open block.
      break;
    }
  }
  return res;
}

} // namespace fatigue
