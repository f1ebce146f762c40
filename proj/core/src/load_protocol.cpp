#include "fatigue/load_protocol.hpp"

#include <cmath>
#include <string>

namespace fatigue {

void LoadScenario::validate() const {
  if (blocks.empty()) throw InvalidScenario("scenario has no blocks");
  if (!(fc > 0.0)) throw InvalidScenario("fc must be > 0");
  if (s_min < 0.0) throw InvalidScenario("s_min must be >= 0");
  for (const LoadBlock& b : blocks) {
    if (!(b.s_max > s_min)) {
      throw InvalidScenario("block s_max=" + std::to_string(b.s_max) +
                            " must exceed s_min=" + std::to_string(s_min));
    }
    if (b.s_max > 1.0) throw InvalidScenario("s_max must be <= 1");
    if (b.kind == DurationKind::ConsumedFraction &&
        (b.eta < 0.0 || b.eta > 1.0)) {
      throw InvalidScenario("eta must lie in [0, 1]");
    }
  }
}

LoadScenario resolve_durations(const LoadScenario& scenario,
                               const SNTable& sn) {
  scenario.validate();
  LoadScenario out = scenario;
  for (LoadBlock& b : out.blocks) {
    if (b.kind != DurationKind::ConsumedFraction) continue;
    const std::uint64_t n_f = sn.lookup(b.s_max);
    const double v = b.eta * static_cast<double>(n_f);
    const double r = std::floor(v + 0.5);
    b.cycles = r <= 0.0 ? 0 : static_cast<std::uint64_t>(r);
    b.kind = DurationKind::ExplicitCycles;
    b.eta = 0.0;
  }
  return out;
}

std::vector<std::pair<double, BranchTag>> stress_targets(
    const LoadScenario& scenario, const CycleDiscretization& disc) {
  scenario.validate();
  if (disc.substeps_per_branch < 1) {
    throw InvalidScenario("substeps_per_branch must be >= 1");
  }
  std::vector<std::pair<double, BranchTag>> out;
  const double bot = scenario.s_min * scenario.fc;
  const int n = disc.substeps_per_branch;
  for (const LoadBlock& b : scenario.blocks) {
    if (b.kind != DurationKind::ExplicitCycles) {
      throw InvalidScenario("stress_targets requires explicit durations");
    }
    const double top = b.s_max * scenario.fc;
    for (std::uint64_t c = 0; c < b.cycles; ++c) {
      for (int k = 1; k <= n; ++k) {
        const double s =
            k == n ? top : bot + static_cast<double>(k) * (top - bot) / n;
        out.emplace_back(s, BranchTag::Up);
      }
      for (int k = 1; k <= n; ++k) {
        const double s =
            k == n ? bot : top + static_cast<double>(k) * (bot - top) / n;
        out.emplace_back(s, BranchTag::Down);
      }
    }
  }
  return out;
}

} // namespace fatigue
