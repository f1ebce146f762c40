#include "doctest.h"

#include "fatigue/load_protocol.hpp"

using namespace fatigue;

namespace {
SNTable tiny_table() {
  return SNTable::make(0.2, {{0.7, 1000}, {0.8, 100}, {0.9, 10}}, 42);
}
} // namespace

TEST_CASE("scenario validation") {
  LoadScenario sc;
  CHECK_THROWS_AS(sc.validate(), InvalidScenario); // empty
  sc.blocks.push_back(LoadBlock::to_failure(0.1)); // below s_min
  CHECK_THROWS_AS(sc.validate(), InvalidScenario);
  sc.blocks = {LoadBlock::consumed_fraction(0.8, 1.5)};
  CHECK_THROWS_AS(sc.validate(), InvalidScenario);
  sc.blocks = {LoadBlock::consumed_fraction(0.8, 0.5),
               LoadBlock::to_failure(0.7)};
  CHECK_NOTHROW(sc.validate());
}

TEST_CASE("S-N table lookup is exact-key with a tiny tolerance") {
  const SNTable sn = tiny_table();
  CHECK(sn.lookup(0.8) == 100);
  CHECK(sn.lookup(0.8 + 1e-12) == 100);
  CHECK_THROWS_AS((void)sn.lookup(0.75), MissingSNEntry);
}

TEST_CASE("S-N factory enforces strictly decreasing lifetimes") {
  CHECK_THROWS_AS(SNTable::make(0.2, {{0.7, 100}, {0.8, 100}}, 0),
                  MissingSNEntry);
  CHECK_THROWS_AS(SNTable::make(0.2, {{0.7, 50}, {0.8, 100}}, 0),
                  MissingSNEntry);
}

TEST_CASE("resolve_durations converts fractions and is idempotent") {
  LoadScenario sc;
  sc.blocks = {LoadBlock::consumed_fraction(0.8, 0.25),
               LoadBlock::explicit_cycles(0.9, 7),
               LoadBlock::to_failure(0.7)};
  const SNTable sn = tiny_table();
  const LoadScenario r1 = resolve_durations(sc, sn);
  CHECK(r1.blocks[0].kind == DurationKind::ExplicitCycles);
  CHECK(r1.blocks[0].cycles == 25); // round(0.25 * 100)
  CHECK(r1.blocks[1].cycles == 7);
  CHECK(r1.blocks[2].kind == DurationKind::ToFailure);
  const LoadScenario r2 = resolve_durations(r1, sn);
  CHECK(r2.blocks[0].cycles == 25);
}

TEST_CASE("consumed fractions round half up") {
  LoadScenario sc;
  sc.blocks = {LoadBlock::consumed_fraction(0.9, 0.45),
               LoadBlock::to_failure(0.7)};
  // 0.45 * 10 = 4.5 -> 5 cycles.
  CHECK(resolve_durations(sc, tiny_table()).blocks[0].cycles == 5);
}

TEST_CASE("stress targets enumerate two ramps per cycle") {
  LoadScenario sc;
  sc.fc = 100.0;
  sc.blocks = {LoadBlock::explicit_cycles(0.9, 2)};
  CycleDiscretization disc;
  disc.substeps_per_branch = 4;
  const auto targets = stress_targets(sc, disc);
  REQUIRE(targets.size() == 2 * 2 * 4);
  // First up-ramp climbs from s_min*fc toward s_max*fc in equal increments.
  CHECK(targets[0].first == doctest::Approx(37.5));
  CHECK(targets[0].second == BranchTag::Up);
  CHECK(targets[3].first == doctest::Approx(90.0));
  CHECK(targets[4].second == BranchTag::Down);
  CHECK(targets[7].first == doctest::Approx(20.0));
  CHECK(targets.back().first == doctest::Approx(20.0));
}

TEST_CASE("stress targets reject unresolved durations") {
  LoadScenario sc;
  sc.blocks = {LoadBlock::consumed_fraction(0.8, 0.5)};
  CHECK_THROWS_AS((void)stress_targets(sc, CycleDiscretization{}),
                  InvalidScenario);
}
