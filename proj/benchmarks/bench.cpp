#include <benchmark/benchmark.h>

#include "fatigue/lifetime.hpp"
#include "fatigue/network.hpp"
#include "fatigue/rng.hpp"
#include "fatigue/simulator.hpp"
#include "fatigue/training.hpp"

using namespace fatigue;

namespace {

SurrogateModel seeded_model() {
  SurrogateModel m = make_model(NetworkConfig::standard());
  auto rng = make_stream(1, "bench.model");
  for (auto& layer : m.weights) {
    for (double& w : layer) w = uniform01(rng) - 0.5;
  }
  return m;
}

void BM_SurrogatePredict(benchmark::State& state) {
  const SurrogateModel m = seeded_model();
  double eta = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict(m, 0.8, 0.1, eta));
    eta += 1e-9;
  }
}
BENCHMARK(BM_SurrogatePredict);

void BM_MaterialCycle(benchmark::State& state) {
  const MaterialParameters p{};
  UniaxialState st;
  st = step(p, st, 0.2 * p.fc, 20);
  for (auto _ : state) {
    UniaxialState s = st;
    s = step(p, s, 0.8 * p.fc, 20);
    s = step(p, s, 0.2 * p.fc, 20);
    benchmark::DoNotOptimize(s.omega2);
  }
}
BENCHMARK(BM_MaterialCycle);

void BM_ConstantAmplitudeLifetime(benchmark::State& state) {
  const MaterialParameters p{};
  const SimLimits limits{};
  const CycleDiscretization disc{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_constant_amplitude(p, 0.85, 0.2, limits, disc));
  }
}
BENCHMARK(BM_ConstantAmplitudeLifetime);

void BM_AlgorithmOne(benchmark::State& state) {
  const SurrogateModel m = seeded_model();
  const Predictor pred = [&m](double s1, double ds, double eta) {
    return predict(m, s1, ds, eta);
  };
  MultiLevelScenario sc;
  sc.s_max = {0.9, 0.7, 0.9, 0.7, 0.9};
  sc.eta = {0.1, 0.1, 0.1, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_remaining(pred, sc));
  }
}
BENCHMARK(BM_AlgorithmOne);

void BM_TrainingEpoch(benchmark::State& state) {
  SurrogateModel m = seeded_model();
  std::vector<TrainSample> batch;
  auto rng = make_stream(2, "bench.batch");
  for (int i = 0; i < 32; ++i) {
    batch.push_back({{0.65 + 0.25 * uniform01(rng),
                      -0.25 + 0.5 * uniform01(rng), uniform01(rng)},
                     1.0});
  }
  Gradient g = Gradient::zeros_like(m);
  const LossWeights w{};
  for (auto _ : state) {
    gradients(m, batch, w, g);
    benchmark::DoNotOptimize(g.weights[0][0]);
  }
}
BENCHMARK(BM_TrainingEpoch);

} // namespace

BENCHMARK_MAIN();
