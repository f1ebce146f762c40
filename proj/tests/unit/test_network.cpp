#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "fatigue/network.hpp"
#include "fatigue/rng.hpp"

using namespace fatigue;

TEST_CASE("standard architecture shapes") {
  const SurrogateModel m = make_model(NetworkConfig::standard());
  REQUIRE(m.num_layers() == 11);
  CHECK(m.weights[0].size() == 16 * 3);
  CHECK(m.weights[5].size() == 16 * 16);
  CHECK(m.weights[10].size() == 1 * 16);
  CHECK(m.biases[10].size() == 1);
  // 64 + 9 * 272 + 17
  CHECK(m.num_parameters() == 2529);
}

TEST_CASE("ELU activation") {
  CHECK(elu(2.0, 1.0) == 2.0);
  CHECK(elu(0.0, 1.0) == 0.0);
  CHECK(elu(-1.0, 1.0) == doctest::Approx(std::exp(-1.0) - 1.0));
  CHECK(elu(-1.0, 0.5) == doctest::Approx(0.5 * (std::exp(-1.0) - 1.0)));
}

TEST_CASE("forward matches a hand computation on a minimal net") {
  NetworkConfig cfg;
  cfg.layer_sizes = {3, 2, 1};
  SurrogateModel m = make_model(cfg);
  m.weights[0] = {1.0, 0.0, 0.0, /* row 2 */ 0.0, -1.0, 0.0};
  m.biases[0] = {0.0, 0.5};
  m.weights[1] = {2.0, 3.0};
  m.biases[1] = {0.25};
  const std::array<double, 3> x{0.5, 1.0, 9.0};
  // h1 = elu(0.5) = 0.5; h2 = elu(-1 + 0.5) = e^-0.5 - 1
  const double h2 = std::exp(-0.5) - 1.0;
  CHECK(forward(m, x) == doctest::Approx(2.0 * 0.5 + 3.0 * h2 + 0.25));
}

TEST_CASE("scaler maps the fixed ranges onto the unit cube") {
  const FeatureScaler sc;
  const auto lo = sc.scale({0.60, -0.30, 0.0});
  const auto hi = sc.scale({0.95, 0.30, 1.0});
  for (double v : lo) CHECK(v == doctest::Approx(0.0));
  for (double v : hi) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("predict clamps the output below the consumed fraction") {
  // Zero weights produce y_raw = 0, so the clamp must return eta itself.
  const SurrogateModel m = make_model(NetworkConfig::standard());
  CHECK(predict(m, 0.8, 0.1, 0.6) == 0.6);
  CHECK(predict(m, 0.8, 0.1, 0.0) == 0.0);
}

TEST_CASE("r2 score") {
  CHECK(r2_score({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 1.0);
  // Predicting the mean scores exactly zero.
  CHECK(r2_score({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)r2_score({1.0, 2.0}, {5.0, 5.0}), ZeroVariance);
}

TEST_CASE("model file round-trips bit-exactly") {
  SurrogateModel m = make_model(NetworkConfig::standard());
  auto rng = make_stream(3, "test.model");
  for (auto& layer : m.weights) {
    for (double& w : layer) w = uniform01(rng) * 2.0 - 1.0;
  }
  for (auto& layer : m.biases) {
    for (double& b : layer) b = uniform01(rng) * 0.1;
  }
  const std::string path = "test_model_roundtrip.txt";
  save_model(m, path);
  const SurrogateModel back = load_model(path);
  std::remove(path.c_str());
  REQUIRE(back.weights.size() == m.weights.size());
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    CHECK(back.weights[l] == m.weights[l]);
    CHECK(back.biases[l] == m.biases[l]);
  }
  CHECK(predict(back, 0.8, 0.15, 0.4) == predict(m, 0.8, 0.15, 0.4));
}

TEST_CASE("model loader rejects garbage and wrong versions") {
  const std::string path = "test_model_bad.txt";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("not a model\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS((void)load_model(path), CorruptFile);
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("fatigue-surrogate\nversion 999\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS((void)load_model(path), VersionMismatch);
  std::remove(path.c_str());
}
