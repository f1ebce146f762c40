#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fatigue/errors.hpp"

namespace fatigue {

// From-scratch feed-forward surrogate: 3 inputs (s1max, delta_smax,
// eta_cons), 10 hidden layers of 16 ELU units, linear scalar output.

struct NetworkConfig {
  std::vector<int> layer_sizes; // {3, 16 x 10, 1}
  double elu_zeta = 1.0;

  static NetworkConfig standard() {
    NetworkConfig c;
    c.layer_sizes.push_back(3);
    for (int i = 0; i < 10; ++i) c.layer_sizes.push_back(16);
    c.layer_sizes.push_back(1);
    return c;
  }
};

// Fixed min-max ranges; data and collocation points share one scale and the
// scaler travels with the model file. Out-of-range inputs extrapolate
// linearly.
struct FeatureScaler {
  std::array<double, 3> lo{0.60, -0.30, 0.0};
  std::array<double, 3> hi{0.95, 0.30, 1.0};

  std::array<double, 3> scale(const std::array<double, 3>& x) const {
    return {(x[0] - lo[0]) / (hi[0] - lo[0]), (x[1] - lo[1]) / (hi[1] - lo[1]),
            (x[2] - lo[2]) / (hi[2] - lo[2])};
  }
};

struct SurrogateModel {
  NetworkConfig config;
  FeatureScaler scaler;
  // weights[l] is row-major (layer_sizes[l+1] x layer_sizes[l]);
  // biases[l] has layer_sizes[l+1] entries.
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  std::size_t num_layers() const { return weights.size(); }
  std::size_t num_parameters() const;
};

// Allocates zeroed parameter storage shaped by the config.
SurrogateModel make_model(const NetworkConfig& config);

inline double elu(double x, double zeta) {
  return x > 0.0 ? x : zeta * (std::exp(x) - 1.0);
}

// Raw forward pass on an already-scaled input.
double forward(const SurrogateModel& m, const std::array<double, 3>& x_scaled);

// Scales, runs forward, and applies the output constraint
// max(y_raw, eta_cons) so the predicted cumulative life never falls below
// the already-consumed fraction.
double predict(const SurrogateModel& m, double s1max, double delta_smax,
               double eta_cons);

double r2_score(const std::vector<double>& preds,
                const std::vector<double>& targets);

// Versioned text format; save -> load -> predict is bit-exact.
void save_model(const SurrogateModel& m, const std::string& path);
SurrogateModel load_model(const std::string& path);

} // namespace fatigue
