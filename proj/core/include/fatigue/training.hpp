#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fatigue/network.hpp"

namespace fatigue {

// Physics-augmented loss: L_total = L_data + L_const + L_bound + L_spars.
//  - L_data: MSE over the batch.
//  - L_const: one-sided hinge on the sequence-effect inequalities, evaluated
//    on the batch (H-L samples must predict <= 1, L-H samples >= 1).
//  - L_bound: (y-1)^2 over the 30 (s1max, dS) grid pairs at eta in {0, 1}.
//  - L_spars: (1-y)^2 over the same pairs at eta in {0.05..0.30} (the
//    sparsely sampled region), pulling predictions toward the P-M baseline.
// Collocation terms are recomputed for every batch. The inference clamp is
// not applied anywhere in the loss: gradients flow through the raw output.
struct LossWeights {
  double w_const = 0.5;
  double w_bound = 1.0;
  double w_spars = 2.0;

  static LossWeights data_only() { return {0.0, 0.0, 0.0}; }
};

struct TrainingConfig {
  double learning_rate = 1e-4;
  int batch_size = 32;
  int max_epochs = 20000;
  int patience = 1000;
  double loss_tolerance = 1e-7;
  std::uint64_t seed = 1;
  // Adam moment-decay constants, kept at their standard values; the
  // user-facing knob is the learning rate only.
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_adam = 1e-8;
};

struct TrainSample {
  std::array<double, 3> x{}; // s1max, delta_smax, eta_cons (raw, unscaled)
  double y = 0.0;
};

struct LossBreakdown {
  double data = 0.0;
  double constr = 0.0;
  double bound = 0.0;
  double spars = 0.0;
  double total() const { return data + constr + bound + spars; }
};

struct TrainingHistory {
  struct Row {
    int epoch;
    LossBreakdown train;
    double val; // MSE on the validation split (train total when no split)
  };
  std::vector<Row> rows;
};

struct TrainResult {
  SurrogateModel model;
  TrainingHistory history;
  int stopped_epoch = 0;
};

// Parameter-shaped accumulator for gradients and Adam moments.
struct Gradient {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  static Gradient zeros_like(const SurrogateModel& m);
  void reset();
};

// The 30 (s1max, delta_smax) pairs of the two-stage grid.
std::vector<std::array<double, 2>> collocation_pairs();

LossBreakdown loss_total(const SurrogateModel& m,
                         const std::vector<TrainSample>& batch,
                         const LossWeights& w);

// Exact gradients of loss_total with respect to every weight and bias.
void gradients(const SurrogateModel& m, const std::vector<TrainSample>& batch,
               const LossWeights& w, Gradient& out);

// Deterministic full training loop: seeded Glorot init, seeded epoch
// shuffles, Adam updates per mini-batch, early stopping on loss tolerance or
// stalled validation, best-validation parameters restored on exit.
TrainResult train(const std::vector<TrainSample>& train_set,
                  const std::vector<TrainSample>& val_set,
                  const NetworkConfig& net_cfg, const TrainingConfig& cfg,
                  const LossWeights& w);

// Clamped-prediction R^2 over a labelled set.
double evaluate_r2(const SurrogateModel& m,
                   const std::vector<TrainSample>& samples);

} // namespace fatigue
