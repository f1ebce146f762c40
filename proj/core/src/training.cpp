#include "fatigue/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fatigue/rng.hpp"

namespace fatigue {

Gradient Gradient::zeros_like(const SurrogateModel& m) {
  Gradient g;
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    g.weights.emplace_back(m.weights[l].size(), 0.0);
    g.biases.emplace_back(m.biases[l].size(), 0.0);
  }
  return g;
}

void Gradient::reset() {
  for (auto& v : weights) std::fill(v.begin(), v.end(), 0.0);
  for (auto& v : biases) std::fill(v.begin(), v.end(), 0.0);
}

std::vector<std::array<double, 2>> collocation_pairs() {
  std::vector<std::array<double, 2>> pairs;
  pairs.reserve(30);
  for (int c1 = 65; c1 <= 90; c1 += 5) {
    for (int c2 = 90; c2 >= 65; c2 -= 5) {
      if (c1 == c2) continue;
      pairs.push_back({c1 / 100.0, (c1 - c2) / 100.0});
    }
  }
  return pairs;
}

namespace {

// Forward pass caching activations for backprop. acts[0] is the scaled
// input; acts[l+1] the activation after layer l; zs[l] the pre-activation.
struct Workspace {
  std::vector<std::vector<double>> acts;
  std::vector<std::vector<double>> zs;
  std::vector<double> delta;
  std::vector<double> delta_prev;

  void resize(const SurrogateModel& m) {
    const std::size_t L = m.num_layers();
    acts.resize(L + 1);
    zs.resize(L);
    acts[0].resize(3);
    for (std::size_t l = 0; l < L; ++l) {
      zs[l].resize(m.biases[l].size());
      acts[l + 1].resize(m.biases[l].size());
    }
  }
};

double forward_cached(const SurrogateModel& m, const std::array<double, 3>& x,
                      Workspace& ws) {
  const auto xs = m.scaler.scale(x);
  std::copy(xs.begin(), xs.end(), ws.acts[0].begin());
  const std::size_t L = m.num_layers();
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t rows = m.biases[l].size();
    const std::size_t cols = ws.acts[l].size();
    const double* W = m.weights[l].data();
    const double* a = ws.acts[l].data();
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = m.biases[l][r];
      const double* row = W + r * cols;
      for (std::size_t c = 0; c < cols; ++c) acc += row[c] * a[c];
      ws.zs[l][r] = acc;
      ws.acts[l + 1][r] =
          (l + 1 < L) ? elu(acc, m.config.elu_zeta) : acc;
    }
  }
  return ws.acts[L][0];
}

// Accumulates d(loss)/d(params) for one sample given dLdy at the output.
void backward(const SurrogateModel& m, Workspace& ws, double dLdy,
              Gradient& g) {
  const std::size_t L = m.num_layers();
  ws.delta.assign(1, dLdy);
  for (std::size_t l = L; l-- > 0;) {
    const std::size_t rows = m.biases[l].size();
    const std::size_t cols = ws.acts[l].size();
    const double* a = ws.acts[l].data();
    double* gW = g.weights[l].data();
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = ws.delta[r];
      g.biases[l][r] += d;
      double* row = gW + r * cols;
      for (std::size_t c = 0; c < cols; ++c) row[c] += d * a[c];
    }
    if (l == 0) break;
    ws.delta_prev.assign(cols, 0.0);
    const double* W = m.weights[l].data();
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = ws.delta[r];
      const double* row = W + r * cols;
      for (std::size_t c = 0; c < cols; ++c) ws.delta_prev[c] += d * row[c];
    }
    // ELU'(z) = 1 for z > 0, zeta * e^z = ELU(z) + zeta otherwise.
    for (std::size_t c = 0; c < cols; ++c) {
      const double z = ws.zs[l - 1][c];
      const double dact =
          z > 0.0 ? 1.0 : ws.acts[l][c] + m.config.elu_zeta;
      ws.delta_prev[c] *= dact;
    }
    ws.delta.swap(ws.delta_prev);
  }
}

// Hinge residual of the sequence-effect inequality; zero when satisfied.
double constraint_residual(double delta_smax, double y) {
  if (delta_smax > 0.0) return y > 1.0 ? y - 1.0 : 0.0;
  if (delta_smax < 0.0) return y < 1.0 ? y - 1.0 : 0.0;
  return 0.0;
}

template <typename PerPoint>
void for_each_boundary_point(PerPoint&& fn) {
  static const std::vector<std::array<double, 2>> pairs = collocation_pairs();
  for (const auto& pr : pairs) {
    fn(std::array<double, 3>{pr[0], pr[1], 0.0});
    fn(std::array<double, 3>{pr[0], pr[1], 1.0});
  }
}

template <typename PerPoint>
void for_each_sparse_point(PerPoint&& fn) {
  static const std::vector<std::array<double, 2>> pairs = collocation_pairs();
  for (const auto& pr : pairs) {
    for (int j = 1; j <= 6; ++j) {
      fn(std::array<double, 3>{pr[0], pr[1], j / 20.0});
    }
  }
}

} // namespace

LossBreakdown loss_total(const SurrogateModel& m,
                         const std::vector<TrainSample>& batch,
                         const LossWeights& w) {
  Workspace ws;
  ws.resize(m);
  LossBreakdown L;
  const double nb = static_cast<double>(batch.size());
  for (const TrainSample& s : batch) {
    const double y = forward_cached(m, s.x, ws);
    L.data += (y - s.y) * (y - s.y) / nb;
    const double h = constraint_residual(s.x[1], y);
    L.constr += w.w_const * h * h / nb;
  }
  if (w.w_bound != 0.0) {
    int n = 0;
    double acc = 0.0;
    for_each_boundary_point([&](const std::array<double, 3>& x) {
      const double y = forward_cached(m, x, ws);
      acc += (y - 1.0) * (y - 1.0);
      ++n;
    });
    L.bound = w.w_bound * acc / n;
  }
  if (w.w_spars != 0.0) {
    int n = 0;
    double acc = 0.0;
    for_each_sparse_point([&](const std::array<double, 3>& x) {
      const double y = forward_cached(m, x, ws);
      acc += (1.0 - y) * (1.0 - y);
      ++n;
    });
    L.spars = w.w_spars * acc / n;
  }
  return L;
}

void gradients(const SurrogateModel& m, const std::vector<TrainSample>& batch,
               const LossWeights& w, Gradient& out) {
  Workspace ws;
  ws.resize(m);
  out.reset();
  const double nb = static_cast<double>(batch.size());
  for (const TrainSample& s : batch) {
    const double y = forward_cached(m, s.x, ws);
    double dLdy = 2.0 * (y - s.y) / nb;
    dLdy += w.w_const * 2.0 * constraint_residual(s.x[1], y) / nb;
    backward(m, ws, dLdy, out);
  }
  if (w.w_bound != 0.0) {
    for_each_boundary_point([&](const std::array<double, 3>& x) {
      const double y = forward_cached(m, x, ws);
      backward(m, ws, w.w_bound * 2.0 * (y - 1.0) / 60.0, out);
    });
  }
  if (w.w_spars != 0.0) {
    for_each_sparse_point([&](const std::array<double, 3>& x) {
      const double y = forward_cached(m, x, ws);
      backward(m, ws, w.w_spars * 2.0 * (y - 1.0) / 180.0, out);
    });
  }
}

TrainResult train(const std::vector<TrainSample>& train_set,
                  const std::vector<TrainSample>& val_set,
                  const NetworkConfig& net_cfg, const TrainingConfig& cfg,
                  const LossWeights& w) {
  if (train_set.empty()) throw ConfigError("empty training set");
  SurrogateModel m = make_model(net_cfg);

  // Seeded Glorot-uniform initialization.
  auto init_rng = make_stream(cfg.seed, "train.init");
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    const double fan_in = static_cast<double>(net_cfg.layer_sizes[l]);
    const double fan_out = static_cast<double>(net_cfg.layer_sizes[l + 1]);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& v : m.weights[l]) {
      v = (2.0 * uniform01(init_rng) - 1.0) * limit;
    }
    // biases start at zero
  }

  Gradient g = Gradient::zeros_like(m);
  Gradient adam_m = Gradient::zeros_like(m);
  Gradient adam_v = Gradient::zeros_like(m);
  std::uint64_t adam_t = 0;

  auto adam_step = [&]() {
    ++adam_t;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_t));
    for (std::size_t l = 0; l < m.num_layers(); ++l) {
      auto update = [&](std::vector<double>& p, std::vector<double>& gm,
                        std::vector<double>& gv, const std::vector<double>& gr) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          gm[i] = cfg.beta1 * gm[i] + (1.0 - cfg.beta1) * gr[i];
          gv[i] = cfg.beta2 * gv[i] + (1.0 - cfg.beta2) * gr[i] * gr[i];
          const double mhat = gm[i] / bc1;
          const double vhat = gv[i] / bc2;
          p[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.eps_adam);
        }
      };
      update(m.weights[l], adam_m.weights[l], adam_v.weights[l], g.weights[l]);
      update(m.biases[l], adam_m.biases[l], adam_v.biases[l], g.biases[l]);
    }
  };

  auto val_loss = [&]() -> double {
    if (val_set.empty()) return -1.0;
    Workspace ws;
    ws.resize(m);
    double acc = 0.0;
    for (const TrainSample& s : val_set) {
      const double y = forward_cached(m, s.x, ws);
      acc += (y - s.y) * (y - s.y);
    }
    return acc / static_cast<double>(val_set.size());
  };

  TrainResult result;
  auto shuffle_rng = make_stream(cfg.seed, "train.shuffle");
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<TrainSample> batch;
  const std::size_t bs = std::max(1, cfg.batch_size);

  double best_score = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best_w = m.weights;
  std::vector<std::vector<double>> best_b = m.biases;
  int since_best = 0;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    deterministic_shuffle(order, shuffle_rng);
    for (std::size_t start = 0; start < order.size(); start += bs) {
      batch.clear();
      for (std::size_t i = start; i < std::min(order.size(), start + bs); ++i) {
        batch.push_back(train_set[order[i]]);
      }
      gradients(m, batch, w, g);
      adam_step();
    }
    const LossBreakdown epoch_loss = loss_total(m, train_set, w);
    const double vloss = val_loss();
    const double score = val_set.empty() ? epoch_loss.total() : vloss;
    if (!std::isfinite(epoch_loss.total()) ||
        (!val_set.empty() && !std::isfinite(vloss))) {
      throw NonFiniteLoss("loss diverged at epoch " + std::to_string(epoch));
    }
    result.history.rows.push_back(
        {epoch, epoch_loss, val_set.empty() ? epoch_loss.total() : vloss});
    result.stopped_epoch = epoch;
    if (score < best_score) {
      best_score = score;
      best_w = m.weights;
      best_b = m.biases;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (epoch_loss.total() < cfg.loss_tolerance) break;
    if (since_best > cfg.patience) break;
  }

  m.weights = std::move(best_w);
  m.biases = std::move(best_b);
  result.model = std::move(m);
  return result;
}

double evaluate_r2(const SurrogateModel& m,
                   const std::vector<TrainSample>& samples) {
  std::vector<double> preds;
  std::vector<double> targets;
  preds.reserve(samples.size());
  targets.reserve(samples.size());
  for (const TrainSample& s : samples) {
    preds.push_back(predict(m, s.x[0], s.x[1], s.x[2]));
    targets.push_back(s.y);
  }
  return r2_score(preds, targets);
}

} // namespace fatigue
