// Acceptance suite: one check per acceptance criterion, each reported as a
// single PASS/FAIL line with the measured values. The process exits with the
// number of failing criteria.
//
// Usage: acceptance [path-to-cli] [criterion-numbers...]
// With no numbers, all twelve run. The CLI path is required only by
// criterion 12 (byte-identical command outputs across thread counts).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fatigue/config.hpp"
#include "fatigue/dataset.hpp"
#include "fatigue/io.hpp"
#include "fatigue/lifetime.hpp"
#include "fatigue/network.hpp"
#include "fatigue/rng.hpp"
#include "fatigue/simulator.hpp"
#include "fatigue/studies.hpp"
#include "fatigue/training.hpp"

using namespace fatigue;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CheckResult {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Shared expensive artifacts, built once on first use.
struct SharedState {
  RunConfig cfg; // defaults
  std::optional<SNTable> sn;
  std::optional<Dataset> dataset;
  std::optional<SurrogateModel> large_model;
  std::optional<SurrogateModel> small_phys_model;
  std::optional<SurrogateModel> small_data_model;
  double small_phys_seconds = 0.0;
  int threads = 8;

  const SNTable& sn_table() {
    if (!sn) {
      sn = build_sn_table(cfg.material, grid_levels(), cfg.s_min, cfg.limits,
                          cfg.disc, threads);
    }
    return *sn;
  }

  const Dataset& data() {
    if (!dataset) {
      Dataset ds = generate(cfg.material, sn_table(), cfg.limits, cfg.disc,
                            cfg.seed, threads);
      assign_splits(ds, cfg.split_fractions, cfg.seed);
      dataset = std::move(ds);
    }
    return *dataset;
  }

  std::vector<TrainSample> samples_for(Split split) {
    std::vector<TrainSample> out;
    for (const Sample& s : data().samples) {
      if (s.split == split) {
        out.push_back({{s.s1max, s.delta_smax, s.eta_cons}, s.sum_eta});
      }
    }
    return out;
  }

  // The large-data model is purely data-driven (case 1); the physics loss
  // belongs to the small-data phiML runs (case 2).
  const SurrogateModel& large() {
    if (!large_model) {
      TrainingConfig tc = cfg.training;
      tc.seed = cfg.seed;
      const TrainResult r = train(samples_for(Split::Train),
                                  samples_for(Split::Val),
                                  NetworkConfig::standard(), tc,
                                  LossWeights::data_only());
      large_model = std::move(r.model);
    }
    return *large_model;
  }

  // Surrogate driving Algorithm 1 in the validation studies: the
  // physics-augmented model.
  const SurrogateModel& study_model() {
    train_small();
    return *small_phys_model;
  }

  void train_small() {
    if (small_phys_model) return;
    const SmallSubset sub = small_subset(data());
    std::vector<TrainSample> train_set;
    for (std::size_t i : sub.train) {
      const Sample& s = data().samples[i];
      train_set.push_back({{s.s1max, s.delta_smax, s.eta_cons}, s.sum_eta});
    }
    TrainingConfig tc = cfg.training;
    tc.seed = cfg.seed;
    tc.batch_size = static_cast<int>(train_set.size()); // full batch
    const auto t0 = Clock::now();
    TrainResult phys =
        train(train_set, {}, NetworkConfig::standard(), tc, cfg.loss);
    small_phys_seconds = seconds_since(t0);
    TrainResult data_only = train(train_set, {}, NetworkConfig::standard(), tc,
                                  LossWeights::data_only());
    small_phys_model = std::move(phys.model);
    small_data_model = std::move(data_only.model);
  }

  std::vector<TrainSample> small_test_set() {
    const SmallSubset sub = small_subset(data());
    std::vector<TrainSample> out;
    for (std::size_t i : sub.test) {
      const Sample& s = data().samples[i];
      out.push_back({{s.s1max, s.delta_smax, s.eta_cons}, s.sum_eta});
    }
    return out;
  }
};

SharedState g;
std::string g_cli_path;

// Keeps the throughput timing loop from being optimized away.
volatile double benchmark_sink = 0.0;

// ---------------------------------------------------------------------------

CheckResult check_elastic_oracle() {
  const auto t0 = Clock::now();
  const double E = 45000.0, nu = 0.2;
  double worst = 0.0;
  for (double s : {1.0, 14.0, 35.0, 50.0, 63.0}) {
    const double eps2 = lateral_strain(g.cfg.material, s, 0.0);
    const double eps1 = axial_strain(g.cfg.material, s, eps2, 0.0);
    worst = std::max(worst, std::abs(eps1 - s / E) / (s / E));
    worst = std::max(worst, std::abs(eps2 - nu * s / E) / (nu * s / E));
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-12 && dt < 1.0,
          "max rel err " + fmt(worst) + ", " + fmt(dt) + " s"};
}

CheckResult check_gradients() {
  const auto t0 = Clock::now();
  SurrogateModel m = make_model(NetworkConfig::standard());
  auto rng = make_stream(21, "acceptance.grad");
  for (auto& layer : m.weights) {
    for (double& w : layer) w = uniform01(rng) - 0.5;
  }
  for (auto& layer : m.biases) {
    for (double& b : layer) b = 0.2 * (uniform01(rng) - 0.5);
  }
  std::vector<TrainSample> batch;
  for (int i = 0; i < 32; ++i) {
    batch.push_back({{0.65 + 0.25 * uniform01(rng),
                      -0.25 + 0.5 * uniform01(rng), uniform01(rng)},
                     0.4 + 1.2 * uniform01(rng)});
  }
  const LossWeights w{};
  Gradient grad = Gradient::zeros_like(m);
  gradients(m, batch, w, grad);
  auto loss_at = [&]() { return loss_total(m, batch, w).total(); };
  const double h = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t l = bounded(rng, m.num_layers());
    double* p;
    double analytic;
    if (trial % 5 == 0) {
      const std::size_t i = bounded(rng, m.biases[l].size());
      p = &m.biases[l][i];
      analytic = grad.biases[l][i];
    } else {
      const std::size_t i = bounded(rng, m.weights[l].size());
      p = &m.weights[l][i];
      analytic = grad.weights[l][i];
    }
    const double saved = *p;
    *p = saved + h;
    const double lp = loss_at();
    *p = saved - h;
    const double lm = loss_at();
    *p = saved;
    const double fd = (lp - lm) / (2.0 * h);
    const double scale = std::max({std::abs(fd), std::abs(analytic), 1e-8});
    worst = std::max(worst, std::abs(fd - analytic) / scale);
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-4 && dt < 30.0,
          "max rel err " + fmt(worst) + " over 100 params, " + fmt(dt) + " s"};
}

CheckResult check_sn_monotonic() {
  const auto t0 = Clock::now();
  const SNTable& sn = g.sn_table();
  const double dt = seconds_since(t0);
  bool mono = true;
  std::uint64_t prev = 0;
  bool first = true;
  std::string listing;
  for (const auto& [level, n_f] : sn.entries) {
    if (!first && n_f >= prev) mono = false;
    prev = n_f;
    first = false;
    listing += fmt(level) + ":" + std::to_string(n_f) + " ";
  }
  return {mono && sn.entries.size() == 6 && dt < 600.0,
          listing + "(" + fmt(dt) + " s)"};
}

CheckResult check_sequence_effect() {
  const Dataset& ds = g.data();
  std::size_t violations = 0;
  for (const Sample& s : ds.samples) {
    if (s.eta_cons <= 0.0 || s.eta_cons >= 1.0) continue;
    if (s.delta_smax > 0.0 && !(s.sum_eta < 1.0)) ++violations;
    if (s.delta_smax < 0.0 && !(s.sum_eta > 1.0)) ++violations;
  }
  return {violations == 0,
          std::to_string(violations) + " sign violations over 630 labels"};
}

CheckResult check_dataset_shape() {
  const Dataset& ds = g.data();
  bool boundary_exact = true;
  double lo = 10.0, hi = -10.0;
  for (const Sample& s : ds.samples) {
    if ((s.eta_cons == 0.0 || s.eta_cons == 1.0) && s.sum_eta != 1.0) {
      boundary_exact = false;
    }
    lo = std::min(lo, s.sum_eta);
    hi = std::max(hi, s.sum_eta);
  }
  const bool count_ok = ds.samples.size() == 630;
  const bool min_ok = lo >= 0.3 && lo <= 0.7;
  const bool max_ok = hi >= 1.3 && hi <= 1.8;
  return {count_ok && boundary_exact && min_ok && max_ok,
          "n=" + std::to_string(ds.samples.size()) +
              (boundary_exact ? ", boundary rows exact" : ", boundary rows OFF") +
              ", min " + fmt(lo) + " (band [0.3,0.7]), max " + fmt(hi) +
              " (band [1.3,1.8])"};
}

CheckResult check_large_model() {
  const SurrogateModel& m = g.large();
  const double r2 = evaluate_r2(m, g.samples_for(Split::Test));
  return {r2 >= 0.95, "held-out test R2 " + fmt(r2) + " (need >= 0.95)"};
}

CheckResult check_small_comparison() {
  g.train_small();
  const std::vector<TrainSample> test = g.small_test_set();
  const double r2_phys = evaluate_r2(*g.small_phys_model, test);
  const double r2_data = evaluate_r2(*g.small_data_model, test);
  const bool ok = r2_phys >= 0.90 && (r2_phys - r2_data) >= 0.03 &&
                  g.small_phys_seconds < 900.0;
  return {ok, "phys R2 " + fmt(r2_phys) + ", data R2 " + fmt(r2_data) +
                  ", margin " + fmt(r2_phys - r2_data) + ", " +
                  fmt(g.small_phys_seconds) + " s"};
}

CheckResult check_pm_stub() {
  const Predictor pm = [](double, double, double) { return 1.0; };
  auto rng = make_stream(g.cfg.seed, "acceptance.pm");
  std::size_t mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    MultiLevelScenario sc;
    const std::size_t n = 2 + bounded(rng, 8);
    for (std::size_t i = 0; i < n; ++i) {
      sc.s_max.push_back(0.65 + 0.05 * static_cast<double>(bounded(rng, 6)));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      sc.eta.push_back(0.01 + 0.98 * uniform01(rng));
    }
    const LifetimeTrace tr = predict_remaining(pm, sc);
    const double expected = std::clamp(1.0 - pm_sum(sc.eta), 0.0, 1.0);
    if (tr.remaining != expected) ++mismatches;
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " mismatches over 1000 scenarios"};
}

CheckResult check_three_level() {
  const SurrogateModel& m = g.study_model();
  const Predictor pred = [&m](double s1, double ds, double eta) {
    return predict(m, s1, ds, eta);
  };
  bool all_ok = true;
  std::string detail;
  for (StudyFamily fam : {StudyFamily::HLH, StudyFamily::LHL,
                          StudyFamily::Ascending, StudyFamily::Descending}) {
    const StudyResult res =
        run_sequence_study(pred, g.cfg.material, g.sn_table(),
                           StudySpec::three_level(fam), g.cfg.limits,
                           g.cfg.disc, g.threads);
    if (res.insufficient_data || res.r2 < 0.85) all_ok = false;
    detail += family_name(fam) + " R2 " + fmt(res.r2) + " (excl " +
              std::to_string(res.excluded_count) + ") ";
  }
  return {all_ok, detail + "(need >= 0.85 each)"};
}

CheckResult check_multi_jump() {
  const SurrogateModel& m = g.study_model();
  const Predictor pred = [&m](double s1, double ds, double eta) {
    return predict(m, s1, ds, eta);
  };
  const std::vector<std::pair<int, std::size_t>> plans = {
      {3, 50}, {5, 578}, {10, 3000}};
  const std::vector<double> targets = {0.830, 0.679, 0.640};
  std::vector<double> means;
  for (const auto& [levels, samples] : plans) {
    const StudyResult res = run_multi_jump_study(
        pred, StudySpec::multi_jump(levels, samples, g.cfg.seed), g.cfg.s_min,
        g.threads);
    means.push_back(res.mean_sum_eta);
  }
  bool in_band = true;
  std::string detail;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (std::abs(means[i] - targets[i]) > 0.10) in_band = false;
    detail += std::to_string(plans[i].first) + "-level mean " + fmt(means[i]) +
              " (target " + fmt(targets[i]) + "+-0.10) ";
  }
  const bool decreasing = means[0] > means[1] && means[1] > means[2];
  const bool below_one =
      means[0] < 1.0 && means[1] < 1.0 && means[2] < 1.0;
  return {in_band && decreasing && below_one,
          detail + (decreasing ? "decreasing" : "NOT decreasing") + ", " +
              (below_one ? "all < 1" : "NOT all < 1")};
}

CheckResult check_throughput() {
  const SurrogateModel& m = g.study_model();
  const Predictor pred = [&m](double s1, double ds, double eta) {
    return predict(m, s1, ds, eta);
  };
  // 3000 multi-jump predictions, single-threaded.
  const auto t0 = Clock::now();
  const StudyResult res = run_multi_jump_study(
      pred, StudySpec::multi_jump(10, 3000, g.cfg.seed), g.cfg.s_min, 1);
  const double batch_s = seconds_since(t0);

  // Single surrogate prediction, averaged.
  const int reps = 100000;
  double sink = 0.0;
  const auto t1 = Clock::now();
  for (int i = 0; i < reps; ++i) {
    sink += predict(m, 0.8, 0.1, 0.3 + 1e-7 * i);
  }
  benchmark_sink = sink;
  const double per_pred = seconds_since(t1) / reps;

  // Full cycle-by-cycle two-stage simulation for the contrast.
  const auto t2 = Clock::now();
  (void)run_two_stage(g.cfg.material, 0.65, 0.70, g.cfg.s_min, 0.5,
                      g.sn_table(), g.cfg.limits, g.cfg.disc);
  const double sim_s = seconds_since(t2);

  const double ratio = sim_s / per_pred;
  const bool ok = batch_s < 10.0 && per_pred < 1e-3 && ratio >= 1e3 &&
                  res.records.size() == 3000;
  return {ok, "3000 preds " + fmt(batch_s) + " s, single pred " +
                  fmt(per_pred * 1e6) + " us, sim " + fmt(sim_s * 1e3) +
                  " ms, ratio " + fmt(ratio) + "x"};
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

CheckResult check_determinism() {
  if (g_cli_path.empty()) {
    return {false, "CLI path not provided (pass it as argv[1])"};
  }
  const fs::path base = fs::temp_directory_path() / "fatigue_determinism";
  std::error_code ec;
  fs::remove_all(base, ec);
  const std::vector<std::pair<std::string, int>> runs = {
      {"a1", 1}, {"b1", 1}, {"a8", 8}, {"b8", 8}};
  // Short training keeps the check fast; determinism does not depend on the
  // epoch count.
  const std::string trainer_opts =
      " --set training.max_epochs=40 --set training.patience=40";
  for (const auto& [tag, threads] : runs) {
    const std::string dir = (base / tag).string();
    const std::string common =
        "--seed 1 --threads " + std::to_string(threads) + " --out-dir " + dir;
    if (run_cli(common + " gen-dataset") != 0) {
      return {false, "gen-dataset failed in " + dir};
    }
    if (run_cli(common + trainer_opts + " train --dataset " + dir +
                "/dataset.csv") != 0) {
      return {false, "train failed in " + dir};
    }
    if (run_cli(common + " study --study jumps --model " + dir +
                "/model_phys.txt") != 0) {
      return {false, "study failed in " + dir};
    }
  }
  const std::vector<std::string> files = {
      "dataset.csv",        "model_phys.txt",          "history_phys.csv",
      "study_jumps_3_level.csv", "study_jumps_summary.json"};
  const std::string ref = (base / "a1").string();
  for (const auto& [tag, threads] : runs) {
    if (tag == "a1") continue;
    for (const std::string& f : files) {
      const std::string a = read_text_file(ref + "/" + f);
      const std::string b = read_text_file((base / tag / f).string());
      if (a != b) {
        return {false, f + " differs between a1 and " + tag};
      }
    }
  }
  fs::remove_all(base, ec);
  return {true, "gen-dataset/train/study byte-identical across 2 runs x "
                "threads {1, 8}"};
}

} // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    CheckResult (*fn)();
  };
  const std::vector<Criterion> criteria = {
      {1, "elastic oracle", check_elastic_oracle},
      {2, "gradient check", check_gradients},
      {3, "S-N monotonicity", check_sn_monotonic},
      {4, "sequence-effect property", check_sequence_effect},
      {5, "dataset shape", check_dataset_shape},
      {6, "large-data model", check_large_model},
      {7, "small-data comparison", check_small_comparison},
      {8, "P-M stub equivalence", check_pm_stub},
      {9, "three-level validation", check_three_level},
      {10, "multi-jump study", check_multi_jump},
      {11, "throughput", check_throughput},
      {12, "determinism", check_determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && std::isdigit(static_cast<unsigned char>(arg[0]))) {
      selected.push_back(std::atoi(arg.c_str()));
    } else {
      g_cli_path = arg;
    }
  }

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    CheckResult r;
    try {
      r = c.fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << c.id << " (" << c.name << "): "
              << (r.pass ? "PASS" : "FAIL") << " - " << r.detail << std::endl;
    if (!r.pass) ++failures;
  }
  return failures;
}
