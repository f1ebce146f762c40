// fatigue: command-line front end for the concrete fatigue simulator and the
// neural remaining-lifetime surrogate.
//
// Subcommands: sn-curve, simulate, gen-dataset, train, predict, study.
// Exit codes: 0 success, 2 usage/config error, 3 numerical fault,
// 4 self-check failure (--check).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fatigue/config.hpp"
#include "fatigue/dataset.hpp"
#include "fatigue/io.hpp"
#include "fatigue/lifetime.hpp"
#include "fatigue/network.hpp"
#include "fatigue/rng.hpp"
#include "fatigue/simulator.hpp"
#include "fatigue/studies.hpp"
#include "fatigue/training.hpp"

using nlohmann::json;
using namespace fatigue;

namespace {

std::string fingerprint_hex(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(cfg.fingerprint()));
  return buf;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

SNTable grid_sn_table(const RunConfig& cfg, int threads) {
  return build_sn_table(cfg.material, grid_levels(), cfg.s_min, cfg.limits,
                        cfg.disc, threads);
}

// Multi-level prediction scenarios reuse the block-scenario JSON: every block
// but the last carries an eta, the last runs to failure.
MultiLevelScenario to_multi_level(const LoadScenario& sc) {
  MultiLevelScenario out;
  out.s_min = sc.s_min;
  for (std::size_t i = 0; i < sc.blocks.size(); ++i) {
    const LoadBlock& b = sc.blocks[i];
    out.s_max.push_back(b.s_max);
    if (i + 1 < sc.blocks.size()) {
      if (b.kind != DurationKind::ConsumedFraction) {
        throw InvalidScenario(
            "prediction scenarios need consumed fractions on all but the last "
            "level");
      }
      out.eta.push_back(b.eta);
    } else if (b.kind != DurationKind::ToFailure) {
      throw InvalidScenario("the final level must run to failure");
    }
  }
  out.validate();
  return out;
}

json study_records_json(const StudyResult& res) {
  json rows = json::array();
  for (const ScenarioRecord& r : res.records) {
    rows.push_back({{"scenario_id", r.id},
                    {"true_rem", r.true_remaining},
                    {"pred_rem", r.predicted_remaining},
                    {"excluded", r.excluded}});
  }
  return rows;
}

void write_study_csv(const StudyResult& res, const std::string& path,
                     const std::string& fp) {
  std::string out = "# config_fingerprint=" + fp + "\n";
  out += "scenario_id,true_rem,pred_rem,excluded\n";
  for (const ScenarioRecord& r : res.records) {
    out += std::to_string(r.id) + ',' + format_double(r.true_remaining) + ',' +
           format_double(r.predicted_remaining) + ',' +
           (r.excluded ? "1" : "0") + '\n';
  }
  write_text_file(path, out);
}

Predictor model_predictor(const SurrogateModel& m) {
  return [&m](double s1, double ds, double eta) {
    return predict(m, s1, ds, eta);
  };
}

int cmd_sn_curve(const RunConfig& cfg) {
  const std::string fp = fingerprint_hex(cfg);
  std::string out = "# config_fingerprint=" + fp + "\n";
  out += "s_max,n_f,status\n";
  for (double level : grid_levels()) {
    const ConstantAmplitudeResult r = run_constant_amplitude(
        cfg.material, level, cfg.s_min, cfg.limits, cfg.disc);
    out += format_double(level) + ',' + std::to_string(r.n_f) + ',' +
           (r.runout ? "runout" : "ok") + '\n';
  }
  const std::string path = out_path(cfg, "sn_curve.csv");
  write_text_file(path, out);
  std::cout << "wrote " << path << '\n';
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& scenario_path) {
  LoadScenario sc = read_scenario_json(scenario_path);
  bool needs_table = false;
  for (const LoadBlock& b : sc.blocks) {
    if (b.kind == DurationKind::ConsumedFraction) needs_table = true;
  }
  if (needs_table) {
    MaterialParameters p = cfg.material;
    p.fc = sc.fc;
    std::vector<double> levels;
    for (const LoadBlock& b : sc.blocks) levels.push_back(b.s_max);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    const SNTable sn =
        build_sn_table(p, levels, sc.s_min, cfg.limits, cfg.disc, cfg.threads);
    sc = resolve_durations(sc, sn);
  }
  const ScenarioResult r = run_scenario(cfg.material, sc, cfg.limits, cfg.disc);

  const std::string fp = fingerprint_hex(cfg);
  std::string hist = "# config_fingerprint=" + fp + "\n";
  hist += "cycle,eps_top,eps_bot,damage\n";
  for (std::size_t i = 0; i < r.damage_history.size(); ++i) {
    hist += std::to_string(i + 1) + ',' + format_double(r.eps_top[i]) + ',' +
            format_double(r.eps_bot[i]) + ',' +
            format_double(r.damage_history[i]) + '\n';
  }
  write_text_file(out_path(cfg, "simulate_history.csv"), hist);

  json summary;
  summary["config_fingerprint"] = fp;
  summary["failed"] = r.failed;
  if (r.failure_block) summary["failure_block"] = *r.failure_block;
  summary["cycles_per_block"] = r.cycles_per_block;
  std::uint64_t total = 0;
  for (std::uint64_t c : r.cycles_per_block) total += c;
  summary["total_cycles"] = total;
  const std::string spath = out_path(cfg, "simulate_summary.json");
  write_text_file(spath, summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int cmd_gen_dataset(const RunConfig& cfg, bool small_tags) {
  const SNTable sn = grid_sn_table(cfg, cfg.threads);
  Dataset ds =
      generate(cfg.material, sn, cfg.limits, cfg.disc, cfg.seed, cfg.threads);
  if (small_tags) {
    const SmallSubset sub = small_subset(ds);
    for (std::size_t i : sub.train) ds.samples[i].split = Split::Train;
    for (std::size_t i : sub.test) ds.samples[i].split = Split::Test;
  } else {
    assign_splits(ds, cfg.split_fractions, cfg.seed);
  }

  const std::string fp = fingerprint_hex(cfg);
  const std::string csv_path = out_path(cfg, "dataset.csv");
  {
    // Temporary file then prepend the fingerprint comment keeps the writer
    // reusable for fingerprint-free unit fixtures.
    write_dataset_csv(ds, csv_path);
    const std::string body = read_text_file(csv_path);
    write_text_file(csv_path, "# config_fingerprint=" + fp + "\n" + body);
  }

  json meta;
  meta["config_fingerprint"] = fp;
  meta["seed"] = cfg.seed;
  meta["samples"] = ds.samples.size();
  meta["small_subset_tags"] = small_tags;
  meta["s_min"] = cfg.s_min;
  meta["substeps_per_branch"] = cfg.disc.substeps_per_branch;
  json sn_json = json::array();
  for (const auto& [level, n_f] : sn.entries) {
    sn_json.push_back({{"s_max", level}, {"n_f", n_f}});
  }
  meta["sn_table"] = sn_json;
  json mat;
  mat["lambda"] = cfg.material.lambda;
  mat["mu"] = cfg.material.mu;
  mat["g"] = cfg.material.g;
  mat["K"] = cfg.material.K;
  mat["C0"] = cfg.material.C0;
  mat["C1"] = cfg.material.C1;
  mat["alpha"] = cfg.material.alpha;
  mat["beta"] = cfg.material.beta;
  mat["n"] = cfg.material.n;
  mat["fc"] = cfg.material.fc;
  meta["material"] = mat;
  write_text_file(out_path(cfg, "dataset_meta.json"), meta.dump(2) + "\n");
  std::cout << "wrote " << csv_path << " (" << ds.samples.size()
            << " samples)\n";
  return 0;
}

std::vector<TrainSample> to_train_samples(const Dataset& ds,
                                          const std::vector<std::size_t>& idx) {
  std::vector<TrainSample> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    const Sample& s = ds.samples[i];
    out.push_back({{s.s1max, s.delta_smax, s.eta_cons}, s.sum_eta});
  }
  return out;
}

int cmd_train(const RunConfig& cfg, const std::string& dataset_path,
              const std::string& mode, bool small) {
  if (mode != "phys" && mode != "data") {
    throw ConfigError("--mode must be phys or data");
  }
  const Dataset ds = read_dataset_csv(dataset_path);
  std::vector<std::size_t> train_idx, val_idx, test_idx;
  if (small) {
    const SmallSubset sub = small_subset(ds);
    train_idx = sub.train;
    test_idx = sub.test;
  } else {
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
      switch (ds.samples[i].split) {
        case Split::Train: train_idx.push_back(i); break;
        case Split::Val: val_idx.push_back(i); break;
        case Split::Test: test_idx.push_back(i); break;
      }
    }
  }
  const std::vector<TrainSample> train_set = to_train_samples(ds, train_idx);
  const std::vector<TrainSample> val_set = to_train_samples(ds, val_idx);
  const std::vector<TrainSample> test_set = to_train_samples(ds, test_idx);

  TrainingConfig tc = cfg.training;
  tc.seed = cfg.seed;
  // The 60-sample subset trains full-batch; the large split uses mini-batches.
  if (small) tc.batch_size = static_cast<int>(train_set.size());
  const LossWeights w = mode == "phys" ? cfg.loss : LossWeights::data_only();
  const TrainResult r =
      train(train_set, val_set, NetworkConfig::standard(), tc, w);

  const std::string fp = fingerprint_hex(cfg);
  const std::string model_path =
      out_path(cfg, "model_" + mode + (small ? "_small" : "") + ".txt");
  save_model(r.model, model_path);

  std::string hist = "# config_fingerprint=" + fp + "\n";
  hist += "epoch,l_data,l_const,l_bound,l_spars,l_total,l_val\n";
  for (const TrainingHistory::Row& row : r.history.rows) {
    hist += std::to_string(row.epoch) + ',' + format_double(row.train.data) +
            ',' + format_double(row.train.constr) + ',' +
            format_double(row.train.bound) + ',' +
            format_double(row.train.spars) + ',' +
            format_double(row.train.total()) + ',' + format_double(row.val) +
            '\n';
  }
  write_text_file(
      out_path(cfg, "history_" + mode + (small ? "_small" : "") + ".csv"),
      hist);

  json meta;
  meta["config_fingerprint"] = fp;
  meta["mode"] = mode;
  meta["small_subset"] = small;
  meta["model_file"] = std::filesystem::path(model_path).filename().string();
  meta["stopped_epoch"] = r.stopped_epoch;
  meta["r2_train"] = evaluate_r2(r.model, train_set);
  if (!val_set.empty()) meta["r2_val"] = evaluate_r2(r.model, val_set);
  if (!test_set.empty()) meta["r2_test"] = evaluate_r2(r.model, test_set);
  write_text_file(
      out_path(cfg, "train_meta_" + mode + (small ? "_small" : "") + ".json"),
      meta.dump(2) + "\n");
  std::cout << meta.dump(2) << '\n';
  return 0;
}

int cmd_predict(const RunConfig& cfg, const std::string& model_path,
                const std::string& scenario_path, bool stub_pm) {
  const MultiLevelScenario sc = to_multi_level(read_scenario_json(scenario_path));
  SurrogateModel model;
  Predictor pred;
  if (stub_pm) {
    pred = [](double, double, double) { return 1.0; };
  } else {
    model = load_model(model_path);
    pred = model_predictor(model);
  }
  const LifetimeTrace t = predict_remaining(pred, sc);

  json out;
  out["config_fingerprint"] = fingerprint_hex(cfg);
  out["remaining"] = t.remaining;
  out["remaining_raw"] = t.remaining_raw;
  if (t.failure_at_level) out["failure_at_level"] = *t.failure_at_level;
  out["accumulated_at_failure"] = accumulated_at_failure(sc, t);
  json jumps = json::array();
  for (const JumpRecord& j : t.jumps) {
    jumps.push_back({{"i", j.i},
                     {"delta_s", j.delta_s},
                     {"eta_new", j.eta_new},
                     {"eta_out", j.eta_out},
                     {"delta_eta", j.delta_eta},
                     {"sum_eta", j.sum_eta},
                     {"eta_rem_next", j.eta_rem_next}});
  }
  out["jumps"] = jumps;
  write_text_file(out_path(cfg, "predict_trace.json"), out.dump(2) + "\n");
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_study(const RunConfig& cfg, const std::string& model_path,
              const std::string& which) {
  const SurrogateModel model = load_model(model_path);
  const Predictor pred = model_predictor(model);
  const std::string fp = fingerprint_hex(cfg);

  if (which == "three") {
    const SNTable sn = grid_sn_table(cfg, cfg.threads);
    json summary;
    summary["config_fingerprint"] = fp;
    for (StudyFamily fam : {StudyFamily::HLH, StudyFamily::LHL,
                            StudyFamily::Ascending, StudyFamily::Descending}) {
      const StudySpec spec = StudySpec::three_level(fam);
      const StudyResult res = run_sequence_study(
          pred, cfg.material, sn, spec, cfg.limits, cfg.disc, cfg.threads);
      std::string tag = family_name(fam);
      std::replace(tag.begin(), tag.end(), '-', '_');
      for (char& c : tag) c = static_cast<char>(std::tolower(c));
      write_study_csv(res, out_path(cfg, "study_three_" + tag + ".csv"), fp);
      summary[tag] = {{"r2", res.r2},
                      {"scenarios", res.records.size()},
                      {"excluded", res.excluded_count},
                      {"insufficient_data", res.insufficient_data}};
    }
    write_text_file(out_path(cfg, "study_three_summary.json"),
                    summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    return 0;
  }
  if (which == "jumps" || which == "five") {
    json summary;
    summary["config_fingerprint"] = fp;
    std::vector<std::pair<int, std::size_t>> plans;
    if (which == "five") {
      plans = {{5, 578}};
    } else {
      plans = {{3, 50}, {5, 578}, {10, 3000}};
    }
    for (const auto& [levels, samples] : plans) {
      const StudySpec spec = StudySpec::multi_jump(levels, samples, cfg.seed);
      const StudyResult res =
          run_multi_jump_study(pred, spec, cfg.s_min, cfg.threads);
      const std::string tag = std::to_string(levels) + "_level";
      write_study_csv(res, out_path(cfg, "study_jumps_" + tag + ".csv"), fp);
      summary[tag] = {{"mean_sum_eta", res.mean_sum_eta},
                      {"scenarios", res.records.size()}};
    }
    write_text_file(out_path(cfg, "study_jumps_summary.json"),
                    summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    return 0;
  }
  throw ConfigError("unknown study: " + which + " (use three, five, or jumps)");
}

// Fast self-checks wired to --check: elastic constants, the P-M stub
// equivalence, and config round-tripping. Exit 4 on any failure.
int run_self_checks(const RunConfig& cfg) {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  {
    const double E = 45000.0, nu = 0.2, s = 50.0;
    const double eps2 = lateral_strain(cfg.material, s, 0.0);
    const double eps1 = axial_strain(cfg.material, s, eps2, 0.0);
    const bool ok = std::abs(eps1 - s / E) / (s / E) < 1e-12 &&
                    std::abs(eps2 - nu * s / E) / (nu * s / E) < 1e-12;
    report("elastic-constants", ok);
  }
  {
    const Predictor pm = [](double, double, double) { return 1.0; };
    auto rng = make_stream(cfg.seed, "check.pm");
    bool ok = true;
    for (int t = 0; t < 1000 && ok; ++t) {
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
      ok = tr.remaining == expected;
    }
    report("palmgren-miner-stub", ok);
  }
  {
    const RunConfig back = parse_config(cfg.dump());
    report("config-roundtrip", back.fingerprint() == cfg.fingerprint());
  }
  report("grid-shape", enumerate_grid().size() == 630);
  return failures == 0 ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concrete fatigue simulator and neural lifetime surrogate"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  std::string out_dir;
  bool check = false;
  app.add_option("--config", config_path, "Configuration file")
      ->envname("FATIGUE_CONFIG");
  app.add_option("--set", overrides, "Override section.key=value");
  app.add_option("--seed", seed, "Top-level RNG seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "Worker thread count");
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_flag("--check", check, "Run fast self-checks and exit");

  auto* sn_cmd = app.add_subcommand("sn-curve", "Generate the S-N curve CSV");

  std::string scenario_path;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a block-loading scenario");
  sim_cmd->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();

  bool small_flag = false;
  auto* gen_cmd =
      app.add_subcommand("gen-dataset", "Generate the two-stage dataset");
  gen_cmd->add_flag("--small-subset", small_flag,
                    "Tag the 60/570 small-data split instead of 70/15/15");

  std::string dataset_path = "dataset.csv";
  std::string mode = "phys";
  bool train_small = false;
  auto* train_cmd = app.add_subcommand("train", "Train the surrogate");
  train_cmd->add_option("--dataset", dataset_path, "Dataset CSV");
  train_cmd->add_option("--mode", mode, "phys (physics-augmented) or data");
  train_cmd->add_flag("--small-subset", train_small,
                      "Train on the 60-sample subset");

  std::string model_path = "model_phys.txt";
  std::string predict_scenario;
  bool stub_pm = false;
  auto* predict_cmd =
      app.add_subcommand("predict", "Remaining-lifetime prediction");
  predict_cmd->add_option("scenario", predict_scenario, "Scenario JSON file")
      ->required();
  predict_cmd->add_option("--model", model_path, "Model file");
  predict_cmd->add_flag("--stub-pm", stub_pm,
                        "Use the constant-1 Palmgren-Miner stub");

  std::string study_name;
  std::string study_model = "model_phys.txt";
  auto* study_cmd = app.add_subcommand("study", "Run a validation study");
  study_cmd->add_option("--study", study_name, "three, five, or jumps")
      ->required();
  study_cmd->add_option("--model", study_model, "Model file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    for (const std::string& o : overrides) apply_override(cfg, o);
    if (seed_set) cfg.seed = seed;
    if (threads > 0) cfg.threads = threads;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    if (check) return run_self_checks(cfg);
    if (sn_cmd->parsed()) return cmd_sn_curve(cfg);
    if (sim_cmd->parsed()) return cmd_simulate(cfg, scenario_path);
    if (gen_cmd->parsed()) return cmd_gen_dataset(cfg, small_flag);
    if (train_cmd->parsed())
      return cmd_train(cfg, dataset_path, mode, train_small);
    if (predict_cmd->parsed())
      return cmd_predict(cfg, model_path, predict_scenario, stub_pm);
    if (study_cmd->parsed()) return cmd_study(cfg, study_model, study_name);
    std::cout << app.help();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidScenario& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
