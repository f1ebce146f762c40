#include "fatigue/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "fatigue/io.hpp"
#include "fatigue/rng.hpp"

namespace fatigue {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// One mutable binding per key; dump() and the parser share this table so the
// two can never drift apart.
struct Binding {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  const double d = std::stod(v, &pos);
  if (pos != v.size()) throw ConfigError("bad numeric value: " + v);
  return d;
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t pos = 0;
  const unsigned long long u = std::stoull(v, &pos);
  if (pos != v.size()) throw ConfigError("bad integer value: " + v);
  return static_cast<std::uint64_t>(u);
}

const std::map<std::string, Binding>& bindings() {
  static const std::map<std::string, Binding> table = [] {
    std::map<std::string, Binding> t;
    auto num = [&t](const std::string& key, auto member) {
      t[key] = {[member](const RunConfig& c) {
                  return format_double(std::invoke(member, c));
                },
                [member](RunConfig& c, const std::string& v) {
                  std::invoke(member, c) = parse_double(v);
                }};
    };
    num("material.lambda", [](auto& c) -> auto& { return c.material.lambda; });
    num("material.mu", [](auto& c) -> auto& { return c.material.mu; });
    num("material.g", [](auto& c) -> auto& { return c.material.g; });
    num("material.K", [](auto& c) -> auto& { return c.material.K; });
    num("material.C0", [](auto& c) -> auto& { return c.material.C0; });
    num("material.C1", [](auto& c) -> auto& { return c.material.C1; });
    num("material.alpha", [](auto& c) -> auto& { return c.material.alpha; });
    num("material.beta", [](auto& c) -> auto& { return c.material.beta; });
    num("material.n", [](auto& c) -> auto& { return c.material.n; });
    num("material.fc", [](auto& c) -> auto& { return c.material.fc; });
    num("simulation.s_min", [](auto& c) -> auto& { return c.s_min; });
    num("simulation.omega_crit",
        [](auto& c) -> auto& { return c.limits.omega_crit; });
    num("training.learning_rate",
        [](auto& c) -> auto& { return c.training.learning_rate; });
    num("training.loss_tolerance",
        [](auto& c) -> auto& { return c.training.loss_tolerance; });
    num("loss.w_const", [](auto& c) -> auto& { return c.loss.w_const; });
    num("loss.w_bound", [](auto& c) -> auto& { return c.loss.w_bound; });
    num("loss.w_spars", [](auto& c) -> auto& { return c.loss.w_spars; });
    num("dataset.train_fraction",
        [](auto& c) -> auto& { return c.split_fractions[0]; });
    num("dataset.val_fraction",
        [](auto& c) -> auto& { return c.split_fractions[1]; });
    num("dataset.test_fraction",
        [](auto& c) -> auto& { return c.split_fractions[2]; });

    t["simulation.substeps"] = {
        [](const RunConfig& c) {
          return std::to_string(c.disc.substeps_per_branch);
        },
        [](RunConfig& c, const std::string& v) {
          c.disc.substeps_per_branch = static_cast<int>(parse_u64(v));
        }};
    t["simulation.max_cycles"] = {
        [](const RunConfig& c) { return std::to_string(c.limits.max_cycles); },
        [](RunConfig& c, const std::string& v) {
          c.limits.max_cycles = parse_u64(v);
        }};
    t["training.batch_size"] = {
        [](const RunConfig& c) { return std::to_string(c.training.batch_size); },
        [](RunConfig& c, const std::string& v) {
          c.training.batch_size = static_cast<int>(parse_u64(v));
        }};
    t["training.max_epochs"] = {
        [](const RunConfig& c) { return std::to_string(c.training.max_epochs); },
        [](RunConfig& c, const std::string& v) {
          c.training.max_epochs = static_cast<int>(parse_u64(v));
        }};
    t["training.patience"] = {
        [](const RunConfig& c) { return std::to_string(c.training.patience); },
        [](RunConfig& c, const std::string& v) {
          c.training.patience = static_cast<int>(parse_u64(v));
        }};
    t["run.seed"] = {
        [](const RunConfig& c) { return std::to_string(c.seed); },
        [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); }};
    t["run.threads"] = {
        [](const RunConfig& c) { return std::to_string(c.threads); },
        [](RunConfig& c, const std::string& v) {
          c.threads = static_cast<int>(parse_u64(v));
        }};
    t["run.out_dir"] = {
        [](const RunConfig& c) { return c.out_dir; },
        [](RunConfig& c, const std::string& v) { c.out_dir = v; }};
    return t;
  }();
  return table;
}

} // namespace

std::string RunConfig::dump() const {
  std::ostringstream os;
  std::string section;
  for (const auto& [key, binding] : bindings()) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      os << '[' << sec << "]\n";
      section = sec;
    }
    os << key.substr(dot + 1) << " = " << binding.get(*this) << '\n';
  }
  return os.str();
}

std::uint64_t RunConfig::fingerprint() const {
  // run.threads and run.out_dir describe where/how a run executes, not what
  // it computes; excluding them keeps fingerprints stable across thread
  // counts and output locations.
  std::ostringstream os;
  for (const auto& [key, binding] : bindings()) {
    if (key == "run.threads" || key == "run.out_dir") continue;
    os << key << " = " << binding.get(*this) << '\n';
  }
  return fnv1a(os.str());
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("bad section header at line " +
                          std::to_string(lineno));
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value at line " +
                        std::to_string(lineno));
    }
    const std::string key = section + "." + trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = bindings().find(key);
    if (it == bindings().end()) throw ConfigError("unknown key: " + key);
    try {
      it->second.set(cfg, value);
    } catch (const std::exception& e) {
      throw ConfigError("bad value for " + key + ": " + e.what());
    }
  }
  cfg.material.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  return parse_config(read_text_file(path));
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override must be section.key=value: " + assignment);
  }
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto it = bindings().find(key);
  if (it == bindings().end()) throw ConfigError("unknown key: " + key);
  it->second.set(cfg, value);
  cfg.material.validate();
}

} // namespace fatigue
