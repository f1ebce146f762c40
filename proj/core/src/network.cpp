#include "fatigue/network.hpp"

#include <algorithm>
#include <sstream>

#include "fatigue/io.hpp"

namespace fatigue {

std::size_t SurrogateModel::num_parameters() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += weights[l].size() + biases[l].size();
  }
  return n;
}

SurrogateModel make_model(const NetworkConfig& config) {
  if (config.layer_sizes.size() < 2 || config.layer_sizes.front() != 3 ||
      config.layer_sizes.back() != 1) {
    throw ConfigError("network must map 3 inputs to 1 output");
  }
  SurrogateModel m;
  m.config = config;
  for (std::size_t l = 0; l + 1 < config.layer_sizes.size(); ++l) {
    const std::size_t rows = static_cast<std::size_t>(config.layer_sizes[l + 1]);
    const std::size_t cols = static_cast<std::size_t>(config.layer_sizes[l]);
    m.weights.emplace_back(rows * cols, 0.0);
    m.biases.emplace_back(rows, 0.0);
  }
  return m;
}

double forward(const SurrogateModel& m, const std::array<double, 3>& x_scaled) {
  std::vector<double> a(x_scaled.begin(), x_scaled.end());
  std::vector<double> z;
  const std::size_t L = m.num_layers();
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t rows = m.biases[l].size();
    const std::size_t cols = a.size();
    z.assign(rows, 0.0);
    const double* W = m.weights[l].data();
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = m.biases[l][r];
      const double* row = W + r * cols;
      for (std::size_t c = 0; c < cols; ++c) acc += row[c] * a[c];
      z[r] = acc;
    }
    if (l + 1 < L) {
      for (double& v : z) v = elu(v, m.config.elu_zeta);
    }
    a.swap(z);
  }
  return a[0];
}

double predict(const SurrogateModel& m, double s1max, double delta_smax,
               double eta_cons) {
  const double y_raw = forward(m, m.scaler.scale({s1max, delta_smax, eta_cons}));
  return std::max(y_raw, eta_cons);
}

double r2_score(const std::vector<double>& preds,
                const std::vector<double>& targets) {
  if (preds.size() != targets.size() || targets.size() < 2) {
    throw ZeroVariance("r2_score needs >= 2 prediction/target pairs");
  }
  double mean = 0.0;
  for (double t : targets) mean += t;
  mean /= static_cast<double>(targets.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    ss_res += (targets[i] - preds[i]) * (targets[i] - preds[i]);
    ss_tot += (targets[i] - mean) * (targets[i] - mean);
  }
  if (ss_tot == 0.0) throw ZeroVariance("targets have zero variance");
  return 1.0 - ss_res / ss_tot;
}

namespace {
constexpr const char* kMagic = "fatigue-surrogate";
constexpr int kVersion = 1;
} // namespace

void save_model(const SurrogateModel& m, const std::string& path) {
  std::ostringstream os;
  os << kMagic << '\n' << "version " << kVersion << '\n';
  os << "layers";
  for (int s : m.config.layer_sizes) os << ' ' << s;
  os << '\n';
  os << "elu_zeta " << format_double(m.config.elu_zeta) << '\n';
  os << "scaler";
  for (int i = 0; i < 3; ++i) {
    os << ' ' << format_double(m.scaler.lo[i]) << ' '
       << format_double(m.scaler.hi[i]);
  }
  os << '\n';
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    os << "layer " << l << '\n';
    for (double w : m.weights[l]) os << format_double(w) << '\n';
    for (double b : m.biases[l]) os << format_double(b) << '\n';
  }
  write_text_file(path, os.str());
}

SurrogateModel load_model(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  auto next = [&](const char* what) -> std::string& {
    if (!std::getline(in, line)) {
      throw CorruptFile(std::string("model file truncated at ") + what + ": " +
                        path);
    }
    return line;
  };
  if (next("magic") != kMagic) throw CorruptFile("bad magic in " + path);
  {
    std::istringstream ls(next("version"));
    std::string key;
    int version = -1;
    ls >> key >> version;
    if (key != "version" || !ls) throw CorruptFile("bad version line in " + path);
    if (version != kVersion) {
      throw VersionMismatch("model version " + std::to_string(version) +
                            " unsupported");
    }
  }
  NetworkConfig cfg;
  {
    std::istringstream ls(next("layers"));
    std::string key;
    ls >> key;
    if (key != "layers") throw CorruptFile("missing layers line in " + path);
    int s;
    while (ls >> s) cfg.layer_sizes.push_back(s);
  }
  FeatureScaler scaler;
  {
    std::istringstream ls(next("elu_zeta"));
    std::string key;
    ls >> key >> cfg.elu_zeta;
    if (key != "elu_zeta" || !ls) throw CorruptFile("bad elu_zeta in " + path);
  }
  {
    std::istringstream ls(next("scaler"));
    std::string key;
    ls >> key;
    if (key != "scaler") throw CorruptFile("missing scaler line in " + path);
    for (int i = 0; i < 3; ++i) ls >> scaler.lo[i] >> scaler.hi[i];
    if (!ls) throw CorruptFile("bad scaler line in " + path);
  }
  SurrogateModel m = make_model(cfg);
  m.scaler = scaler;
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    std::istringstream ls(next("layer header"));
    std::string key;
    std::size_t idx;
    ls >> key >> idx;
    if (key != "layer" || idx != l) {
      throw CorruptFile("bad layer header in " + path);
    }
    for (double& w : m.weights[l]) {
      w = std::stod(next("weight"));
    }
    for (double& b : m.biases[l]) {
      b = std::stod(next("bias"));
    }
  }
  return m;
}

} // namespace fatigue
