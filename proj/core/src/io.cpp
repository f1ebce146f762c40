#include "fatigue/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fatigue {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorruptFile("cannot open for writing: " + path);
  out << contents;
  if (!out) throw CorruptFile("short write: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFile("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadScenario read_scenario_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed scenario JSON (" + path + "): " + e.what());
  }
  LoadScenario sc;
  try {
    if (j.contains("s_min")) sc.s_min = j.at("s_min").get<double>();
    if (j.contains("fc")) sc.fc = j.at("fc").get<double>();
    for (const auto& lvl : j.at("levels")) {
      const double s_max = lvl.at("s_max").get<double>();
      if (lvl.contains("eta") && lvl.contains("cycles")) {
        throw ConfigError("level specifies both eta and cycles");
      }
      if (lvl.contains("eta")) {
        sc.blocks.push_back(
            LoadBlock::consumed_fraction(s_max, lvl.at("eta").get<double>()));
      } else if (lvl.contains("cycles")) {
        sc.blocks.push_back(LoadBlock::explicit_cycles(
            s_max, lvl.at("cycles").get<std::uint64_t>()));
      } else {
        sc.blocks.push_back(LoadBlock::to_failure(s_max));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad scenario JSON (" + path + "): " + e.what());
  }
  sc.validate();
  return sc;
}

std::string scenario_to_json(const LoadScenario& scenario) {
  nlohmann::json j;
  j["s_min"] = scenario.s_min;
  j["fc"] = scenario.fc;
  j["levels"] = nlohmann::json::array();
  for (const LoadBlock& b : scenario.blocks) {
    nlohmann::json lvl;
    lvl["s_max"] = b.s_max;
    if (b.kind == DurationKind::ExplicitCycles) lvl["cycles"] = b.cycles;
    if (b.kind == DurationKind::ConsumedFraction) lvl["eta"] = b.eta;
    j["levels"].push_back(lvl);
  }
  return j.dump(2) + "\n";
}

} // namespace fatigue
