#pragma once

#include <cstdint>
#include <string>

#include "fatigue/load_protocol.hpp"

namespace fatigue {

// Shortest round-trip decimal representation (std::to_chars); parsing the
// result with strtod restores the exact bit pattern.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

// Scenario JSON: {"s_min": x, "fc": y, "levels": [{"s_max": s, "eta"?: e,
// "cycles"?: n}, ...]}; a level with neither duration means run-to-failure
// (only meaningful for the last level). Throws ConfigError on malformed
// input, InvalidScenario on semantic violations.
LoadScenario read_scenario_json(const std::string& path);
std::string scenario_to_json(const LoadScenario& scenario);

} // namespace fatigue
