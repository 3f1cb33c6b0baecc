#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac/analysis.hpp"
#include "dirac/barriers.hpp"

namespace dirac::cli {

/// Malformed or inconsistent scenario file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  double e_min = 0.0;
  double e_max = 0.0;
  int points = 0;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string path = "-";
};

struct VerifySpec {
  double threshold = 1e-8;
  double unitarity_threshold = 1e-8;
  int points = 25;
  int steps = 200000;
};

struct ScenarioConfig {
  double mass = 1.0;
  std::vector<BarrierSpec> barriers;
  std::optional<SweepSpec> sweep;
  std::optional<SearchBox> pole_box;
  OutputSpec output;
  std::optional<VerifySpec> verify;
};

ScenarioConfig parse_scenario(const nlohmann::ordered_json& doc);
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

nlohmann::ordered_json to_json(const ScenarioConfig& config);

/// Canonical two-space-indented form; stable under parse/serialize cycles.
std::string serialize(const ScenarioConfig& config);

BarrierChain make_chain(const ScenarioConfig& config);

}  // namespace dirac::cli
