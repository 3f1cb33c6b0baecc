#include "cli/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac::cli {
namespace {

using Json = nlohmann::ordered_json;

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

int integer(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

BarrierSpec parse_barrier(const Json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("type") || !obj.at("type").is_string()) {
    throw ConfigError(where + " needs a string 'type'");
  }
  const std::string type = obj.at("type").get<std::string>();
  if (type == "square") {
    only_keys(obj, where, {"type", "height", "width", "offset"});
    return SquareBarrier{number(obj, "height", where), number(obj, "width", where),
                         number(obj, "offset", where)};
  }
  if (type == "cusp") {
    only_keys(obj, where, {"type", "height", "screening", "center"});
    return CuspBarrier{number(obj, "height", where), number(obj, "screening", where),
                       number(obj, "center", where)};
  }
  if (type == "delta") {
    only_keys(obj, where, {"type", "strength", "position"});
    return DeltaBarrier{number(obj, "strength", where), number(obj, "position", where)};
  }
  throw ConfigError(where + ".type '" + type + "' is not square, cusp or delta");
}

Json barrier_json(const BarrierSpec& barrier) {
  if (const auto* b = std::get_if<SquareBarrier>(&barrier)) {
    return Json{{"type", "square"}, {"height", b->height}, {"width", b->width}, {"offset", b->offset}};
  }
  if (const auto* b = std::get_if<CuspBarrier>(&barrier)) {
    return Json{{"type", "cusp"}, {"height", b->height}, {"screening", b->screening}, {"center", b->center}};
  }
  const auto& d = std::get<DeltaBarrier>(barrier);
  return Json{{"type", "delta"}, {"strength", d.strength}, {"position", d.position}};
}

}  // namespace

ScenarioConfig parse_scenario(const Json& doc) {
  only_keys(doc, "scenario", {"mass", "barriers", "sweep", "poleBox", "output", "verify"});
  ScenarioConfig config;
  config.mass = number(doc, "mass", "scenario");
  if (!(config.mass > 0.0)) throw ConfigError("mass must be positive");

  if (doc.contains("barriers")) {
    const Json& list = doc.at("barriers");
    if (!list.is_array()) throw ConfigError("barriers must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.barriers.push_back(parse_barrier(list[i], "barriers[" + std::to_string(i) + "]"));
    }
  }

  if (doc.contains("sweep")) {
    const Json& s = doc.at("sweep");
    only_keys(s, "sweep", {"eMin", "eMax", "points"});
    SweepSpec sweep{number(s, "eMin", "sweep"), number(s, "eMax", "sweep"), integer(s, "points", "sweep")};
    if (!(sweep.e_min > config.mass)) throw ConfigError("sweep.eMin must exceed the mass");
    if (!(sweep.e_max > sweep.e_min)) throw ConfigError("sweep.eMax must exceed sweep.eMin");
    if (sweep.points < 2) throw ConfigError("sweep.points must be at least 2");
    config.sweep = sweep;
  }

  if (doc.contains("poleBox")) {
    const Json& b = doc.at("poleBox");
    only_keys(b, "poleBox", {"reMin", "reMax", "imMin", "imMax"});
    SearchBox box{number(b, "reMin", "poleBox"), number(b, "reMax", "poleBox"),
                  number(b, "imMin", "poleBox"), number(b, "imMax", "poleBox")};
    if (!(box.re_min < box.re_max) || !(box.im_min < box.im_max) || box.im_max > 0.0) {
      throw ConfigError("poleBox needs reMin < reMax and imMin < imMax <= 0");
    }
    config.pole_box = box;
  }

  if (doc.contains("output")) {
    const Json& o = doc.at("output");
    only_keys(o, "output", {"format", "path"});
    if (o.contains("format")) {
      const std::string format = o.at("format").get<std::string>();
      if (format == "csv") {
        config.output.format = OutputFormat::Csv;
      } else if (format == "json") {
        config.output.format = OutputFormat::Json;
      } else {
        throw ConfigError("output.format must be csv or json");
      }
    }
    if (o.contains("path")) config.output.path = o.at("path").get<std::string>();
  }

  if (doc.contains("verify")) {
    const Json& v = doc.at("verify");
    only_keys(v, "verify", {"threshold", "unitarityThreshold", "points", "steps"});
    VerifySpec verify;
    if (v.contains("threshold")) verify.threshold = number(v, "threshold", "verify");
    if (v.contains("unitarityThreshold")) verify.unitarity_threshold = number(v, "unitarityThreshold", "verify");
    if (v.contains("points")) verify.points = integer(v, "points", "verify");
    if (v.contains("steps")) verify.steps = integer(v, "steps", "verify");
    if (verify.points < 2) throw ConfigError("verify.points must be at least 2");
    if (verify.steps < 10000) throw ConfigError("verify.steps must be at least 10000");
    config.verify = verify;
  }
  return config;
}

ScenarioConfig parse_scenario_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_scenario(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

Json to_json(const ScenarioConfig& config) {
  Json doc;
  doc["mass"] = config.mass;
  Json barriers = Json::array();
  for (const BarrierSpec& b : config.barriers) barriers.push_back(barrier_json(b));
  doc["barriers"] = barriers;
  if (config.sweep) {
    doc["sweep"] = Json{{"eMin", config.sweep->e_min}, {"eMax", config.sweep->e_max},
                        {"points", config.sweep->points}};
  }
  if (config.pole_box) {
    doc["poleBox"] = Json{{"reMin", config.pole_box->re_min}, {"reMax", config.pole_box->re_max},
                          {"imMin", config.pole_box->im_min}, {"imMax", config.pole_box->im_max}};
  }
  doc["output"] = Json{{"format", config.output.format == OutputFormat::Csv ? "csv" : "json"},
                       {"path", config.output.path}};
  if (config.verify) {
    doc["verify"] = Json{{"threshold", config.verify->threshold},
                         {"unitarityThreshold", config.verify->unitarity_threshold},
                         {"points", config.verify->points},
                         {"steps", config.verify->steps}};
  }
  return doc;
}

std::string serialize(const ScenarioConfig& config) { return to_json(config).dump(2) + "\n"; }

BarrierChain make_chain(const ScenarioConfig& config) {
  try {
    return BarrierChain(config.mass, config.barriers);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace dirac::cli
