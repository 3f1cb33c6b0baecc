#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "dirac/error.hpp"

namespace dirac::cli {
namespace {

using Json = nlohmann::ordered_json;

Json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

// Chain construction failures are configuration errors, everything numerical
// after that maps to exit code 3.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) {
      err << "config error: " << e.what() << "\n";
      return kExitConfigError;
    }
    err << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  }
}

const SweepSpec& require_sweep(const ScenarioConfig& config, const char* command) {
  if (!config.sweep) throw ConfigError(std::string(command) + " needs a 'sweep' section");
  return *config.sweep;
}

void report_warnings(const BarrierChain& chain, std::ostream& err) {
  for (const std::string& w : chain.warnings()) err << "warning: " << w << "\n";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  out << "E,T,R,phase,tau\n";
  for (const SpectrumRecord& r : records) {
    out << format_number(r.energy) << ',' << format_number(r.transmission) << ','
        << format_number(r.reflection) << ',' << format_number(r.phase) << ','
        << format_number(r.delay) << '\n';
  }
}

void write_spectrum_json(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  Json list = Json::array();
  for (const SpectrumRecord& r : records) {
    list.push_back(Json{{"E", json_number(r.energy)},
                        {"T", json_number(r.transmission)},
                        {"R", json_number(r.reflection)},
                        {"phase", json_number(r.phase)},
                        {"tau", json_number(r.delay)}});
  }
  out << list.dump(2) << '\n';
}

void write_poles_json(std::ostream& out, const std::vector<PoleResult>& poles) {
  Json list = Json::array();
  for (const PoleResult& p : poles) {
    list.push_back(Json{{"re", p.energy.real()},
                        {"im", p.energy.imag()},
                        {"residual", p.residual_norm},
                        {"iterations", p.iterations}});
  }
  out << list.dump(2) << '\n';
}

int cmd_sweep(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec& spec = require_sweep(config, "sweep");
    const BarrierChain chain = make_chain(config);
    report_warnings(chain, err);
    const auto records = sweep(chain, spec.e_min, spec.e_max, spec.points);
    if (config.output.format == OutputFormat::Json) {
      write_spectrum_json(out, records);
    } else {
      write_spectrum_csv(out, records);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_poles(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.pole_box) throw ConfigError("poles needs a 'poleBox' section");
    const BarrierChain chain = make_chain(config);
    report_warnings(chain, err);
    const PoleSearchResult result = find_poles(chain, *config.pole_box);
    write_poles_json(out, result.poles);
    err << "poles: " << result.poles.size() << " found from " << result.seeds << " seeds ("
        << result.not_converged << " not converged, " << result.outside_box << " outside box, "
        << result.duplicates << " duplicates)\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_delay(const ScenarioConfig& config, std::ostream& out, std::ostream* peaks, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec& spec = require_sweep(config, "delay");
    const BarrierChain chain = make_chain(config);
    report_warnings(chain, err);
    const auto records = sweep(chain, spec.e_min, spec.e_max, spec.points);
    out << "E,tau\n";
    for (const SpectrumRecord& r : records) {
      out << format_number(r.energy) << ',' << format_number(r.delay) << '\n';
    }
    if (peaks != nullptr) {
      Json list = Json::array();
      for (double e : delay_peaks(records)) list.push_back(e);
      *peaks << list.dump(2) << '\n';
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec& spec = require_sweep(config, "verify");
    const VerifySpec checks = config.verify.value_or(VerifySpec{});
    const BarrierChain chain = make_chain(config);
    if (chain.has_delta()) {
      err << "oracle unsupported: scenario contains a delta barrier\n";
      return static_cast<int>(kExitConfigError);
    }
    report_warnings(chain, err);
    OracleOptions domain = default_oracle_domain(chain);
    domain.steps = checks.steps;

    double worst_deviation = 0.0;
    double worst_unitarity = 0.0;
    out << "E,deviation,unitarity\n";
    for (int i = 0; i < checks.points; ++i) {
      const double e = spec.e_min + (spec.e_max - spec.e_min) * i / (checks.points - 1);
      const ScatterMatrix composed = chain_smatrix(chain, e);
      const ScatterMatrix direct = integrate_dirac_oracle(chain, e, domain);
      const double deviation = max_deviation(composed, direct);
      const double defect = unitarity_defect(composed);
      worst_deviation = std::max(worst_deviation, deviation);
      worst_unitarity = std::max(worst_unitarity, defect);
      out << format_number(e) << ',' << format_number(deviation) << ',' << format_number(defect) << '\n';
    }
    const bool pass = worst_deviation < checks.threshold && worst_unitarity < checks.unitarity_threshold;
    out << "# max_deviation=" << format_number(worst_deviation) << " threshold="
        << format_number(checks.threshold) << "\n";
    out << "# max_unitarity_defect=" << format_number(worst_unitarity) << " threshold="
        << format_number(checks.unitarity_threshold) << "\n";
    out << "# " << (pass ? "PASS" : "FAIL") << "\n";
    return static_cast<int>(pass ? kExitOk : kExitThresholdFailure);
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering of a 1+1 dimensional Dirac particle by square, delta and cusp barriers"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::string peaks_path;
  for (const char* name : {"sweep", "poles", "delay", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_path, "Output path, '-' for standard output");
    if (std::string(name) == "delay") {
      sub->add_option("--peaks", peaks_path, "Delay-peak JSON path (default <out>.peaks.json)");
    }
  }
  app.get_subcommand("sweep")->description("Transmission spectrum as CSV or JSON");
  app.get_subcommand("poles")->description("Resonance poles in the complex energy plane as JSON");
  app.get_subcommand("delay")->description("Wigner time delay CSV plus peak list");
  app.get_subcommand("verify")->description("Compare composed S-matrices with direct integration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  ScenarioConfig config;
  try {
    config = load_scenario(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (!out_path.empty()) config.output.path = out_path;

  std::ofstream file;
  std::ostream* target = &out;
  if (config.output.path != "-") {
    file.open(config.output.path);
    if (!file) {
      err << "cannot write '" << config.output.path << "'\n";
      return kExitConfigError;
    }
    target = &file;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "sweep") return cmd_sweep(config, *target, err);
  if (command == "poles") return cmd_poles(config, *target, err);
  if (command == "verify") return cmd_verify(config, *target, err);

  std::ofstream peaks_file;
  std::ostream* peaks = nullptr;
  if (peaks_path.empty() && config.output.path != "-") peaks_path = config.output.path + ".peaks.json";
  if (!peaks_path.empty()) {
    peaks_file.open(peaks_path);
    if (!peaks_file) {
      err << "cannot write '" << peaks_path << "'\n";
      return kExitConfigError;
    }
    peaks = &peaks_file;
  }
  return cmd_delay(config, *target, peaks, err);
}

}  // namespace dirac::cli
