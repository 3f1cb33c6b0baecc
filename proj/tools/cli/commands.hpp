#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/scenario.hpp"

namespace dirac::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitThresholdFailure = 1,
  kExitConfigError = 2,
  kExitNumericalError = 3,
};

/// Numbers in CSV output: 12 significant digits, NaN as "nan".
std::string format_number(double value);

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRecord>& records);
void write_spectrum_json(std::ostream& out, const std::vector<SpectrumRecord>& records);
void write_poles_json(std::ostream& out, const std::vector<PoleResult>& poles);

int cmd_sweep(const ScenarioConfig& config, std::ostream& out, std::ostream& err);
int cmd_poles(const ScenarioConfig& config, std::ostream& out, std::ostream& err);
/// `peaks` may be null, in which case the peak sidecar is not written.
int cmd_delay(const ScenarioConfig& config, std::ostream& out, std::ostream* peaks, std::ostream& err);
int cmd_verify(const ScenarioConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point: `<tool> sweep|poles|delay|verify --config <path> [--out <path>]`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dirac::cli
