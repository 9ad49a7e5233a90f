#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowdeg/io.hpp"

namespace lowdeg {

enum ExitCode { kExitOk = 0, kExitVerifyFailed = 1, kExitConfigError = 2 };

struct RunOptions {
  std::string subcommand;
  std::string config_path;            // empty: no config file
  std::optional<std::string> config_text;  // inline config, takes precedence over config_path
  std::optional<std::uint64_t> seed;  // overrides the config seed
  std::string out;                    // overrides the config output path
  int jobs = 0;                       // 0: leave the OpenMP default
  bool plot = false;
};

// Runs one subcommand and returns the process exit code. Results go to the
// output path when one is set, otherwise to `out`; diagnostics go to `err`.
int run_command(const RunOptions& opt, std::ostream& out, std::ostream& err);

// Seed of grid point `index`: first output of stream (seed, index).
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index);

// The sweep CSV for a parsed config. `timing` receives one wall time per point.
CsvTable run_sweep(const Json& config, std::uint64_t seed, std::vector<double>* timing = nullptr,
                   std::string* svg = nullptr);

const std::vector<std::string>& sweep_columns();
inline constexpr int kSweepCsvVersion = 1;
inline constexpr long long kDefaultGridCap = 10000;

}  // namespace lowdeg
