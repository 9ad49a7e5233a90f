#include <iostream>

#include "CLI11.hpp"
#include "lowdeg/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lowdeg: low-degree estimation toolkit"};
  app.require_subcommand(1, 1);
  lowdeg::RunOptions opt;
  std::uint64_t seed = 0;
  for (const char* name : {"enumerate", "sample", "oracle", "certificate", "cumulants", "estimate", "thresholds",
                           "sweep", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--seed", seed, "64-bit seed (overrides the config)");
    sub->add_option("--out", opt.out, "output path (overrides the config; default stdout)");
    sub->add_option("--jobs", opt.jobs, "OpenMP threads");
    sub->add_flag("--plot", opt.plot, "also write an SVG plot (sweep)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : lowdeg::kExitConfigError;
  }
  auto* sub = app.get_subcommands().front();
  opt.subcommand = sub->get_name();
  if (sub->count("--seed")) opt.seed = seed;
  return lowdeg::run_command(opt, std::cout, std::cerr);
}
