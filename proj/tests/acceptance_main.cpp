#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lowdeg/acceptance.hpp"

int main(int argc, char** argv) {
  lowdeg::AcceptanceOptions opt;
  std::string only;
  CLI::App app{"lowdeg acceptance criteria"};
  app.add_option("--only", only, "comma-separated criterion ids");
  app.add_option("--trials", opt.mc_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "base seed");
  try {
    app.parse(argc, argv);
    std::stringstream ss(only);
    for (std::string tok; std::getline(ss, tok, ',');)
      if (!tok.empty()) opt.only.push_back(std::stoi(tok));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "bad --only list: " << e.what() << "\n";
    return 2;
  }
  auto results = lowdeg::run_acceptance(opt, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
