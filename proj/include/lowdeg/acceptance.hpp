#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lowdeg {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> only;         // empty: every criterion
  long long mc_trials = 10000;   // Monte Carlo criteria (9, 10, 11)
  std::uint64_t seed = 20240611;
};

// "PASS 03 disconn-relations  <detail>"
std::string format_result(const CriterionResult& r);

// Runs the acceptance criteria in id order. When progress is set, each result
// line is printed as soon as the criterion finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream* progress = nullptr);

}  // namespace lowdeg
