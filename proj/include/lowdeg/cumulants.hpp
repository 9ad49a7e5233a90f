#pragma once

#include <cstdint>
#include <map>

#include "lowdeg/graph.hpp"
#include "lowdeg/models.hpp"

namespace lowdeg {

// E prod_{edge copies (i,j)} <u_i, u_j> for rows u_i in R^m with iid prior
// entries. Self-loops contribute |u_i|^2 (degree 2 at i).
double moment_X_unit(const MultiGraph& gamma, const PriorSpec& prior, int m = 1);
// E[X^gamma] = (lambda/n)^{|gamma|/2} * moment_X_unit(gamma).
double moment_X(const MultiGraph& gamma, const PriorSpec& prior, double lambda, int n, int m = 1);

// Memoized rank-one cumulants. Values are stored without the (lambda/n)
// scale, so the recursion runs on prior moments alone.
class CumulantTable {
 public:
  explicit CumulantTable(PriorSpec prior) : prior_(std::move(prior)) {}
  double unit(const MultiGraph& alpha);  // kappa_alpha / (lambda/n)^{(|alpha|+1)/2}
  double kappa(const MultiGraph& alpha, double lambda, int n, int m = 1);

 private:
  double moment(const MultiGraph& g);
  PriorSpec prior_;
  std::map<MultiGraph, double> kappa_unit_;
  std::map<MultiGraph, double> moment_unit_;
};

double kappa(const MultiGraph& alpha, const PriorSpec& prior, double lambda, int n, int m = 1);
// Joint cumulant of x = X_12 and the edge copies of alpha by the set-partition
// formula, with block moments taken directly at rank m.
double kappa_oracle(const MultiGraph& alpha, const PriorSpec& prior, double lambda, int n, int m = 1);

// f(alpha) over good subgraphs; alpha must be good (spiked Wigner sense).
class FTable {
 public:
  std::uint64_t f(const MultiGraph& alpha);

 private:
  std::map<MultiGraph, std::uint64_t> memo_;
};
std::uint64_t f_value(const MultiGraph& alpha);

// (lambda/n)^{(|alpha|+1)/2} f(alpha) M(delta(alpha-bar))
double kappa_bound_rhs(const MultiGraph& alpha, const PriorSpec& prior, double lambda, int n);

struct WignerCorrBound {
  double exact_sum = 0.0;  // sum over good alpha, |alpha| <= D, of kappa^2 / alpha!
  double exact_corr_bound = 0.0;  // sqrt(exact_sum / E[x^2])
  double envelope = 0.0;   // sqrt((m/n) sum_{d=1}^D lambda^d), constant prefactor omitted
  long long good_count = 0;
};
WignerCorrBound wigner_corr_bound(int D, double lambda, int m, int n, const PriorSpec& prior);
// (m/n) sum_{d=1}^D lambda^d
double wigner_envelope_sum(int D, double lambda, int m, int n);

}  // namespace lowdeg
