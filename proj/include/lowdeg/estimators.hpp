#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "lowdeg/graph.hpp"
#include "lowdeg/models.hpp"

namespace lowdeg {

enum class EstimatorKind { TreeSubmatrix, TreePds, SawWigner, SawSbm };

EstimatorKind parse_estimator_kind(const std::string& name);
std::string estimator_kind_name(EstimatorKind kind);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::SawWigner;
  int k = 0;  // tree kinds; degree 2k + 2
  int D = 0;  // SAW kinds
  ModelParams params;
};

// Throws ValidationError if the kind does not match the model or sizes are out of range.
void validate(const EstimatorSpec& spec);
int estimator_degree(const EstimatorSpec& spec);

// T_k on [n], enumerated once per (n, k) and cached. Safe to call concurrently.
const std::vector<MultiGraph>& tree_family(int n, int k);
// binom(n-1,2) binom(n-3,k) binom(n-3-k,k) (k+1)^{2(k-1)}, the direct construction count.
double tree_count_construct(int n, int k);
// The same expression with the extra factor 1/2 printed in the source analysis.
double tree_count_printed(int n, int k);
// (n-2)_{D-1}
std::uint64_t saw_count(int n, int D);

// f(Y); Y is the full symmetric matrix with 0-based indices.
double evaluate(const EstimatorSpec& spec, const Eigen::MatrixXd& Y);
// Analytic E[f(Y) x].
double first_moment(const EstimatorSpec& spec);

struct TreeSecondMoment {
  double exact = 0.0;            // sum over pairs of E[Y^{alpha+beta}] (or R_{alpha beta} for PDS)
  double bound_sum = 0.0;        // sum over pairs of the per-pair bound
  double max_ratio = 0.0;        // max over pairs of exact / bound (<= 1 when the bound holds)
  double max_violation = 0.0;    // max over pairs of (exact - bound), clipped at 0
  long long pairs = 0;
  long long family_size = 0;
};
// Tree estimator second moment by exact theta enumeration on each pair.
// params must be SubmatrixParams or PdsParams.
TreeSecondMoment exact_second_moment_tree(const ModelParams& params, int k, bool parallel = true);
// Exact E[Y^{alpha+beta}] (submatrix) or R_{alpha beta} (PDS) for one pair.
double tree_pair_moment(const ModelParams& params, const MultiGraph& a, const MultiGraph& b);
double tree_pair_bound(const ModelParams& params, const MultiGraph& a, const MultiGraph& b);

struct McResult {
  long long trials = 0;
  std::uint64_t seed = 0;
  double Efx = 0.0, Efx_se = 0.0;
  double Ef2 = 0.0, Ef2_se = 0.0;
  double Ex2_mc = 0.0, Ex2_se = 0.0;
  double Ex2 = 0.0;  // analytic
  double corr = 0.0, corr_se = 0.0;
};
// Trial t draws its sample from stream t of `seed`; per-trial values are reduced
// serially in trial order, so the result does not depend on the thread count.
McResult mc_correlation(const EstimatorSpec& spec, long long trials, std::uint64_t seed, bool parallel = true);

struct SawPairMoment {
  double exact = 0.0;
  double bound = 0.0;
  int shared_vertices = 0;  // v
  int shared_edges = 0;     // l
};
SawPairMoment saw_pair_moment(const MultiGraph& alpha, const MultiGraph& beta, const WignerParams& p);

// m^L (1 + (K-1)/m)^{L-1}
double path_moment_formula(int L, int m, double K);
// E prod_{edges of a path of length L} <x_i, x_j>^2 by exact prior-moment enumeration.
double path_moment_exact(int L, const PriorSpec& prior, int m);
struct McMean {
  double mean = 0.0;
  double se = 0.0;
  long long trials = 0;
};
McMean path_moment_mc(int L, const PriorSpec& prior, int m, long long trials, std::uint64_t seed, bool parallel = true);

}  // namespace lowdeg
