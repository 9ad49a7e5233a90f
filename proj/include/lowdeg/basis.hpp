#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "lowdeg/graph.hpp"
#include "lowdeg/models.hpp"

namespace lowdeg {

// (beta, gamma): for submatrix/PDS gamma is a sorted vertex subset; for SBM
// gamma holds 0-based labels aligned with beta.vertices().
struct BasisIndex {
  MultiGraph beta;
  std::vector<int> gamma;

  friend bool operator<(const BasisIndex& a, const BasisIndex& b) {
    if (a.beta < b.beta) return true;
    if (b.beta < a.beta) return false;
    return a.gamma < b.gamma;
  }
  friend bool operator==(const BasisIndex& a, const BasisIndex& b) {
    return a.beta == b.beta && a.gamma == b.gamma;
  }
};

// "1;3" for subsets, "1:1;2:2" (vertex:label, labels 1-based) for labelings.
std::string gamma_canonical(const std::vector<int>& gamma);
std::string labeling_canonical(const MultiGraph& beta, const std::vector<int>& labels);

// Unit-norm probabilists' Hermite polynomial h_k(z).
double hermite(int k, double z);
// H_alpha(Y) = prod_{i<=j} h_{alpha_ij}(Y_ij); Y is 0-based, vertices 1-based.
double hermite_graph(const MultiGraph& alpha, const Eigen::MatrixXd& Y);
// sum_{beta <= alpha} sqrt(beta!/alpha!) binom(alpha,beta) X^{alpha-beta} H_beta(Z)
double hermite_expansion(const MultiGraph& alpha, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z);
// prod_{(i,j) in alpha} M_ij^{alpha_ij}
double monomial(const MultiGraph& alpha, const Eigen::MatrixXd& M);

// Calls fn for every labeling in [q]^count, last position varying fastest.
void for_each_labeling(int count, int q, const std::function<void(const std::vector<int>&)>& fn);
// All subsets of the sorted vertex list, in lexicographic order of bitmask.
std::vector<std::vector<int>> subsets_of(const std::vector<int>& vs);

// ---- planted submatrix ----
double moment_X_submatrix(const MultiGraph& gamma, double lambda, double rho);  // lambda^|g| rho^|V(g)|
double c_submatrix(const MultiGraph& alpha, double lambda, double rho);
double M_submatrix(const BasisIndex& idx, const MultiGraph& alpha, double lambda, double rho);
double mean_phi_submatrix(const MultiGraph& alpha, double lambda, double rho);  // E H_alpha(Y)

// ---- planted dense subgraph ----
double c_pds(const MultiGraph& alpha, const PdsParams& p);
double M_pds(const BasisIndex& idx, const MultiGraph& alpha, const PdsParams& p);
double mean_phi_pds(const MultiGraph& alpha, const PdsParams& p);  // E (Y - p0)^alpha

// ---- stochastic block model (labels 0-based) ----
double c_sbm(const MultiGraph& alpha, int k0, int l0, const SbmParams& p);
double c_sbm_full(const MultiGraph& alpha, const SbmParams& p);  // estimand Q_{s1 s2} - d
double mean_phi_sbm(const MultiGraph& alpha, const SbmParams& p);
double M_sbm(const BasisIndex& idx, const MultiGraph& alpha, const SbmParams& p);
// M_{beta gamma, alpha} for every gamma in [q]^{V(beta)} (for_each_labeling order).
std::vector<double> M_sbm_all(const MultiGraph& beta, const MultiGraph& alpha, const SbmParams& p);
// E[phi_alpha | sigma_W = tau], W a sorted subset of V(alpha).
double conditional_moment_phi(const MultiGraph& alpha, const std::vector<int>& W, const std::vector<int>& tau,
                              const SbmParams& p);

}  // namespace lowdeg
