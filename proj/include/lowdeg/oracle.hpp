#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lowdeg/graph.hpp"
#include "lowdeg/models.hpp"

namespace lowdeg {

struct OracleOptions {
  // SBM estimand: Q_{s1 s2} - d by default, or the indicator product
  // (1{s1 = k0} - pi_k0)(1{s2 = l0} - pi_l0) when use_indicator is set.
  bool use_indicator = false;
  int k0 = 0;
  int l0 = 0;
  bool parallel = true;
};

// Basis: Hermite polynomials H_alpha(Y) for Gaussian models (multigraphs with
// self-loops), centred monomials (Y - c)^alpha for graph models (simple
// graphs; c = p0 for PDS and d/n for SBM). The constant is alpha = empty.
struct GramSystem {
  std::vector<MultiGraph> basis;
  Eigen::MatrixXd G;
  Eigen::VectorXd c;
  double Ex2 = 0.0;
};

std::vector<MultiGraph> oracle_basis(const ModelParams& params, int D);
GramSystem build_gram(const ModelParams& params, int D, const OracleOptions& opt = {});

struct OracleResult {
  double corr = 0.0;
  double mmse = 0.0;
  int basis_size = 0;
  int gram_rank = 0;
};

// Corr = sqrt(c^T G^+ c / E[x^2]) with relative eigenvalue cutoff 1e-10,
// clamped to [0,1]; mmse = (1 - Corr^2) E[x^2].
OracleResult exact_corr(const GramSystem& gs);
// Direct minimization of E(x - sum a_alpha phi_alpha)^2 through a complete
// orthogonal decomposition, evaluated as E[x^2] - 2 a^T c + a^T G a.
double independent_mmse(const GramSystem& gs);

}  // namespace lowdeg
