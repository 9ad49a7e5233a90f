#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lowdeg/basis.hpp"
#include "lowdeg/graph.hpp"
#include "lowdeg/models.hpp"

namespace lowdeg {

// Closed-form certificate entries; zero for indices outside the good set.
double u_submatrix(const BasisIndex& idx, double lambda, double rho);
double u_pds(const BasisIndex& idx, const PdsParams& p);

// Good index sets and constraint rows for one model. For every good beta the
// gamma list fixes the order of the u block and of M_block(beta, alpha).
struct CertSystem {
  std::string model;
  int D = 0;
  std::vector<MultiGraph> good;  // sorted by (|alpha|, canonical)
  std::vector<MultiGraph> all;   // every alpha with |alpha| <= D on the ambient edge set
  std::function<bool(const MultiGraph&)> is_good;
  std::function<std::vector<std::vector<int>>(const MultiGraph&)> gammas;
  std::function<std::vector<double>(const MultiGraph&, const MultiGraph&)> M_block;
  std::function<double(const MultiGraph&)> c;
  std::function<double(const MultiGraph&)> mean_phi;  // E phi_alpha
  double Ex2 = 0.0;
};

CertSystem cert_system(const ModelParams& params, int D, int k0 = 0, int l0 = 0);

struct Certificate {
  std::string model;
  int D = 0;
  std::map<MultiGraph, std::vector<double>> u;  // per good beta, ordered like CertSystem::gammas
  std::map<MultiGraph, std::vector<std::vector<int>>> gamma_lists;
  std::map<MultiGraph, double> d_alpha;         // SBM only
  std::map<MultiGraph, double> sum_M2;          // SBM only: sum_gamma M_{alpha gamma, alpha}^2
  double residual = 0.0;      // max over good alpha
  double residual_all = 0.0;  // max over every alpha with |alpha| <= D (informational)
  double norm = 0.0;
  double Ex2 = 0.0;
  double bound = 0.0;  // norm / sqrt(Ex2)
  bool pass(double tol = 1e-8) const { return residual <= tol; }
  std::size_t entry_count() const;
};

// Residuals sum_{beta gamma} u M - c_alpha, filled into cert.
void verify_certificate(Certificate& cert, const CertSystem& sys);

Certificate certificate_submatrix(const SubmatrixParams& p, int D);
Certificate certificate_pds(const PdsParams& p, int D);
// Built for the estimand x_{k0 l0} (labels 0-based).
Certificate certificate_sbm(const SbmParams& p, int D, int k0 = 0, int l0 = 0);
Certificate build_certificate(const ModelParams& params, int D, int k0 = 0, int l0 = 0);

// norm / sqrt(Ex2); throws ValidationError when the residual exceeds tol.
double corr_bound(const Certificate& cert, double tol = 1e-8);

struct DisconnReport {
  MultiGraph alpha;
  MultiGraph alpha_hat;
  double mu = 0.0;
  double c_error = 0.0;
  double M_error = 0.0;
};
// (alpha_hat, mu) for a bad alpha, following the per-model recipe.
DisconnReport disconn_pair(const CertSystem& sys, const ModelParams& params, const MultiGraph& alpha);
// Evenly spaced sample of `count` bad alpha from sys.all.
std::vector<DisconnReport> check_disconn(const CertSystem& sys, const ModelParams& params, int count);

// max over good beta <= alpha (both good, |alpha| <= D) of
// |sum_gamma (-sqrt(rho/(1-rho)))^|gamma| M_{beta gamma, alpha} - 1{beta=alpha} (p0(1-p0))^{|alpha|/2}|.
double pds_crucial_identity_error(const PdsParams& p, int D);

// sum over good alpha of c_alpha^2 (1 + rho/(1-rho))^{|V(alpha) u {1}|}
double submatrix_norm_closed_form(const SubmatrixParams& p, int D);

// ---- explicit analytic expressions ----
struct SubmatrixAnalytic {
  std::vector<double> b;  // b_1 .. b_{D+1}
  double prefactor = 0.0; // rho / (1 - rho)
  double sum_b = 0.0;
  double sum_v2_b = 0.0;  // coefficient multiplying exp(4v/C); C is not evaluated
  // rho^{-1} sum_{v<=D+1, k<=D} binom(n-1,v-1) v^{v-2} binom(v(v+1)/2+k-1,k) lambda^{2(v-1+k)} rho~^{2v}
  double counting_bound_sq = 0.0;
  double threshold = 0.0; // sqrt(1-rho) / (rho sqrt(e n))
  bool below_threshold = false;
};
SubmatrixAnalytic analytic_submatrix(double lambda, double rho, double n, int D);

struct WignerAnalytic {
  double envelope_sum = 0.0;  // (m/n) sum_{d=1}^D lambda^d
  double envelope = 0.0;      // sqrt of the sum with the constant C set to 1
  double limit = 0.0;         // sqrt(m lambda / (n (1 - lambda))) for lambda < 1, else inf
  bool below_bbp = false;
};
WignerAnalytic analytic_wigner(double lambda, int m, double n, int D);

struct SbmAnalytic {
  double d = 0.0, lambda = 0.0, ks = 0.0;
  double ks_sum = 0.0;     // sum_{t=1}^D (d lambda^2)^t
  double c_prime = 0.0;    // (q/pi_min)^4 d / Q_min
  double ratio = 0.0;      // C' (2D)^7 / n
  double geometric = 0.0;  // 1/(1-ratio) when ratio < 1, else inf
  double chain_bound_sq = 0.0;  // (C'/n) sum_t (d lambda^2/(1-|Q|_inf/n))^t * geometric
  bool below_ks = false;
};
SbmAnalytic analytic_sbm(const SbmParams& p, int D);
double ks_series(double ks, int D);

// ---- SBM inequality checks (each returns the worst slack; >= 0 means it holds) ----
struct SbmInequalityReport {
  double crucial_estimate = 1e300;  // all alpha on <= max_vertices vertices, all W, tau
  double bound_M = 1e300;           // |M_{bg,a}| <= M_{bg,b} (...)
  double M_self_nonneg = 1e300;     // min M_{bg,b}
  double d_alpha = 1e300;           // |d_alpha| <= (d lambda/n)^|a| f(a) (q/pi_min)^{2(|a|-|V|+2)}
  double M_lower = 1e300;           // sum_g M^2 >= ...
  double tree_identity = 0.0;       // max |E prod Q - d^|alpha|| over trees
  long long checked = 0;
};
SbmInequalityReport sbm_inequalities(const SbmParams& p, int D, int max_vertices = 5, int max_tree_edges = 5);

}  // namespace lowdeg
