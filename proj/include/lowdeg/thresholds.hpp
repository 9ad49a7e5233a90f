#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lowdeg/models.hpp"

namespace lowdeg {

struct SbmSpectral {
  double d = 0.0;
  Eigen::MatrixXd T;  // (1/d) diag(pi) Q
  Eigen::MatrixXd B;  // (1/d) diag(sqrt pi) Q diag(sqrt pi) - sqrt(pi) sqrt(pi)^T
  std::vector<double> T_eigenvalues;  // sorted by magnitude, descending
  std::vector<double> B_eigenvalues;  // ascending, as returned by the symmetric solver
  double lambda = 0.0;                // |lambda_2(T)|
  double ks = 0.0;                    // d lambda^2
  int multiplicity = 0;               // how many of lambda_2..lambda_q have modulus lambda
  double degree_condition_residual = 0.0;
};

SbmSpectral sbm_spectral(const SbmParams& p);
// max_{k,l} |(B^t)_{kl}|
double max_abs_entry_power(const Eigen::MatrixXd& B, int t);

// (rho sqrt(e n))^{-1}
double amp_threshold(double rho, double n);
// (rho sqrt(e n))^{-1} sqrt(1 - rho), the level below which the lower bound applies (eps = 0)
double submatrix_lower_threshold(double rho, double n);
// (p1 - p0) / sqrt(p0 (1 - p0))
double pds_lambda(double p0, double p1);
// signed distance of lambda to the BBP point lambda = 1
double bbp_gap(double lambda);

}  // namespace lowdeg
