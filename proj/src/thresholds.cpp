#include "lowdeg/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowdeg/graph.hpp"

namespace lowdeg {

SbmSpectral sbm_spectral(const SbmParams& p) {
  validate(p);
  SbmSpectral s;
  const int q = p.q;
  s.d = p.d();
  s.degree_condition_residual = p.degree_condition_residual();
  Eigen::VectorXd pi(q), sq(q);
  for (int k = 0; k < q; ++k) {
    pi(k) = p.pi[k];
    sq(k) = std::sqrt(p.pi[k]);
  }
  s.T = pi.asDiagonal() * p.Q / s.d;
  Eigen::MatrixXd S = sq.asDiagonal() * p.Q * sq.asDiagonal() / s.d;
  s.B = S - sq * sq.transpose();
  s.B = 0.5 * (s.B + s.B.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(s.B);
  for (int i = 0; i < q; ++i) s.B_eigenvalues.push_back(eb.eigenvalues()(i));

  std::vector<double> rest;
  if (s.degree_condition_residual <= 1e-10) {
    // sqrt(pi) is the top eigenvector of S and lies in the kernel of B; drop
    // that direction and put lambda_1(T) = 1 back.
    int drop = 0;
    double best = -1.0;
    for (int i = 0; i < q; ++i) {
      double overlap = std::fabs(eb.eigenvectors().col(i).dot(sq));
      if (overlap > best) {
        best = overlap;
        drop = i;
      }
    }
    for (int i = 0; i < q; ++i)
      if (i != drop) rest.push_back(eb.eigenvalues()(i));
    s.T_eigenvalues.push_back(1.0);
  } else {
    // T is similar to S; its spectrum is real even without the degree condition.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    std::vector<double> all;
    for (int i = 0; i < q; ++i) all.push_back(es.eigenvalues()(i));
    std::sort(all.begin(), all.end(), [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    s.T_eigenvalues.push_back(all[0]);
    rest.assign(all.begin() + 1, all.end());
  }
  std::sort(rest.begin(), rest.end(), [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  s.T_eigenvalues.insert(s.T_eigenvalues.end(), rest.begin(), rest.end());
  s.lambda = rest.empty() ? 0.0 : std::fabs(rest.front());
  if (s.lambda < 1e-12) s.lambda = 0.0;
  for (double v : rest)
    if (std::fabs(std::fabs(v) - s.lambda) <= 1e-9) ++s.multiplicity;
  s.ks = s.d * s.lambda * s.lambda;
  return s;
}

double max_abs_entry_power(const Eigen::MatrixXd& B, int t) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(B.rows(), B.cols());
  for (int i = 0; i < t; ++i) P = P * B;
  return P.cwiseAbs().maxCoeff();
}

double amp_threshold(double rho, double n) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("amp_threshold: rho must lie in (0,1]");
  return 1.0 / (rho * std::sqrt(std::numbers::e * n));
}

double submatrix_lower_threshold(double rho, double n) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("submatrix_lower_threshold: rho must lie in (0,1)");
  return std::sqrt(1.0 - rho) / (rho * std::sqrt(std::numbers::e * n));
}

double pds_lambda(double p0, double p1) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw ValidationError("pds_lambda: p0 must lie in (0,1)");
  return (p1 - p0) / std::sqrt(p0 * (1.0 - p0));
}

double bbp_gap(double lambda) { return lambda - 1.0; }

}  // namespace lowdeg
