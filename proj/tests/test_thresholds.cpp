#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "lowdeg/rng.hpp"
#include "lowdeg/thresholds.hpp"

using namespace lowdeg;

namespace {

SbmParams sym_sbm(int n, double a, double b) {
  SbmParams p;
  p.n = n;
  p.q = 2;
  p.pi = {0.5, 0.5};
  p.Q.resize(2, 2);
  p.Q << a, b, b, a;
  return p;
}

}  // namespace

TEST(Spectral, SymmetricExamples) {
  auto s = sbm_spectral(sym_sbm(100, 3, 1));
  EXPECT_NEAR(s.d, 2.0, 1e-15);
  EXPECT_NEAR(s.lambda, 0.5, 1e-12);
  EXPECT_NEAR(s.ks, 0.5, 1e-12);
  EXPECT_EQ(s.degree_condition_residual, 0.0);
  EXPECT_NEAR(s.T_eigenvalues[0], 1.0, 1e-10);

  auto t = sbm_spectral(sym_sbm(100, 5, 1));
  EXPECT_NEAR(t.d, 3.0, 1e-15);
  EXPECT_NEAR(t.lambda, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.ks, 4.0 / 3.0, 1e-12);

  auto c = sbm_spectral(sym_sbm(100, 2, 2));
  EXPECT_NEAR(c.lambda, 0.0, 1e-12);
  EXPECT_NEAR(c.ks, 0.0, 1e-12);
}

TEST(Spectral, RandomInstances) {
  CounterRng rng(5, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int q = 2 + trial % 3;
    SbmParams p;
    p.n = 50;
    p.q = q;
    double tot = 0.0;
    for (int k = 0; k < q; ++k) {
      p.pi.push_back(0.2 + rng.uniform());
      tot += p.pi.back();
    }
    for (auto& x : p.pi) x /= tot;
    // Q = c 11^T + sum_r w_r v_r v_r^T with pi . v_r = 0 keeps every row
    // degree equal to c.
    Eigen::VectorXd piv = Eigen::Map<Eigen::VectorXd>(p.pi.data(), q);
    p.Q = Eigen::MatrixXd::Constant(q, q, 3.0);
    for (int r = 0; r < q; ++r) {
      Eigen::VectorXd v(q);
      for (int k = 0; k < q; ++k) v(k) = rng.uniform() - 0.5;
      v -= (piv.dot(v) / piv.squaredNorm()) * piv;
      p.Q += (2.0 * rng.uniform() - 1.0) * v * v.transpose();
    }
    p.Q = (0.5 * (p.Q + p.Q.transpose())).eval();
    ASSERT_LE(p.degree_condition_residual(), 1e-12);
    auto s = sbm_spectral(p);
    EXPECT_EQ((s.B - s.B.transpose()).cwiseAbs().maxCoeff(), 0.0);
    for (int t = 1; t <= 10; ++t) EXPECT_LE(max_abs_entry_power(s.B, t), std::pow(s.lambda, t) + 1e-9);
  }
}

TEST(Spectral, BEigenvaluesMatchTUnderDegreeCondition) {
  SbmParams p;
  p.n = 60;
  p.q = 3;
  p.pi = {0.5, 0.3, 0.2};
  p.Q.resize(3, 3);
  p.Q << 4.0, 2.0, 2.0, 2.0, 4.8, 2.8, 2.0, 2.8, 5.8;
  auto s = sbm_spectral(p);
  EXPECT_LE(s.degree_condition_residual, 1e-12);
  Eigen::EigenSolver<Eigen::MatrixXd> es(s.T);
  std::vector<double> t;
  for (int i = 0; i < 3; ++i) t.push_back(es.eigenvalues()(i).real());
  std::sort(t.begin(), t.end());
  // B carries the Perron direction sqrt(pi) with eigenvalue 0 instead of 1.
  std::vector<double> b = s.B_eigenvalues;
  for (auto& x : t)
    if (std::fabs(x - 1.0) < 1e-9) x = 0.0;
  std::sort(t.begin(), t.end());
  std::sort(b.begin(), b.end());
  ASSERT_EQ(b.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(t[i], b[i], 1e-8);
  std::vector<double> ts = s.T_eigenvalues;
  std::sort(ts.begin(), ts.end());
  std::vector<double> tt;
  for (int i = 0; i < 3; ++i) tt.push_back(es.eigenvalues()(i).real());
  std::sort(tt.begin(), tt.end());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ts[i], tt[i], 1e-9);
}

TEST(Thresholds, Scalars) {
  EXPECT_NEAR(amp_threshold(0.01, 1e4), 1.0 / (0.01 * std::sqrt(M_E * 1e4)), 1e-12);
  EXPECT_NEAR(amp_threshold(0.01, 1e4), 0.6065, 1e-4);
  EXPECT_EQ(pds_lambda(0.3, 0.3), 0.0);
  EXPECT_EQ(bbp_gap(1.0), 0.0);
  EXPECT_NEAR(submatrix_lower_threshold(0.19, 100), std::sqrt(0.81) / (0.19 * std::sqrt(M_E * 100)), 1e-14);
}
