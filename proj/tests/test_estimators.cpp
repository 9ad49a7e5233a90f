#include <gtest/gtest.h>

#include <cmath>

#include "lowdeg/estimators.hpp"

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

WignerParams wig(int n, double lambda, int m = 1) {
  WignerParams w;
  w.n = n;
  w.lambda = lambda;
  w.m = m;
  return w;
}

}  // namespace

TEST(Estimators, EvaluateExamples) {
  EstimatorSpec saw{EstimatorKind::SawWigner, 0, 3, wig(8, 1.0)};
  EXPECT_EQ(evaluate(saw, Eigen::MatrixXd::Zero(8, 8)), 0.0);

  EstimatorSpec sbm{EstimatorKind::SawSbm, 0, 3, sym_sbm(10, 3, 1)};
  EXPECT_NEAR(evaluate(sbm, Eigen::MatrixXd::Zero(10, 10)), std::pow(-0.2, 3), 1e-15);

  EstimatorSpec tree{EstimatorKind::TreeSubmatrix, 0, 0, SubmatrixParams{4, 1.0, 0.5}};
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(4, 4);
  Y(0, 1) = Y(1, 0) = 2.0;
  Y(0, 2) = Y(2, 0) = 3.0;
  Y(0, 3) = Y(3, 0) = 5.0;
  Y(1, 2) = Y(2, 1) = 7.0;
  EXPECT_DOUBLE_EQ(evaluate(tree, Y), 2 * 3 + 2 * 5 + 3 * 5);
}

TEST(Estimators, FirstMomentExamples) {
  EXPECT_NEAR(first_moment({EstimatorKind::SawWigner, 0, 3, wig(100, 1.0)}), 1e-4, 1e-18);
  EXPECT_EQ(first_moment({EstimatorKind::TreeSubmatrix, 0, 0, SubmatrixParams{8, 0.0, 0.4}}), 0.0);
  EXPECT_NEAR(first_moment({EstimatorKind::SawSbm, 0, 2, sym_sbm(100, 3, 1)}), 1e-4, 1e-16);
}

TEST(Estimators, TreeCounts) {
  for (int n = 5; n <= 8; ++n)
    for (int k = 0; k <= 1; ++k) {
      if (n < 2 * k + 3) continue;
      EXPECT_EQ(static_cast<double>(tree_family(n, k).size()), tree_count_construct(n, k)) << n << "," << k;
      EXPECT_EQ(tree_count_printed(n, k), 0.5 * tree_count_construct(n, k));
    }
  EXPECT_EQ(saw_count(6, 3), 12u);
}

// Frozen from tests/oracles/tree_second_moment.py: 1745089/160000.
TEST(Estimators, TreeSecondMomentMatchesThetaEnumeration) {
  auto r = exact_second_moment_tree(SubmatrixParams{6, 0.5, 0.3}, 0);
  EXPECT_NEAR(r.exact, 10.90680625, 1e-12);
  EXPECT_EQ(r.family_size, 10);
  EXPECT_EQ(r.max_violation, 0.0);
  EXPECT_LE(r.max_ratio, 1.0 + 1e-12);
}

TEST(Estimators, TreeSecondMomentWithoutSignal) {
  auto r = exact_second_moment_tree(SubmatrixParams{7, 0.0, 0.3}, 1);
  EXPECT_NEAR(r.exact, static_cast<double>(tree_family(7, 1).size()), 1e-12);
}

TEST(Estimators, TreeSecondMomentSerialEqualsParallel) {
  auto a = exact_second_moment_tree(PdsParams{7, 0.3, 0.2, 0.6}, 0, false);
  auto b = exact_second_moment_tree(PdsParams{7, 0.3, 0.2, 0.6}, 0, true);
  EXPECT_EQ(a.exact, b.exact);
  EXPECT_EQ(a.max_violation, 0.0);
}

TEST(Estimators, McWithoutSignalIsCentred) {
  EstimatorSpec spec{EstimatorKind::SawWigner, 0, 3, wig(30, 0.0)};
  auto mc = mc_correlation(spec, 2000, 12);
  EXPECT_EQ(mc.Efx, 0.0);  // x is identically zero at lambda = 0
  EstimatorSpec spec2{EstimatorKind::SawWigner, 0, 3, wig(30, 1e-12)};
  auto mc2 = mc_correlation(spec2, 2000, 12);
  EXPECT_LE(std::fabs(mc2.Efx), 4 * mc2.Efx_se);
}

TEST(Estimators, McIndependentOfThreadCount) {
  EstimatorSpec spec{EstimatorKind::SawSbm, 0, 2, sym_sbm(30, 3, 1)};
  auto a = mc_correlation(spec, 300, 4, false);
  auto b = mc_correlation(spec, 300, 4, true);
  EXPECT_EQ(a.Efx, b.Efx);
  EXPECT_EQ(a.Ef2, b.Ef2);
  EXPECT_EQ(a.corr_se, b.corr_se);
}

TEST(Estimators, SawPairMoments) {
  WignerParams w = wig(20, 1.5);
  MultiGraph a{{1, 3, 1}, {3, 4, 1}, {2, 4, 1}};
  auto same = saw_pair_moment(a, a, w);
  EXPECT_NEAR(same.exact, std::pow(1 + 1.5 / 20, 3), 1e-14);
  MultiGraph b{{1, 5, 1}, {5, 6, 1}, {2, 6, 1}};
  auto disjoint = saw_pair_moment(a, b, w);
  EXPECT_EQ(disjoint.shared_edges, 0);
  EXPECT_LE(disjoint.exact, disjoint.bound + 1e-15);
}

TEST(Estimators, PathMomentRademacher) {
  for (int m : {1, 2, 4})
    for (int L = 1; L <= 3; ++L) {
      EXPECT_NEAR(path_moment_exact(L, PriorSpec::rademacher(), m), std::pow(m, L), 1e-12);
      EXPECT_DOUBLE_EQ(path_moment_formula(L, m, 1.0), std::pow(m, L));
    }
}

TEST(Estimators, KindMustMatchModel) {
  EXPECT_THROW(validate(EstimatorSpec{EstimatorKind::SawWigner, 0, 3, SubmatrixParams{8, 1.0, 0.4}}), ValidationError);
  EXPECT_THROW(validate(EstimatorSpec{EstimatorKind::SawWigner, 0, 3, wig(3, 1.0)}), ValidationError);
}
