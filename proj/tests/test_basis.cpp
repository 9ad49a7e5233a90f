#include <gtest/gtest.h>

#include <cmath>

#include "lowdeg/basis.hpp"
#include "lowdeg/oracle.hpp"

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

TEST(Hermite, LowOrders) {
  EXPECT_EQ(hermite(0, 3.7), 1.0);
  EXPECT_EQ(hermite(1, 1.5), 1.5);
  EXPECT_NEAR(hermite(2, 2.0), (4.0 - 1.0) / std::sqrt(2.0), 1e-15);
}

TEST(Hermite, QuadratureNormOfH2) {
  // Composite Simpson on [-12, 12] against the standard normal density.
  const int N = 4000;
  const double a = -12, b = 12, h = (b - a) / N;
  double s = 0.0;
  for (int i = 0; i <= N; ++i) {
    double z = a + i * h;
    double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
    s += w * hermite(2, z) * hermite(2, z) * std::exp(-z * z / 2) / std::sqrt(2 * M_PI);
  }
  EXPECT_NEAR(s * h / 3, 1.0, 1e-10);
}

TEST(Submatrix, CoefficientExamples) {
  EXPECT_DOUBLE_EQ(c_submatrix(MultiGraph{}, 0.7, 0.3), 0.3);
  EXPECT_NEAR(c_submatrix(MultiGraph{{1, 2, 1}}, 0.5, 0.1), 0.005, 1e-16);
  EXPECT_EQ(c_submatrix(MultiGraph{{1, 2, 1}, {2, 3, 1}}, 0.0, 0.4), 0.0);
}

TEST(Submatrix, ConstraintExamples) {
  MultiGraph e{{1, 2, 1}};
  EXPECT_DOUBLE_EQ(M_submatrix({e, {}}, e, 0.8, 0.3), 1.0);
  EXPECT_EQ(M_submatrix({MultiGraph{{2, 3, 1}}, {}}, e, 0.8, 0.3), 0.0);
  EXPECT_NEAR(M_submatrix({MultiGraph{}, {1}}, e, 1.0, 0.25), 0.0625 * std::sqrt(3.0), 1e-15);
}

TEST(Pds, CoefficientExamples) {
  PdsParams p{5, 0.35, 0.2, 0.6};
  EXPECT_DOUBLE_EQ(c_pds(MultiGraph{}, p), 0.35);
  PdsParams none{5, 0.0, 0.2, 0.6};
  MultiGraph a{{1, 2, 1}, {2, 3, 1}};
  EXPECT_NEAR(M_pds({a, {}}, a, none), std::pow(0.2 * 0.8, 1.0), 1e-15);
  EXPECT_EQ(M_pds({MultiGraph{{3, 4, 1}}, {}}, a, p), 0.0);
}

TEST(Sbm, SelfConstraintExample) {
  auto p = sym_sbm(100, 3, 1);
  MultiGraph e{{1, 2, 1}};
  auto all = M_sbm_all(e, e, p);
  ASSERT_EQ(all.size(), 4u);
  // labeling (1,1) comes first
  EXPECT_NEAR(all[0], 0.5 * std::sqrt(0.0291), 1e-14);
}

TEST(Sbm, CoefficientVanishesWithoutVertexTwo) {
  auto p = sym_sbm(20, 3, 1);
  EXPECT_EQ(c_sbm(MultiGraph{{1, 3, 1}, {3, 4, 1}}, 0, 0, p), 0.0);
}

TEST(Sbm, LeafOutsideConditioningSetGivesZero) {
  auto p = sym_sbm(20, 3, 1);
  MultiGraph a{{1, 3, 1}, {3, 2, 1}, {3, 4, 1}};
  EXPECT_EQ(conditional_moment_phi(a, {1, 2}, {0, 1}, p), 0.0);
}

TEST(Sbm, ConstantQHasNoSignal) {
  auto p = sym_sbm(20, 2, 2);
  MultiGraph a{{1, 3, 1}, {3, 2, 1}};
  EXPECT_NEAR(conditional_moment_phi(a, {1, 2}, {0, 1}, p), 0.0, 1e-18);
  EXPECT_NEAR(c_sbm(a, 0, 1, p), 0.0, 1e-18);
}

TEST(Sbm, PathConditionalMomentMatchesMatrixPower) {
  auto p = sym_sbm(20, 3, 1);
  MultiGraph a{{1, 3, 1}, {2, 3, 1}};
  // E[(Y13 - d/n)(Y23 - d/n) | s1, s2] = (1/n^2) sum_k pi_k (Q_{s1 k} - d)(Q_{s2 k} - d)
  for (int t1 = 0; t1 < 2; ++t1)
    for (int t2 = 0; t2 < 2; ++t2) {
      double e = 0.0;
      for (int k = 0; k < 2; ++k) e += 0.5 * (p.Q(t1, k) - 2) * (p.Q(t2, k) - 2);
      EXPECT_NEAR(conditional_moment_phi(a, {1, 2}, {t1, t2}, p), e / 400.0, 1e-15);
    }
}

TEST(Sbm, GramMatchesLabelEnumeration) {
  auto p = sym_sbm(3, 2.5, 0.5);
  auto gs = build_gram(p, 1);
  // basis: empty, (1,2), (1,3), (2,3); E[(Y_e - d/n)^2] = sum over labels of Q/n (1 - Q/n) minus (Q/n - d/n)^2 terms
  const double dn = p.d() / 3;
  double var = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double pr = p.Q(a, b) / 3;
      var += 0.25 * (pr * (1 - pr) + (pr - dn) * (pr - dn));
    }
  ASSERT_EQ(gs.basis.size(), 4u);
  EXPECT_NEAR(gs.G(0, 0), 1.0, 1e-15);
  for (int i = 1; i < 4; ++i) {
    EXPECT_NEAR(gs.G(i, i), var, 1e-15);
    EXPECT_NEAR(gs.G(0, i), 0.0, 1e-15);
  }
}
