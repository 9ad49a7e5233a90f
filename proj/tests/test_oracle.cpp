#include <gtest/gtest.h>

#include <cmath>

#include "lowdeg/basis.hpp"
#include "lowdeg/oracle.hpp"

using namespace lowdeg;

TEST(Oracle, ConstantOnly) {
  SubmatrixParams p{4, 1.3, 0.3};
  auto r = exact_corr(build_gram(p, 0));
  EXPECT_NEAR(r.corr, std::sqrt(0.3), 1e-14);
  EXPECT_NEAR(r.mmse, 0.3 - 0.09, 1e-14);
  EXPECT_EQ(r.basis_size, 1);
}

TEST(Oracle, NoSignalGivesConstantCorrelation) {
  SubmatrixParams p{3, 0.0, 0.4};
  for (int D = 0; D <= 2; ++D) EXPECT_NEAR(exact_corr(build_gram(p, D)).corr, std::sqrt(0.4), 1e-12);
}

// Frozen from tests/oracles/submatrix_corr.py (raw monomial least squares,
// exact rational moments): sqrt(51156399)/8989 and the D = 2 analogue.
TEST(Oracle, SubmatrixMatchesMonomialLeastSquares) {
  SubmatrixParams p{3, 1.0, 0.5};
  EXPECT_NEAR(exact_corr(build_gram(p, 1)).corr, 0.79568029442597916, 1e-12);
  EXPECT_NEAR(exact_corr(build_gram(p, 2)).corr, 0.80056098300701731, 1e-12);
}

TEST(Oracle, MmseIdentityAcrossModels) {
  WignerParams w;
  w.n = 4;
  w.lambda = 1.1;
  SbmParams s;
  s.n = 4;
  s.q = 2;
  s.pi = {0.4, 0.6};
  s.Q.resize(2, 2);
  s.Q << 3.0, 1.0, 1.0, 2.0;
  std::vector<ModelParams> models = {SubmatrixParams{4, 0.9, 0.35}, PdsParams{4, 0.3, 0.25, 0.75}, w, s};
  for (const auto& m : models) {
    auto gs = build_gram(m, 2);
    auto r = exact_corr(gs);
    EXPECT_NEAR(independent_mmse(gs), (1 - r.corr * r.corr) * gs.Ex2, 1e-12) << model_name(m);
    EXPECT_LE(r.gram_rank, r.basis_size);
  }
}

TEST(Oracle, SerialAndParallelGramAgree) {
  PdsParams p{4, 0.3, 0.25, 0.75};
  OracleOptions serial, par;
  serial.parallel = false;
  auto a = build_gram(p, 3, serial), b = build_gram(p, 3, par);
  EXPECT_TRUE(a.G == b.G);
  EXPECT_TRUE(a.c == b.c);
}

TEST(Oracle, SubmatrixGramMatchesMonteCarlo) {
  SubmatrixParams p{3, 0.8, 0.4};
  auto gs = build_gram(p, 2);
  const int N = static_cast<int>(gs.basis.size());
  const int trials = 100000;
  std::vector<std::pair<int, int>> probe = {{1, 1}, {1, 2}, {N - 1, N - 1}, {2, N - 3}, {0, N / 2}};
  std::vector<double> s(probe.size(), 0.0), s2(probe.size(), 0.0);
  for (int t = 0; t < trials; ++t) {
    auto smp = sample(p, 17, t);
    for (std::size_t k = 0; k < probe.size(); ++k) {
      double v = hermite_graph(gs.basis[probe[k].first], smp.Y) * hermite_graph(gs.basis[probe[k].second], smp.Y);
      s[k] += v;
      s2[k] += v * v;
    }
  }
  for (std::size_t k = 0; k < probe.size(); ++k) {
    double mean = s[k] / trials, var = s2[k] / trials - mean * mean;
    EXPECT_LE(std::fabs(mean - gs.G(probe[k].first, probe[k].second)), 5 * std::sqrt(var / trials));
  }
}

// Under the degree condition Q_{s1 s2} - d = sum_{k,l} (Q_kl - d) x_kl, so the
// correlation for the full estimand is controlled by the indicator ones.
TEST(Oracle, SbmEstimandBoundedByIndicatorSum) {
  SbmParams p;
  p.n = 6;
  p.q = 3;
  p.pi = {0.5, 0.3, 0.2};
  p.Q.resize(3, 3);
  p.Q << 4.0, 2.0, 2.0, 2.0, 4.8, 2.8, 2.0, 2.8, 5.8;
  ASSERT_LE(p.degree_condition_residual(), 1e-12);
  for (int D = 1; D <= 2; ++D) {
    auto full = build_gram(p, D);
    const double lhs = exact_corr(full).corr * std::sqrt(full.Ex2);
    double rhs = 0.0;
    for (int k = 0; k < p.q; ++k)
      for (int l = 0; l < p.q; ++l) {
        OracleOptions o;
        o.use_indicator = true;
        o.k0 = k;
        o.l0 = l;
        auto gs = build_gram(p, D, o);
        rhs += std::fabs(p.Q(k, l) - p.d()) * exact_corr(gs).corr * std::sqrt(gs.Ex2);
      }
    EXPECT_GT(lhs, 0.0);
    EXPECT_LE(lhs, rhs + 1e-12) << "D=" << D;
  }
}
