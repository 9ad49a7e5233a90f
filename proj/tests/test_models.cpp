#include <gtest/gtest.h>

#include <cmath>

#include "lowdeg/graph.hpp"
#include "lowdeg/models.hpp"
#include "lowdeg/rng.hpp"

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

TEST(Rng, StreamsArePureFunctions) {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 5; ++i) {
    auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(Models, SubmatrixRhoOneIsAllOnes) {
  auto s = sample(SubmatrixParams{6, 1.0, 1.0}, 3);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(s.theta(i), 1.0);
}

TEST(Models, WignerEstimandExample) {
  WignerParams p;
  p.n = 4;
  p.lambda = 4.0;
  Sample s;
  s.U = Eigen::MatrixXd(4, 1);
  s.U << 1, -1, 1, 1;
  EXPECT_DOUBLE_EQ(estimand(p, s), -1.0);
}

TEST(Models, SbmEstimandExample) {
  auto p = sym_sbm(10, 3, 1);
  EXPECT_DOUBLE_EQ(p.d(), 2.0);
  Sample s;
  s.sigma = std::vector<int>(10, 0);
  EXPECT_DOUBLE_EQ(estimand(p, s), 1.0);
}

TEST(Models, SecondMomentExamples) {
  EXPECT_DOUBLE_EQ(second_moment_x(SubmatrixParams{5, 1.0, 0.1}), 0.1);
  WignerParams w;
  w.n = 300;
  w.m = 3;
  w.lambda = 1.0;
  EXPECT_NEAR(second_moment_x(w), 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(second_moment_x(sym_sbm(10, 3, 1)), 1.0);
}

TEST(Models, Determinism) {
  WignerParams w;
  w.n = 7;
  w.m = 2;
  w.lambda = 1.3;
  w.prior = PriorSpec::three_point(3.0);
  auto a = sample(w, 99, 4), b = sample(w, 99, 4);
  EXPECT_TRUE(a.Y == b.Y);
  EXPECT_TRUE(a.U == b.U);
  auto c = sample(w, 99, 5);
  EXPECT_FALSE(a.Y == c.Y);
}

TEST(Models, Validation) {
  EXPECT_THROW(validate(SubmatrixParams{4, 1.0, 1.5}), ValidationError);
  EXPECT_THROW(validate(PdsParams{4, 0.3, 0.0, 0.5}), ValidationError);
  EXPECT_THROW(validate(sym_sbm(2, 3, 1)), ValidationError);  // Q/n > 1
  SbmParams one;
  one.n = 5;
  one.q = 1;
  one.pi = {1.0};
  one.Q = Eigen::MatrixXd::Constant(1, 1, 2.0);
  EXPECT_THROW(validate(one), ValidationError);
}

TEST(Models, ThreePointPriorMoments) {
  auto p = PriorSpec::three_point(3.0);
  EXPECT_NEAR(p.moment(1), 0.0, 1e-15);
  EXPECT_NEAR(p.moment(2), 1.0, 1e-14);
  EXPECT_NEAR(p.moment(4), 3.0, 1e-13);
}

// Mean of each Y entry over 1e5 draws sits within 5 standard errors of its
// analytic value.
TEST(Models, EmpiricalEntryMeans) {
  const int trials = 100000;
  std::vector<ModelParams> models = {SubmatrixParams{3, 1.2, 0.3}, PdsParams{3, 0.4, 0.2, 0.7}, sym_sbm(3, 2.5, 0.5)};
  WignerParams w;
  w.n = 3;
  w.lambda = 2.0;
  models.push_back(w);
  for (const auto& params : models) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(3, 3), sq = Eigen::MatrixXd::Zero(3, 3);
    for (int t = 0; t < trials; ++t) {
      auto s = sample(params, 5, t);
      sum += s.Y;
      sq += s.Y.cwiseProduct(s.Y);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double mean = sum(i, j) / trials;
        double var = sq(i, j) / trials - mean * mean;
        double expect = 0.0;
        switch (params.index()) {
          case 0: {
            const auto& p = std::get<SubmatrixParams>(params);
            expect = p.lambda * (i == j ? p.rho : p.rho * p.rho);
            break;
          }
          case 1: {
            const auto& p = std::get<PdsParams>(params);
            expect = i == j ? 0.0 : p.p0 + (p.p1 - p.p0) * p.rho * p.rho;
            break;
          }
          case 2: {
            const auto& p = std::get<WignerParams>(params);
            expect = i == j ? std::sqrt(p.lambda / p.n) : 0.0;
            break;
          }
          default: {
            const auto& p = std::get<SbmParams>(params);
            expect = i == j ? 0.0 : p.d() / p.n;
          }
        }
        double se = std::sqrt(std::max(var, 1e-300) / trials);
        if (var == 0.0)
          EXPECT_EQ(mean, expect);
        else
          EXPECT_LE(std::fabs(mean - expect), 5 * se) << model_name(params) << " entry " << i << "," << j;
      }
  }
}
