#include <gtest/gtest.h>

#include <cmath>

#include "lowdeg/certificate.hpp"
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

TEST(Certificate, SubmatrixEntries) {
  EXPECT_DOUBLE_EQ(u_submatrix({MultiGraph{}, {}}, 1.0, 0.3), 0.3);
  EXPECT_NEAR(u_submatrix({MultiGraph{{1, 2, 1}}, {1, 2}}, 1.0, 0.5), 0.25, 1e-15);
  EXPECT_EQ(u_submatrix({MultiGraph{{2, 3, 1}}, {}}, 1.0, 0.5), 0.0);
}

TEST(Certificate, PdsEntries) {
  PdsParams p{5, 0.3, 0.2, 0.6};
  EXPECT_DOUBLE_EQ(u_pds({MultiGraph{}, {}}, p), 0.3);
  PdsParams flat{4, 0.3, 0.4, 0.4};
  auto cert = certificate_pds(flat, 2);
  for (const auto& [beta, u] : cert.u)
    for (double v : u)
      if (!beta.empty()) EXPECT_EQ(v, 0.0);
}

TEST(Certificate, SubmatrixResidual) {
  auto cert = certificate_submatrix(SubmatrixParams{4, 0.7, 0.3}, 2);
  EXPECT_LE(cert.residual, 1e-10);
  EXPECT_NEAR(cert.norm * cert.norm, submatrix_norm_closed_form(SubmatrixParams{4, 0.7, 0.3}, 2), 1e-12);
}

TEST(Certificate, SbmResidualAndFirstD) {
  auto p = sym_sbm(5, 3, 1);
  auto cert = certificate_sbm(p, 2);
  EXPECT_LE(cert.residual, 1e-9);
  MultiGraph e{{1, 2, 1}};
  EXPECT_NEAR(cert.d_alpha.at(e), c_sbm(e, 0, 0, p), 1e-15);
}

TEST(Certificate, SbmConstantQGivesZeroBound) {
  auto cert = certificate_sbm(sym_sbm(5, 2, 2), 2);
  EXPECT_NEAR(cert.bound, 0.0, 1e-15);
}

TEST(Certificate, ZeroVectorIsRejected) {
  SubmatrixParams p{4, 0.7, 0.3};
  auto sys = cert_system(p, 2);
  auto cert = certificate_submatrix(p, 2);
  for (auto& [beta, u] : cert.u) std::fill(u.begin(), u.end(), 0.0);
  verify_certificate(cert, sys);
  EXPECT_FALSE(cert.pass());
  EXPECT_THROW(corr_bound(cert), ValidationError);
}

TEST(Certificate, DisconnOnIsolatedEdge) {
  SubmatrixParams p{4, 0.7, 0.3};
  auto sys = cert_system(p, 2);
  auto rep = disconn_pair(sys, p, MultiGraph{{3, 4, 1}});
  EXPECT_TRUE(rep.alpha_hat.empty());
  EXPECT_LE(rep.c_error, 1e-15);
  EXPECT_LE(rep.M_error, 1e-15);
}

TEST(Certificate, BoundDominatesOracle) {
  SubmatrixParams p{4, 0.1, 0.3};
  double prev = 0.0;
  for (int D = 1; D <= 3; ++D) {
    auto cert = certificate_submatrix(p, D);
    double oc = exact_corr(build_gram(p, D)).corr;
    EXPECT_GE(corr_bound(cert), oc - 1e-9) << "D=" << D;
    EXPECT_GE(cert.bound, prev - 1e-15);
    prev = cert.bound;
  }
}

TEST(Certificate, PdsCrucialIdentity) { EXPECT_LE(pds_crucial_identity_error(PdsParams{4, 0.3, 0.25, 0.7}, 3), 1e-12); }

TEST(Analytic, SubmatrixFirstTerm) {
  auto a = analytic_submatrix(0.5, 0.01, 1e4, 4);
  ASSERT_FALSE(a.b.empty());
  EXPECT_DOUBLE_EQ(a.b[0], 1.0);
}

TEST(Analytic, WignerGeometricSum) {
  auto a = analytic_wigner(0.5, 1, 1e4, 10);
  EXPECT_NEAR(a.envelope_sum, 9.990234375e-5, 1e-18);
  EXPECT_TRUE(a.below_bbp);
}

TEST(Analytic, KsSeries) {
  EXPECT_DOUBLE_EQ(ks_series(1.0, 20), 20.0);
  EXPECT_NEAR(ks_series(0.5, 3), 0.875, 1e-15);
}
