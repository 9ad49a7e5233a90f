#include "lowdeg/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lowdeg/cumulants.hpp"
#include "lowdeg/thresholds.hpp"

namespace lowdeg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> with_vertex_one(const MultiGraph& g) {
  auto vs = g.vertices();
  if (!g.has_vertex(1)) vs.insert(vs.begin(), 1);
  return vs;
}

bool gamma_ok(const BasisIndex& idx) {
  auto vs = with_vertex_one(idx.beta);
  for (int v : idx.gamma)
    if (!std::binary_search(vs.begin(), vs.end(), v)) return false;
  return true;
}

void sort_by_size(std::vector<MultiGraph>& gs) {
  std::stable_sort(gs.begin(), gs.end(), [](const MultiGraph& a, const MultiGraph& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

std::vector<std::vector<int>> sbm_gamma_list(const MultiGraph& beta, int q) {
  std::vector<std::vector<int>> out;
  for_each_labeling(beta.vertex_count(), q, [&](const std::vector<int>& lab) { out.push_back(lab); });
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double relative_slack(double rhs, double lhs) {
  double scale = std::max(std::fabs(rhs), 1e-300);
  return (rhs - lhs) / scale;
}

}  // namespace

double u_submatrix(const BasisIndex& idx, double lambda, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("u_submatrix: rho must lie strictly in (0,1)");
  if (!is_rooted_connected(idx.beta) || !gamma_ok(idx)) return 0.0;
  return std::pow(-std::sqrt(rho / (1.0 - rho)), static_cast<double>(idx.gamma.size())) *
         c_submatrix(idx.beta, lambda, rho);
}

double u_pds(const BasisIndex& idx, const PdsParams& p) {
  if (!(p.rho > 0.0 && p.rho < 1.0)) throw ValidationError("u_pds: rho must lie strictly in (0,1)");
  if (!(p.p0 > 0.0 && p.p0 < 1.0)) throw ValidationError("u_pds: p0 must lie in (0,1)");
  if (!is_rooted_connected(idx.beta) || !idx.beta.is_simple() || !gamma_ok(idx)) return 0.0;
  return std::pow(-std::sqrt(p.rho / (1.0 - p.rho)), static_cast<double>(idx.gamma.size())) *
         c_pds(idx.beta, p) / std::pow(p.p0 * (1.0 - p.p0), 0.5 * idx.beta.size());
}

std::size_t Certificate::entry_count() const {
  std::size_t n = 0;
  for (const auto& [b, v] : u) n += v.size();
  return n;
}

CertSystem cert_system(const ModelParams& params, int D, int k0, int l0) {
  validate(params);
  CertSystem sys;
  sys.model = model_name(params);
  sys.D = D;
  const int n = model_n(params);
  // Same index set as the oracle basis, but only the enumerator guards apply:
  // no Gram matrix is formed here.
  const bool gaussian = params.index() == 0 || params.index() == 2;
  sys.all = enumerate({GraphClass::All, n, D, 0, 0, gaussian, gaussian});
  switch (params.index()) {
    case 0: {
      const auto p = std::get<SubmatrixParams>(params);
      sys.good = enumerate({GraphClass::ConnectedRooted, n, D, 0, 0, true, true});
      sys.is_good = [](const MultiGraph& a) { return is_rooted_connected(a); };
      sys.gammas = [](const MultiGraph& b) { return subsets_of(with_vertex_one(b)); };
      sys.M_block = [p, g = sys.gammas](const MultiGraph& beta, const MultiGraph& alpha) {
        std::vector<double> out;
        for (auto& gm : g(beta)) out.push_back(M_submatrix({beta, gm}, alpha, p.lambda, p.rho));
        return out;
      };
      sys.c = [p](const MultiGraph& a) { return c_submatrix(a, p.lambda, p.rho); };
      sys.mean_phi = [p](const MultiGraph& a) { return mean_phi_submatrix(a, p.lambda, p.rho); };
      sys.Ex2 = p.rho;
      break;
    }
    case 1: {
      const auto p = std::get<PdsParams>(params);
      sys.good = enumerate({GraphClass::ConnectedRooted, n, D, 0, 0, false, false});
      sys.is_good = [](const MultiGraph& a) { return is_rooted_connected(a); };
      sys.gammas = [](const MultiGraph& b) { return subsets_of(with_vertex_one(b)); };
      sys.M_block = [p, g = sys.gammas](const MultiGraph& beta, const MultiGraph& alpha) {
        std::vector<double> out;
        for (auto& gm : g(beta)) out.push_back(M_pds({beta, gm}, alpha, p));
        return out;
      };
      sys.c = [p](const MultiGraph& a) { return c_pds(a, p); };
      sys.mean_phi = [p](const MultiGraph& a) { return mean_phi_pds(a, p); };
      sys.Ex2 = p.rho;
      break;
    }
    case 3: {
      const auto p = std::get<SbmParams>(params);
      if (k0 < 0 || k0 >= p.q || l0 < 0 || l0 >= p.q) throw ValidationError("certificate: (k0, l0) out of range");
      sys.good = enumerate({GraphClass::GoodSBM, n, D, 0, 0, false, false});
      sys.is_good = [](const MultiGraph& a) { return is_good_sbm(a); };
      const int q = p.q;
      sys.gammas = [q](const MultiGraph& b) { return sbm_gamma_list(b, q); };
      sys.M_block = [p](const MultiGraph& beta, const MultiGraph& alpha) { return M_sbm_all(beta, alpha, p); };
      sys.c = [p, k0, l0](const MultiGraph& a) { return c_sbm(a, k0, l0, p); };
      sys.mean_phi = [p](const MultiGraph& a) { return mean_phi_sbm(a, p); };
      sys.Ex2 = second_moment_x_kl(p, k0, l0);
      break;
    }
    default:
      throw ValidationError("certificates are defined for submatrix, pds and sbm");
  }
  sort_by_size(sys.good);
  return sys;
}

void verify_certificate(Certificate& cert, const CertSystem& sys) {
  auto residual_at = [&](const MultiGraph& alpha) {
    double s = 0.0;
    for (const auto& [beta, ub] : cert.u) {
      if (!beta.leq(alpha)) continue;
      s += dot(ub, sys.M_block(beta, alpha));
    }
    return std::fabs(s - sys.c(alpha));
  };
  cert.residual = 0.0;
  for (const auto& alpha : sys.good) cert.residual = std::max(cert.residual, residual_at(alpha));
  cert.residual_all = 0.0;
  for (const auto& alpha : sys.all) cert.residual_all = std::max(cert.residual_all, residual_at(alpha));
}

namespace {

Certificate closed_form(const CertSystem& sys, const std::function<double(const BasisIndex&)>& ufun) {
  Certificate cert;
  cert.model = sys.model;
  cert.D = sys.D;
  cert.Ex2 = sys.Ex2;
  double sq = 0.0;
  for (const auto& beta : sys.good) {
    auto gl = sys.gammas(beta);
    std::vector<double> block;
    for (const auto& g : gl) {
      double v = ufun({beta, g});
      block.push_back(v);
      sq += v * v;
    }
    cert.u.emplace(beta, std::move(block));
    cert.gamma_lists.emplace(beta, std::move(gl));
  }
  cert.norm = std::sqrt(sq);
  cert.bound = cert.Ex2 > 0 ? cert.norm / std::sqrt(cert.Ex2) : 0.0;
  verify_certificate(cert, sys);
  return cert;
}

}  // namespace

Certificate certificate_submatrix(const SubmatrixParams& p, int D) {
  auto sys = cert_system(p, D);
  return closed_form(sys, [&](const BasisIndex& idx) { return u_submatrix(idx, p.lambda, p.rho); });
}

Certificate certificate_pds(const PdsParams& p, int D) {
  auto sys = cert_system(p, D);
  return closed_form(sys, [&](const BasisIndex& idx) { return u_pds(idx, p); });
}

Certificate certificate_sbm(const SbmParams& p, int D, int k0, int l0) {
  auto sys = cert_system(p, D, k0, l0);
  Certificate cert;
  cert.model = sys.model;
  cert.D = D;
  cert.Ex2 = sys.Ex2;
  double sq = 0.0;
  for (const auto& alpha : sys.good) {
    auto gl = sys.gammas(alpha);
    if (alpha.empty()) {
      cert.u.emplace(alpha, std::vector<double>(gl.size(), 0.0));
      cert.gamma_lists.emplace(alpha, std::move(gl));
      continue;
    }
    double d = sys.c(alpha);
    for (const auto& [beta, ub] : cert.u) {
      if (beta == alpha || !beta.leq(alpha)) continue;
      d -= dot(ub, sys.M_block(beta, alpha));
    }
    auto Mself = sys.M_block(alpha, alpha);
    double S = dot(Mself, Mself);
    if (!(S > 0.0)) throw ValidationError("certificate_sbm: degenerate basis block for " + alpha.canonical());
    std::vector<double> block(Mself.size());
    for (std::size_t i = 0; i < Mself.size(); ++i) {
      block[i] = Mself[i] * d / S;
      sq += block[i] * block[i];
    }
    cert.d_alpha[alpha] = d;
    cert.sum_M2[alpha] = S;
    cert.u.emplace(alpha, std::move(block));
    cert.gamma_lists.emplace(alpha, std::move(gl));
  }
  cert.norm = std::sqrt(sq);
  cert.bound = cert.Ex2 > 0 ? cert.norm / std::sqrt(cert.Ex2) : 0.0;
  verify_certificate(cert, sys);
  return cert;
}

Certificate build_certificate(const ModelParams& params, int D, int k0, int l0) {
  switch (params.index()) {
    case 0: return certificate_submatrix(std::get<SubmatrixParams>(params), D);
    case 1: return certificate_pds(std::get<PdsParams>(params), D);
    case 3: return certificate_sbm(std::get<SbmParams>(params), D, k0, l0);
    default: throw ValidationError("certificates are defined for submatrix, pds and sbm");
  }
}

double corr_bound(const Certificate& cert, double tol) {
  if (!(cert.residual <= tol))
    throw ValidationError("corr_bound: constraint residual " + std::to_string(cert.residual) + " exceeds tolerance");
  return cert.bound;
}

DisconnReport disconn_pair(const CertSystem& sys, const ModelParams& params, const MultiGraph& alpha) {
  DisconnReport r;
  r.alpha = alpha;
  if (params.index() == 3) {
    if (!alpha.has_vertex(1) || !alpha.has_vertex(2)) {
      r.mu = sys.mean_phi(alpha);
    } else {
      bool leaf = false;
      for (const auto& [v, deg] : alpha.degrees())
        if (v != 1 && v != 2 && deg < 2) leaf = true;
      if (leaf) {
        r.mu = 0.0;
      } else {
        r.alpha_hat = alpha.bar().components_touching({1, 2}).minus(MultiGraph{{1, 2, 1}});
        r.mu = sys.mean_phi(alpha.minus(r.alpha_hat));
      }
    }
  } else {
    r.alpha_hat = alpha.components_touching({1});
    r.mu = sys.mean_phi(alpha.minus(r.alpha_hat));
  }
  r.c_error = std::fabs(sys.c(alpha) - r.mu * sys.c(r.alpha_hat));
  for (const auto& beta : sys.good) {
    auto a = sys.M_block(beta, alpha);
    auto b = sys.M_block(beta, r.alpha_hat);
    for (std::size_t i = 0; i < a.size(); ++i) r.M_error = std::max(r.M_error, std::fabs(a[i] - r.mu * b[i]));
  }
  return r;
}

std::vector<DisconnReport> check_disconn(const CertSystem& sys, const ModelParams& params, int count) {
  std::vector<MultiGraph> bad;
  for (const auto& a : sys.all)
    if (!sys.is_good(a)) bad.push_back(a);
  std::vector<DisconnReport> out;
  if (bad.empty() || count <= 0) return out;
  const int take = std::min<int>(count, static_cast<int>(bad.size()));
  for (int i = 0; i < take; ++i) {
    std::size_t pos = static_cast<std::size_t>(i) * bad.size() / static_cast<std::size_t>(take);
    out.push_back(disconn_pair(sys, params, bad[pos]));
  }
  return out;
}

double pds_crucial_identity_error(const PdsParams& p, int D) {
  auto sys = cert_system(p, D);
  const double s = -std::sqrt(p.rho / (1.0 - p.rho));
  double worst = 0.0;
  for (const auto& alpha : sys.good)
    for (const auto& beta : sys.good) {
      if (!beta.leq(alpha)) continue;
      auto gl = sys.gammas(beta);
      auto M = sys.M_block(beta, alpha);
      double sum = 0.0;
      for (std::size_t i = 0; i < gl.size(); ++i) sum += std::pow(s, static_cast<double>(gl[i].size())) * M[i];
      double expect = beta == alpha ? std::pow(p.p0 * (1.0 - p.p0), 0.5 * alpha.size()) : 0.0;
      worst = std::max(worst, std::fabs(sum - expect));
    }
  return worst;
}

double submatrix_norm_closed_form(const SubmatrixParams& p, int D) {
  const double growth = 1.0 + p.rho / (1.0 - p.rho);
  double total = 0.0;
  for (const auto& alpha : enumerate({GraphClass::ConnectedRooted, p.n, D, 0, 0, true, true})) {
    double c = c_submatrix(alpha, p.lambda, p.rho);
    total += c * c * std::pow(growth, static_cast<double>(with_vertex_one(alpha).size()));
  }
  return total;
}

// ---------------- analytic expressions ----------------

namespace {

long double binom_ld(double n, int k) {
  if (k < 0 || n < k) return 0.0L;
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (static_cast<long double>(n) - k + i) / i;
  return r;
}

}  // namespace

SubmatrixAnalytic analytic_submatrix(double lambda, double rho, double n, int D) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("analytic_submatrix: rho must lie strictly in (0,1)");
  SubmatrixAnalytic a;
  a.prefactor = rho / (1.0 - rho);
  const long double rt = rho / std::sqrt(1.0 - rho);
  const long double l2 = static_cast<long double>(lambda) * lambda;
  for (int v = 1; v <= D + 1; ++v) {
    long double b = v == 1 ? 1.0L
                           : binom_ld(n - 1, v - 1) * std::pow(static_cast<long double>(v), v - 2) *
                                 std::pow(l2 * rt * rt, static_cast<long double>(v - 1));
    a.b.push_back(static_cast<double>(b));
    a.sum_b += static_cast<double>(b);
    a.sum_v2_b += static_cast<double>(b) * v * v;
    long double inner = 0.0L;
    for (int k = 0; k <= D; ++k)
      inner += binom_ld(v * (v + 1) / 2.0 + k - 1, k) * std::pow(l2, static_cast<long double>(v - 1 + k));
    long double cayley = v == 1 ? 1.0L : std::pow(static_cast<long double>(v), v - 2);
    a.counting_bound_sq += static_cast<double>(binom_ld(n - 1, v - 1) * cayley * inner *
                                               std::pow(rt * rt, static_cast<long double>(v)) / rho);
  }
  a.threshold = submatrix_lower_threshold(rho, n);
  a.below_threshold = lambda <= a.threshold;
  return a;
}

WignerAnalytic analytic_wigner(double lambda, int m, double n, int D) {
  WignerAnalytic w;
  double s = 0.0, p = 1.0;
  for (int d = 1; d <= D; ++d) {
    p *= lambda;
    s += p;
  }
  w.envelope_sum = m / n * s;
  w.envelope = std::sqrt(w.envelope_sum);
  w.limit = lambda < 1.0 ? std::sqrt(m * lambda / (n * (1.0 - lambda))) : kInf;
  w.below_bbp = lambda < 1.0;
  return w;
}

double ks_series(double ks, int D) {
  double s = 0.0, p = 1.0;
  for (int t = 1; t <= D; ++t) {
    p *= ks;
    s += p;
  }
  return s;
}

SbmAnalytic analytic_sbm(const SbmParams& p, int D) {
  auto sp = sbm_spectral(p);
  SbmAnalytic a;
  a.d = sp.d;
  a.lambda = sp.lambda;
  a.ks = sp.ks;
  a.ks_sum = ks_series(sp.ks, D);
  a.c_prime = std::pow(p.q / p.pi_min(), 4) * sp.d / p.Q_min();
  a.ratio = a.c_prime * std::pow(2.0 * D, 7) / p.n;
  a.geometric = a.ratio < 1.0 ? 1.0 / (1.0 - a.ratio) : kInf;
  const double shrink = 1.0 - p.Q_max() / p.n;
  a.chain_bound_sq = shrink > 0 ? a.c_prime / p.n * ks_series(sp.ks / shrink, D) * a.geometric : kInf;
  a.below_ks = sp.ks <= 1.0;
  return a;
}

SbmInequalityReport sbm_inequalities(const SbmParams& p, int D, int max_vertices, int max_tree_edges) {
  SbmInequalityReport r;
  auto sp = sbm_spectral(p);
  const double d = sp.d, lam = sp.lambda;
  const double qp = p.q / p.pi_min();

  // Crucial estimate over every nonempty simple alpha on {1..max_vertices}.
  // K_5 has 10 edges, past the enumerator's edge guard, so walk edge subsets
  // directly; 2^10 graphs is small.
  check_guard("crucial estimate vertices", max_vertices, 6);
  std::vector<MultiGraph::Key> slots;
  for (int i = 1; i <= max_vertices; ++i)
    for (int j = i + 1; j <= max_vertices; ++j) slots.emplace_back(i, j);
  for (unsigned long mask = 1; mask < (1ul << slots.size()); ++mask) {
    MultiGraph alpha;
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1ul) alpha.add(slots[b].first, slots[b].second);
    auto vs = alpha.vertices();
    auto comps = alpha.components();
    for (const auto& W : subsets_of(vs)) {
      if (W.empty()) continue;
      bool meets = true;
      for (const auto& comp : comps) {
        bool hit = false;
        for (int w : W) hit = hit || comp.has_vertex(w);
        meets = meets && hit;
      }
      if (!meets) continue;
      double worst = 0.0;
      for_each_labeling(static_cast<int>(W.size()), p.q, [&](const std::vector<int>& tau) {
        worst = std::max(worst, std::fabs(conditional_moment_phi(alpha, W, tau, p)));
      });
      double rhs = std::pow(d * lam / p.n, alpha.size()) *
                   std::pow(qp, 2.0 * (alpha.size() - alpha.vertex_count() + static_cast<int>(W.size())));
      r.crucial_estimate = std::min(r.crucial_estimate, relative_slack(rhs, worst));
      ++r.checked;
    }
  }

  // Inequalities over good alpha, |alpha| <= D.
  auto good = enumerate({GraphClass::GoodSBM, p.n, D, 0, 0, false, false});
  FTable ft;
  const double shrink = 1.0 - p.Q_max() / p.n;
  SbmParams copy = p;
  auto cert = certificate_sbm(copy, D);
  for (const auto& alpha : good) {
    if (alpha.empty()) continue;
    auto self = M_sbm_all(alpha, alpha, p);
    for (double m : self) r.M_self_nonneg = std::min(r.M_self_nonneg, m);
    double S = dot(self, self);
    double lower = std::pow(d / p.n, alpha.size()) * std::pow(shrink, alpha.size()) *
                   std::pow(p.Q_min() / d, alpha.size() - alpha.vertex_count() + alpha.component_count());
    r.M_lower = std::min(r.M_lower, relative_slack(S, lower));
    double drhs = std::pow(d * lam / p.n, alpha.size()) * static_cast<double>(ft.f(alpha)) *
                  std::pow(qp, 2.0 * (alpha.size() - alpha.vertex_count() + 2));
    r.d_alpha = std::min(r.d_alpha, relative_slack(drhs, std::fabs(cert.d_alpha.at(alpha))));
    for (const auto& beta : good) {
      if (beta.empty() || beta == alpha || !beta.leq(alpha)) continue;
      auto Mba = M_sbm_all(beta, alpha, p);
      auto Mbb = M_sbm_all(beta, beta, p);
      double factor = std::pow(d * lam / p.n, alpha.size() - beta.size()) *
                      std::pow(qp, 2.0 * (alpha.size() - beta.size() - alpha.vertex_count() + beta.vertex_count()));
      for (std::size_t i = 0; i < Mba.size(); ++i)
        r.bound_M = std::min(r.bound_M, relative_slack(Mbb[i] * factor, std::fabs(Mba[i])));
    }
  }

  // E prod Q = d^|alpha| on trees.
  const int tn = max_tree_edges + 1;
  for (const auto& g : enumerate({GraphClass::All, tn, max_tree_edges, 0, 0, false, false})) {
    if (g.empty() || !g.connected() || g.size() != g.vertex_count() - 1) continue;
    auto vs = g.vertices();
    double e = 0.0;
    for_each_labeling(static_cast<int>(vs.size()), p.q, [&](const std::vector<int>& lab) {
      double w = 1.0;
      for (int l : lab) w *= p.pi[l];
      for (const auto& [key, m] : g.edges()) {
        auto ia = std::lower_bound(vs.begin(), vs.end(), key.first) - vs.begin();
        auto ib = std::lower_bound(vs.begin(), vs.end(), key.second) - vs.begin();
        w *= p.Q(lab[ia], lab[ib]);
      }
      e += w;
    });
    double target = std::pow(d, g.size());
    r.tree_identity = std::max(r.tree_identity, std::fabs(e - target) / target);
  }
  return r;
}

}  // namespace lowdeg
