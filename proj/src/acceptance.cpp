#include "lowdeg/acceptance.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "lowdeg/basis.hpp"
#include "lowdeg/certificate.hpp"
#include "lowdeg/cumulants.hpp"
#include "lowdeg/estimators.hpp"
#include "lowdeg/graph.hpp"
#include "lowdeg/io.hpp"
#include "lowdeg/oracle.hpp"
#include "lowdeg/rng.hpp"
#include "lowdeg/runner.hpp"
#include "lowdeg/thresholds.hpp"

namespace lowdeg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Tracks the worst value of a quantity that must stay below a limit.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& w) {
    if (!(v <= value)) {  // also catches NaN
      value = v;
      where = w;
    }
  }
};

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

SbmParams sbm_symmetric(int n, double a, double b) {
  SbmParams p;
  p.n = n;
  p.q = 2;
  p.pi = {0.5, 0.5};
  p.Q.resize(2, 2);
  p.Q << a, b, b, a;
  return p;
}

// Three classes with unequal sizes that still satisfy the degree condition.
SbmParams sbm_three(int n) {
  SbmParams p;
  p.n = n;
  p.q = 3;
  p.pi = {0.5, 0.3, 0.2};
  p.Q.resize(3, 3);
  p.Q << 4.0, 2.0, 2.0, 2.0, 4.8, 2.8, 2.0, 2.8, 5.8;
  return p;
}

double uniform_in(CounterRng& r, double lo, double hi) { return lo + (hi - lo) * r.uniform(); }

ModelParams random_instance(int model, CounterRng& r, int n) {
  switch (model) {
    case 0: return SubmatrixParams{n, uniform_in(r, 0.2, 2.0), uniform_in(r, 0.1, 0.9)};
    case 1: {
      double p0 = uniform_in(r, 0.1, 0.5);
      return PdsParams{n, uniform_in(r, 0.1, 0.9), p0, uniform_in(r, p0, 0.95)};
    }
    case 2: {
      WignerParams w;
      w.n = n;
      w.m = 1 + static_cast<int>(r.uniform() * 2);
      w.lambda = uniform_in(r, 0.2, 2.0);
      w.prior = r.uniform() < 0.5 ? PriorSpec::rademacher() : PriorSpec::three_point(3.0);
      return w;
    }
    default: {
      double a = uniform_in(r, 0.3, 0.9 * n), b = uniform_in(r, 0.3, 0.9 * n);
      SbmParams p = sbm_symmetric(n, a, b);
      double w = uniform_in(r, 0.3, 0.7);
      p.pi = {w, 1.0 - w};
      return p;
    }
  }
}

std::string describe(const ModelParams& p) { return model_to_json(p).dump(); }

// ---------------------------------------------------------------- criteria

CriterionResult c1_fact(const AcceptanceOptions& opt) {
  CriterionResult r{1, "mmse-correlation identity", true, "", 0};
  Worst w;
  for (int i = 0; i < 20; ++i) {
    CounterRng rng(opt.seed, 1000 + i);
    const int n = 3 + static_cast<int>(rng.uniform() * 3);
    const int D = 1 + static_cast<int>(rng.uniform() * 2);
    auto params = random_instance(i % 4, rng, n);
    auto gs = build_gram(params, D);
    auto res = exact_corr(gs);
    const double identity = (1.0 - res.corr * res.corr) * gs.Ex2;
    const double indep = independent_mmse(gs);
    w.update(std::fabs(indep - identity) / std::max(1.0, gs.Ex2), describe(params) + " D=" + std::to_string(D));
  }
  r.pass = w.value <= 1e-12;
  r.detail = "20 instances, max |mmse - (1-corr^2)E[x^2]| = " + num(w.value) + (r.pass ? "" : " at " + w.where);
  return r;
}

CriterionResult c2_soundness(const AcceptanceOptions& opt) {
  CriterionResult r{2, "certificate soundness", true, "", 0};
  const std::vector<std::pair<int, int>> sizes_sp = {{3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 2}, {5, 3}};
  const std::vector<std::pair<int, int>> sizes_sbm = {{3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}, {5, 2}};
  std::ostringstream detail;
  for (int model : {0, 1, 3}) {
    double worst_res = 0.0, worst_gap = -1e300, min_margin = 1e300;
    std::string where;
    for (int i = 0; i < 20; ++i) {
      CounterRng rng(opt.seed, 2000 + 100 * model + i);
      const auto& sz = model == 3 ? sizes_sbm[i % sizes_sbm.size()] : sizes_sp[i % sizes_sp.size()];
      auto params = random_instance(model, rng, sz.first);
      if (model == 3) std::get<SbmParams>(params).pi = {0.5, 0.5};
      const int k0 = model == 3 ? i % 2 : 0, l0 = model == 3 ? (i / 2) % 2 : 0;
      auto cert = build_certificate(params, sz.second, k0, l0);
      OracleOptions oo;
      oo.use_indicator = model == 3;
      oo.k0 = k0;
      oo.l0 = l0;
      const double oc = exact_corr(build_gram(params, sz.second, oo)).corr;
      const double gap = oc - cert.bound;  // must be <= 1e-9
      if (cert.residual > worst_res || gap > worst_gap) where = describe(params) + " D=" + std::to_string(sz.second);
      worst_res = std::max(worst_res, cert.residual);
      worst_gap = std::max(worst_gap, gap);
      min_margin = std::min(min_margin, cert.bound - oc);
    }
    const bool ok = worst_res <= 1e-9 && worst_gap <= 1e-9;
    r.pass = r.pass && ok;
    detail << (model == 0 ? "submatrix" : model == 1 ? "pds" : "sbm") << ": max residual " << num(worst_res)
           << ", min(bound - corr) " << num(min_margin) << (ok ? "" : " [worst " + where + "]") << "; ";
  }
  r.detail = detail.str();
  return r;
}

CriterionResult c3_disconn(const AcceptanceOptions&) {
  CriterionResult r{3, "disconn relations", true, "", 0};
  std::vector<std::pair<ModelParams, int>> cases = {
      {SubmatrixParams{4, 0.9, 0.4}, 3}, {PdsParams{4, 0.4, 0.3, 0.7}, 3}, {sbm_symmetric(5, 3.0, 1.0), 2}};
  std::ostringstream detail;
  for (const auto& [params, D] : cases) {
    auto sys = cert_system(params, D);
    auto reports = check_disconn(sys, params, 10);
    double c_err = 0.0, m_err = 0.0;
    for (const auto& rep : reports) {
      c_err = std::max(c_err, rep.c_error);
      m_err = std::max(m_err, rep.M_error);
    }
    const bool ok = reports.size() == 10 && c_err <= 1e-10 && m_err <= 1e-10;
    r.pass = r.pass && ok;
    detail << model_name(params) << ": " << reports.size() << " bad alpha, c err " << num(c_err) << ", M err "
           << num(m_err) << "; ";
  }
  r.detail = detail.str();
  return r;
}

CriterionResult c4_substitution(const AcceptanceOptions& opt) {
  CriterionResult r{4, "pds-submatrix substitution", true, "", 0};
  double worst_u = 0.0, worst_id = 0.0;
  long long entries = 0;
  const std::vector<std::pair<int, int>> sizes = {{3, 1}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 3}};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    CounterRng rng(opt.seed, 4000 + i);
    auto p = std::get<PdsParams>(random_instance(1, rng, sizes[i].first));
    const int Dv = sizes[i].second;
    auto sys = cert_system(p, Dv);
    for (const auto& beta : sys.good)
      for (const auto& g : sys.gammas(beta)) {
        BasisIndex idx{beta, g};
        const double us = u_submatrix(idx, p.lambda_sub(), p.rho);
        worst_u = std::max(worst_u, rel_err(u_pds(idx, p), us));
        ++entries;
      }
    worst_id = std::max(worst_id, pds_crucial_identity_error(p, Dv));
  }
  r.pass = worst_u <= 1e-12 && worst_id <= 1e-12;
  r.detail = std::to_string(entries) + " entries, max u difference " + num(worst_u) + ", crucial identity error " +
             num(worst_id);
  return r;
}

CriterionResult c5_cumulants(const AcceptanceOptions&) {
  CriterionResult r{5, "cumulant correctness", true, "", 0};
  const double lambda = 1.7;
  auto small = enumerate({GraphClass::All, 4, 3, 0, 0, true, true});   // |alpha-bar| <= 4
  auto bad_pool = enumerate({GraphClass::All, 5, 4, 0, 0, true, true});
  double worst_oracle = 0.0, worst_rank = 0.0;
  long long nonzero_bad = 0, bad = 0;
  for (const auto& prior : {PriorSpec::rademacher(), PriorSpec::three_point(3.0)}) {
    CumulantTable table(prior);
    for (const auto& a : small) {
      const double k = table.kappa(a, lambda, 4);
      const double ko = kappa_oracle(a, prior, lambda, 4);
      worst_oracle = std::max(worst_oracle, std::fabs(k - ko));
      for (int m : {2, 3})
        worst_rank = std::max(worst_rank, std::fabs(kappa_oracle(a, prior, lambda, 4, m) - m * ko));
    }
    for (const auto& a : bad_pool) {
      if (is_good_sw(a)) continue;
      ++bad;
      if (table.kappa(a, lambda, 5) != 0.0) ++nonzero_bad;
    }
  }
  r.pass = worst_oracle <= 1e-12 && worst_rank <= 1e-12 && nonzero_bad == 0;
  r.detail = std::to_string(small.size()) + " alpha x 2 priors: |kappa - oracle| <= " + num(worst_oracle) +
             ", |kappa^(m) - m kappa^(1)| <= " + num(worst_rank) + "; " + std::to_string(nonzero_bad) + " of " +
             std::to_string(bad) + " bad alpha nonzero";
  return r;
}

CriterionResult c6_cumulant_bounds(const AcceptanceOptions&) {
  CriterionResult r{6, "cumulant bounds", true, "", 0};
  const double lambda = 1.5;
  const int n = 6;
  auto good = enumerate({GraphClass::GoodSW, n, 5, 0, 0, true, true});
  long long checked = 0, fails = 0;
  double worst_ratio = 0.0;
  std::string where;
  FTable ft;
  for (const auto& prior : {PriorSpec::rademacher(), PriorSpec::three_point(3.0)}) {
    CumulantTable table(prior);
    for (const auto& a : good) {
      if (a.empty()) continue;
      ++checked;
      const auto st = graph_stats(a);
      const double k = std::fabs(table.kappa(a, lambda, n));
      const double rhs = kappa_bound_rhs(a, prior, lambda, n);
      const double f = static_cast<double>(ft.f(a));
      const double fmax = std::pow(2.0 * a.size(), st.excess);
      const int delta = excess_degree(a.bar());
      const double ratio = rhs > 0 ? k / rhs : (k > 0 ? 1e300 : 0.0);
      if (ratio > worst_ratio) worst_ratio = ratio, where = a.canonical();
      if (k > rhs * (1 + 1e-12) || f > fmax || delta > 6 * st.excess) ++fails;
    }
  }
  r.pass = fails == 0 && checked > 0;
  r.detail = std::to_string(checked) + " (alpha, prior) pairs, " + std::to_string(fails) +
             " failures, max |kappa|/rhs " + num(worst_ratio) + (r.pass ? "" : " at " + where);
  return r;
}

CriterionResult c7_counting(const AcceptanceOptions&) {
  CriterionResult r{7, "counting", true, "", 0};
  std::ostringstream detail;
  int saw_fail = 0;
  for (int n = 3; n <= 8; ++n)
    for (int D = 2; D <= 4; ++D) {
      auto got = enumerate({GraphClass::SawSD, n, 0, 0, D, false, false}).size();
      if (got != falling_factorial(n - 2, D - 1)) ++saw_fail;
    }
  int tree_fail = 0;
  for (int v = 1; v <= 6; ++v) {
    long long expect = v <= 2 ? 1 : static_cast<long long>(std::llround(std::pow(v, v - 2)));
    if (count_spanning_trees(v) != expect) ++tree_fail;
  }
  int good_fail = 0;
  long long good_checked = 0;
  for (int n = 2; n <= 7; ++n) {
    std::map<std::pair<int, int>, long long> tally;
    for (const auto& a : enumerate({GraphClass::GoodSW, n, 5, 0, 0, true, true}))
      if (!a.empty()) ++tally[{a.size(), a.vertex_count()}];
    for (const auto& [dv, count] : tally) {
      const auto [d, v] = dv;
      const double bound = std::pow(n, v - 2) * std::pow(2.0 * d, 5.0 * (d - v + 1));
      ++good_checked;
      if (count > bound) ++good_fail;
    }
  }
  int conn_fail = 0;
  long long conn_checked = 0;
  for (int n = 1; n <= 6; ++n) {
    GraphClassSpec spec{GraphClass::ConnectedRooted, n, 5, 0, 0, true, true};
    for (int v = 1; v <= std::min(4, n); ++v)
      for (int k = 0; k <= 2; ++k) {
        const int d = v - 1 + k;
        if (d < 1) continue;
        const long long count = count_by_profile(spec, d, v);
        const double bound = static_cast<double>(binomial(n - 1, v - 1)) * std::pow(v, v - 2) *
                             static_cast<double>(binomial(v * (v + 1) / 2 + k - 1, k));
        ++conn_checked;
        if (count > bound) ++conn_fail;
      }
  }
  r.pass = saw_fail + tree_fail + good_fail + conn_fail == 0;
  detail << "saw mismatches " << saw_fail << "/18, spanning-tree mismatches " << tree_fail << "/6, good-count violations "
         << good_fail << "/" << good_checked << ", connected-count violations " << conn_fail << "/" << conn_checked;
  r.detail = detail.str();
  return r;
}

CriterionResult c8_sbm(const AcceptanceOptions&) {
  CriterionResult r{8, "sbm formulas", true, "", 0};
  std::ostringstream detail;
  double path_err = 0.0;
  for (const auto& base : {sbm_symmetric(10, 3.0, 1.0), sbm_three(10)}) {
    auto sp = sbm_spectral(base);
    for (int t = 1; t <= 4; ++t) {
      MultiGraph path;
      int prev = 1;
      for (int s = 1; s < t; ++s) {
        path.add(prev, s + 2);
        prev = s + 2;
      }
      path.add(std::min(prev, 2), std::max(prev, 2));
      Eigen::MatrixXd Bt = Eigen::MatrixXd::Identity(base.q, base.q);
      for (int s = 0; s < t; ++s) Bt = Bt * sp.B;
      for (int k = 0; k < base.q; ++k)
        for (int l = 0; l < base.q; ++l) {
          const double expect =
              std::pow(sp.d / base.n, t) * Bt(k, l) * std::sqrt(base.pi[k] * base.pi[l]);
          path_err = std::max(path_err, std::fabs(c_sbm(path, k, l, base) - expect));
        }
    }
  }
  bool ok = path_err <= 1e-12;
  detail << "path c error " << num(path_err);
  for (const auto& base : {sbm_symmetric(6, 3.0, 1.0), sbm_three(6)}) {
    auto rep = sbm_inequalities(base, 4, 5, 5);
    const double tol = -1e-12;
    const bool this_ok = rep.crucial_estimate >= tol && rep.bound_M >= tol && rep.M_self_nonneg >= 0.0 &&
                         rep.d_alpha >= tol && rep.M_lower >= tol && rep.tree_identity <= 1e-12;
    ok = ok && this_ok;
    detail << "; q=" << base.q << ": slacks crucial " << num(rep.crucial_estimate) << ", bound:M " << num(rep.bound_M)
           << ", d:alpha " << num(rep.d_alpha) << ", M:lower " << num(rep.M_lower) << ", tree identity err "
           << num(rep.tree_identity);
  }
  r.pass = ok;
  r.detail = detail.str();
  return r;
}

struct McCheck {
  std::string label;
  double z = 0.0;
};

double zscore(double est, double target, double se) { return se > 0 ? std::fabs(est - target) / se : (est == target ? 0.0 : 1e300); }

CriterionResult c9_first_moments(const AcceptanceOptions& opt) {
  CriterionResult r{9, "estimator first moments", true, "", 0};
  std::vector<EstimatorSpec> specs;
  specs.push_back({EstimatorKind::TreeSubmatrix, 0, 0, SubmatrixParams{8, 1.0, 0.4}});
  for (int m : {1, 2}) {
    WignerParams w;
    w.n = 150;
    w.m = m;
    w.lambda = 4.0;
    specs.push_back({EstimatorKind::SawWigner, 0, 3, w});
  }
  specs.push_back({EstimatorKind::SawSbm, 0, 2, sbm_symmetric(100, 3.0, 1.0)});
  std::ostringstream detail;
  double worst = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto mc = mc_correlation(specs[i], opt.mc_trials, opt.seed + 9000 + i);
    const double exact = first_moment(specs[i]);
    const double z = zscore(mc.Efx, exact, mc.Efx_se);
    worst = std::max(worst, z);
    detail << estimator_kind_name(specs[i].kind) << " z=" << num(z) << "; ";
  }
  SubmatrixParams tp{6, 1.0, 0.4};
  auto exact2 = exact_second_moment_tree(tp, 0);
  auto mc2 = mc_correlation({EstimatorKind::TreeSubmatrix, 0, 0, tp}, opt.mc_trials, opt.seed + 9100);
  const double z2 = zscore(mc2.Ef2, exact2.exact, mc2.Ef2_se);
  worst = std::max(worst, z2);
  detail << "tree second moment z=" << num(z2);
  r.pass = worst <= 4.0;
  r.detail = detail.str();
  return r;
}

CriterionResult c10_separation(const AcceptanceOptions& opt) {
  CriterionResult r{10, "threshold separation", true, "", 0};
  std::ostringstream detail;
  WignerParams lo, hi;
  lo.n = hi.n = 150;
  lo.lambda = 0.5;
  hi.lambda = 2.0;
  auto mlo = mc_correlation({EstimatorKind::SawWigner, 0, 3, lo}, opt.mc_trials, opt.seed + 10000);
  auto mhi = mc_correlation({EstimatorKind::SawWigner, 0, 3, hi}, opt.mc_trials, opt.seed + 10001);
  const double se = std::sqrt(mlo.corr_se * mlo.corr_se + mhi.corr_se * mhi.corr_se);
  const double sep = (mhi.corr - mlo.corr) / se;
  const bool sep_ok = sep >= 4.0;
  detail << "wigner corr " << num(mhi.corr) << " vs " << num(mlo.corr) << " (" << num(sep) << " combined SE)";

  const double s1 = ks_series(1.0, 20), s15 = ks_series(1.5, 20);
  const bool ks_ok = s1 <= 20.0 && s15 >= std::pow(1.5, 20) / 3.0;
  detail << "; ks sums " << num(s1) << " (<= 20), " << num(s15) << " (>= " << num(std::pow(1.5, 20) / 3.0) << ")";

  auto ratio_test = [](double lambda) {
    const double t199 = wigner_envelope_sum(199, lambda, 1, 1) - wigner_envelope_sum(198, lambda, 1, 1);
    const double t200 = wigner_envelope_sum(200, lambda, 1, 1) - wigner_envelope_sum(199, lambda, 1, 1);
    return t200 / t199;
  };
  const double r09 = ratio_test(0.9), r11 = ratio_test(1.1);
  const double s100 = wigner_envelope_sum(100, 0.9, 1, 1), s200 = wigner_envelope_sum(200, 0.9, 1, 1);
  const double limit = 0.9 / (1.0 - 0.9);
  const bool env_ok = r09 < 1.0 && r11 > 1.0 && std::fabs(s200 - limit) < 1e-6 && s200 - s100 < 1e-3 &&
                      wigner_envelope_sum(200, 1.1, 1, 1) > 1e3 * wigner_envelope_sum(100, 1.1, 1, 1);
  detail << "; envelope term ratios " << num(r09) << " (lambda 0.9), " << num(r11) << " (lambda 1.1)";
  r.pass = sep_ok && ks_ok && env_ok;
  r.detail = detail.str();
  return r;
}

CriterionResult c11_path(const AcceptanceOptions& opt) {
  CriterionResult r{11, "path moment identity", true, "", 0};
  double worst_z = 0.0, worst_exact = 0.0;
  int idx = 0;
  for (const auto& prior : {PriorSpec::rademacher(), PriorSpec::three_point(3.0)})
    for (int m : {1, 2, 4})
      for (int L = 1; L <= 3; ++L) {
        const double formula = path_moment_formula(L, m, prior.K());
        auto mc = path_moment_mc(L, prior, m, opt.mc_trials, opt.seed + 11000 + idx++);
        worst_z = std::max(worst_z, zscore(mc.mean, formula, mc.se));
        if (prior.name() == "rademacher")
          worst_exact = std::max(worst_exact, std::fabs(path_moment_exact(L, prior, m) - formula) / formula);
      }
  r.pass = worst_z <= 4.0 && worst_exact <= 1e-12;
  r.detail = "18 (prior, m, L) cases, max z " + num(worst_z) + ", rademacher exact relative error " + num(worst_exact);
  return r;
}

CriterionResult c12_reproducible(const AcceptanceOptions& opt) {
  CriterionResult r{12, "byte reproducibility", true, "", 0};
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"wigner-estimate",
       R"({"model":"wigner","params":{"n":40,"lambda":1.0},"tasks":["analytic","estimate"],"D":3,"trials":400,
           "grid":{"lambda":[0.5,1.0,2.0]}})"},
      {"sbm-series",
       R"({"model":"sbm","params":{"n":100,"a":3,"b":1},"tasks":["analytic"],"grid":{"ks":[0.5,1.0,1.5],"D":[10,20,40]}})"},
      {"submatrix-certificate",
       R"({"model":"submatrix","params":{"n":4,"lambda":0.8,"rho":0.3},"tasks":["certificate","oracle","estimate"],
           "D":2,"k":0,"trials":300,"grid":{"rho":[0.2,0.5]}})"},
  };
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("lowdeg_repro_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const int saved_threads = omp_get_max_threads();
  std::ostringstream detail;
  for (const auto& [name, text] : configs) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      RunOptions ro;
      ro.subcommand = "sweep";
      ro.config_text = text;
      ro.seed = opt.seed;
      ro.jobs = 1;
      ro.out = (dir / (name + "_" + std::to_string(run) + ".csv")).string();
      std::ostringstream sink, err;
      const int code = run_command(ro, sink, err);
      if (code != 0) detail << name << " exit " << code << " " << err.str();
      bytes[run] = read_file(ro.out);
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    r.pass = r.pass && same;
    detail << name << (same ? " identical" : " DIFFERENT") << " (" << bytes[0].size() << " bytes); ";
  }
  omp_set_num_threads(saved_threads);
  std::error_code ec;
  fs::remove_all(dir, ec);
  r.detail = detail.str();
  return r;
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %02d %-28s %7.1fs  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream* progress) {
  using Fn = std::function<CriterionResult(const AcceptanceOptions&)>;
  const std::vector<Fn> all = {c1_fact,       c2_soundness,     c3_disconn, c4_substitution,
                               c5_cumulants,  c6_cumulant_bounds, c7_counting, c8_sbm,
                               c9_first_moments, c10_separation, c11_path,   c12_reproducible};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = all[static_cast<std::size_t>(id - 1)](opt);
    } catch (const std::exception& e) {
      res = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) *progress << format_result(res) << std::endl;
    out.push_back(res);
  }
  return out;
}

}  // namespace lowdeg
