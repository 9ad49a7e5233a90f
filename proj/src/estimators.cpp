#include "lowdeg/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "lowdeg/basis.hpp"
#include "lowdeg/cumulants.hpp"
#include "lowdeg/rng.hpp"
#include "lowdeg/thresholds.hpp"

namespace lowdeg {

namespace {

constexpr int kMaxTreeN = 12;
constexpr int kMaxTreeK = 2;
constexpr int kMaxPairTreeN = 9;
constexpr int kMaxPairTreeK = 1;
constexpr int kMaxSawD = 8;
constexpr long long kMaxSawPaths = 5'000'000;

bool is_tree_kind(EstimatorKind k) { return k == EstimatorKind::TreeSubmatrix || k == EstimatorKind::TreePds; }

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double cov_of(const std::vector<double>& a, const std::vector<double>& b, double ma, double mb) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size() - 1);
}

}  // namespace

EstimatorKind parse_estimator_kind(const std::string& name) {
  if (name == "tree-submatrix") return EstimatorKind::TreeSubmatrix;
  if (name == "tree-pds") return EstimatorKind::TreePds;
  if (name == "saw-wigner") return EstimatorKind::SawWigner;
  if (name == "saw-sbm") return EstimatorKind::SawSbm;
  throw ValidationError("unknown estimator kind: " + name);
}

std::string estimator_kind_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::TreeSubmatrix: return "tree-submatrix";
    case EstimatorKind::TreePds: return "tree-pds";
    case EstimatorKind::SawWigner: return "saw-wigner";
    case EstimatorKind::SawSbm: return "saw-sbm";
  }
  return "?";
}

void validate(const EstimatorSpec& spec) {
  validate(spec.params);
  const int want = spec.kind == EstimatorKind::TreeSubmatrix ? 0
                   : spec.kind == EstimatorKind::TreePds     ? 1
                   : spec.kind == EstimatorKind::SawWigner   ? 2
                                                             : 3;
  if (static_cast<int>(spec.params.index()) != want)
    throw ValidationError(estimator_kind_name(spec.kind) + " does not match model " + model_name(spec.params));
  const int n = model_n(spec.params);
  if (is_tree_kind(spec.kind)) {
    if (spec.k < 0) throw ValidationError("tree estimator needs k >= 0");
    check_guard("tree estimator n", n, kMaxTreeN);
    check_guard("tree estimator k", spec.k, kMaxTreeK);
    if (n < 2 * spec.k + 3) throw ValidationError("tree estimator needs n >= 2k + 3");
    if (spec.kind == EstimatorKind::TreePds) {
      const auto& p = std::get<PdsParams>(spec.params);
      if (!(p.p0 > 0.0 && p.p0 < 1.0)) throw ValidationError("tree-pds needs p0 in (0,1)");
    }
  } else {
    if (spec.D < 2) throw ValidationError("SAW estimator needs D >= 2");
    check_guard("SAW D", spec.D, kMaxSawD);
    if (n < spec.D + 1) throw ValidationError("SAW estimator needs n >= D + 1");
    check_guard("SAW path count", static_cast<long long>(saw_count(n, spec.D)), kMaxSawPaths);
  }
}

int estimator_degree(const EstimatorSpec& spec) { return is_tree_kind(spec.kind) ? 2 * spec.k + 2 : spec.D; }

const std::vector<MultiGraph>& tree_family(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<MultiGraph>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate({GraphClass::TreeTk, n, 0, k, 0, false, false})).first;
  return it->second;
}

double tree_count_construct(int n, int k) {
  double c = static_cast<double>(binomial(n - 1, 2)) * static_cast<double>(binomial(n - 3, k)) *
             static_cast<double>(binomial(n - 3 - k, k));
  return c * std::pow(k + 1.0, 2.0 * (k - 1));
}

double tree_count_printed(int n, int k) { return 0.5 * tree_count_construct(n, k); }

std::uint64_t saw_count(int n, int D) {
  if (D < 1 || n < 2) return 0;
  return falling_factorial(n - 2, D - 1);
}

namespace {

// Per-edge factor applied to Y entries.
std::function<double(double)> edge_factor(const EstimatorSpec& spec) {
  switch (spec.kind) {
    case EstimatorKind::TreePds: {
      const auto& p = std::get<PdsParams>(spec.params);
      const double p0 = p.p0, s = std::sqrt(p.p0 * (1.0 - p.p0));
      return [p0, s](double y) { return (y - p0) / s; };
    }
    case EstimatorKind::SawSbm: {
      const auto& p = std::get<SbmParams>(spec.params);
      const double c = p.d() / p.n;
      return [c](double y) { return y - c; };
    }
    default:
      return [](double y) { return y; };
  }
}

double saw_sum(const Eigen::MatrixXd& F, int D) {
  // F holds per-edge factors; 0-based vertex 0 is "1", vertex 1 is "2".
  const int n = static_cast<int>(F.rows());
  std::vector<char> used(n, 0);
  used[0] = used[1] = 1;
  std::function<double(int, int)> rec = [&](int cur, int left) -> double {
    if (left == 1) return F(cur, 1);
    double s = 0.0;
    for (int v = 2; v < n; ++v) {
      if (used[v]) continue;
      double w = F(cur, v);
      if (w == 0.0) continue;
      used[v] = 1;
      s += w * rec(v, left - 1);
      used[v] = 0;
    }
    return s;
  };
  return rec(0, D);
}

double tree_sum(const std::vector<MultiGraph>& family, const Eigen::MatrixXd& F) {
  double total = 0.0;
  for (const auto& g : family) {
    double r = 1.0;
    for (const auto& [key, m] : g.edges()) r *= F(key.first - 1, key.second - 1);
    total += r;
  }
  return total;
}

double evaluate_with(const EstimatorSpec& spec, const Eigen::MatrixXd& Y, const std::vector<MultiGraph>* family) {
  auto fac = edge_factor(spec);
  Eigen::MatrixXd F = Y.unaryExpr(fac);
  const int n = model_n(spec.params);
  if (is_tree_kind(spec.kind)) return tree_sum(*family, F);
  return saw_sum(F, spec.D) / static_cast<double>(saw_count(n, spec.D));
}

}  // namespace

double evaluate(const EstimatorSpec& spec, const Eigen::MatrixXd& Y) {
  validate(spec);
  const int n = model_n(spec.params);
  if (Y.rows() != n || Y.cols() != n) throw ValidationError("evaluate: Y has the wrong shape");
  const std::vector<MultiGraph>* family = is_tree_kind(spec.kind) ? &tree_family(n, spec.k) : nullptr;
  return evaluate_with(spec, Y, family);
}

double first_moment(const EstimatorSpec& spec) {
  validate(spec);
  const int D = estimator_degree(spec);
  switch (spec.kind) {
    case EstimatorKind::TreeSubmatrix: {
      const auto& p = std::get<SubmatrixParams>(spec.params);
      return tree_count_construct(p.n, spec.k) * std::pow(p.lambda, D) * std::pow(p.rho, D + 1);
    }
    case EstimatorKind::TreePds: {
      const auto& p = std::get<PdsParams>(spec.params);
      return tree_count_construct(p.n, spec.k) * std::pow(p.rho, D + 1) * std::pow(p.lambda_sub(), D);
    }
    case EstimatorKind::SawWigner: {
      const auto& p = std::get<WignerParams>(spec.params);
      return p.m * std::pow(p.lambda / p.n, 0.5 * (D + 1));
    }
    case EstimatorKind::SawSbm: {
      // d^{D+1}/n^D * E prod over the (D+1)-cycle of (Q/d - 1) = Tr((T - pi 1^T)^{D+1})
      const auto& p = std::get<SbmParams>(spec.params);
      const double d = p.d();
      Eigen::VectorXd pi(p.q);
      for (int k = 0; k < p.q; ++k) pi(k) = p.pi[k];
      Eigen::MatrixXd M = pi.asDiagonal() * p.Q / d - pi * Eigen::RowVectorXd::Ones(p.q);
      Eigen::MatrixXd P = Eigen::MatrixXd::Identity(p.q, p.q);
      for (int t = 0; t <= D; ++t) P = P * M;
      return std::pow(d, D + 1) / std::pow(static_cast<double>(p.n), D) * P.trace();
    }
  }
  return 0.0;
}

// ---------------- tree second moment ----------------

namespace {

struct PairModel {
  bool pds = false;
  double rho = 0.0;
  double lambda = 0.0;  // lambda, or lambda_sub for PDS
  double eta = 0.0;     // lambda^2, or (p1-p0)/(p0(1-p0)) for PDS
  double p0 = 0.0, p1 = 0.0;
};

PairModel pair_model(const ModelParams& params) {
  PairModel m;
  if (const auto* s = std::get_if<SubmatrixParams>(&params)) {
    m.rho = s->rho;
    m.lambda = s->lambda;
    m.eta = s->lambda * s->lambda;
  } else if (const auto* p = std::get_if<PdsParams>(&params)) {
    if (!(p->p0 > 0.0 && p->p0 < 1.0)) throw ValidationError("tree second moment: p0 must lie in (0,1)");
    m.pds = true;
    m.rho = p->rho;
    m.lambda = p->lambda_sub();
    m.eta = p->eta();
    m.p0 = p->p0;
    m.p1 = p->p1;
  } else {
    throw ValidationError("tree second moment needs submatrix or pds parameters");
  }
  return m;
}

double pair_exact(const PairModel& pm, const MultiGraph& a, const MultiGraph& b) {
  MultiGraph both = a.intersect(b);
  MultiGraph one = a.sym_diff(b);
  auto forced = one.vertices();
  std::vector<int> free;
  for (int v : both.vertices())
    if (!std::binary_search(forced.begin(), forced.end(), v)) free.push_back(v);
  // Edges in the symmetric difference vanish unless both ends are planted.
  double pre = std::pow(pm.lambda, one.size()) * std::pow(pm.rho, static_cast<double>(forced.size()));
  if (pre == 0.0) return 0.0;
  const double s0 = pm.p0 * (1.0 - pm.p0);
  auto shared_factor = [&](bool planted) {
    if (!pm.pds) return planted ? pm.eta + 1.0 : 1.0;
    double pe = planted ? pm.p1 : pm.p0;
    return (pe * (1.0 - pe) + (pe - pm.p0) * (pe - pm.p0)) / s0;
  };
  double total = 0.0;
  for_each_labeling(static_cast<int>(free.size()), 2, [&](const std::vector<int>& th) {
    double w = 1.0;
    for (int t : th) w *= t ? pm.rho : 1.0 - pm.rho;
    if (w == 0.0) return;
    auto theta = [&](int v) {
      auto it = std::lower_bound(free.begin(), free.end(), v);
      if (it != free.end() && *it == v) return th[it - free.begin()] == 1;
      return true;  // forced
    };
    for (const auto& [key, m] : both.edges()) w *= shared_factor(theta(key.first) && theta(key.second));
    total += w;
  });
  return pre * total;
}

double pair_bound(const PairModel& pm, const MultiGraph& a, const MultiGraph& b) {
  if (a == b) return std::pow(pm.eta * pm.rho + 1.0, a.size());
  MultiGraph both = a.intersect(b);
  MultiGraph one = a.sym_diff(b);
  const int mt = both.component_count();
  int bt = 0;
  for (int v : both.vertices())
    if (one.has_vertex(v)) ++bt;
  return std::pow(pm.lambda, one.size()) * std::pow(pm.rho, one.vertex_count()) *
         std::pow(pm.eta + 1.0, bt - mt) * std::pow(pm.eta * pm.rho + 1.0, both.size() - (bt - mt));
}

}  // namespace

double tree_pair_moment(const ModelParams& params, const MultiGraph& a, const MultiGraph& b) {
  return pair_exact(pair_model(params), a, b);
}

double tree_pair_bound(const ModelParams& params, const MultiGraph& a, const MultiGraph& b) {
  return pair_bound(pair_model(params), a, b);
}

TreeSecondMoment exact_second_moment_tree(const ModelParams& params, int k, bool parallel) {
  validate(params);
  const PairModel pm = pair_model(params);
  const int n = model_n(params);
  check_guard("tree second moment n", n, kMaxPairTreeN);
  check_guard("tree second moment k", k, kMaxPairTreeK);
  const auto& family = tree_family(n, k);
  const int N = static_cast<int>(family.size());
  std::vector<double> row_exact(N), row_bound(N), row_ratio(N), row_viol(N);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < N; ++i) {
    double se = 0.0, sb = 0.0, ratio = 0.0, viol = 0.0;
    for (int j = 0; j < N; ++j) {
      double e = pair_exact(pm, family[i], family[j]);
      double b = pair_bound(pm, family[i], family[j]);
      se += e;
      sb += b;
      if (b > 0) ratio = std::max(ratio, e / b);
      viol = std::max(viol, e - b);
    }
    row_exact[i] = se;
    row_bound[i] = sb;
    row_ratio[i] = ratio;
    row_viol[i] = viol;
  }
  TreeSecondMoment r;
  for (int i = 0; i < N; ++i) {
    r.exact += row_exact[i];
    r.bound_sum += row_bound[i];
    r.max_ratio = std::max(r.max_ratio, row_ratio[i]);
    r.max_violation = std::max(r.max_violation, row_viol[i]);
  }
  r.pairs = static_cast<long long>(N) * N;
  r.family_size = N;
  return r;
}

// ---------------- Monte Carlo ----------------

McResult mc_correlation(const EstimatorSpec& spec, long long trials, std::uint64_t seed, bool parallel) {
  validate(spec);
  if (trials < 2) throw ValidationError("mc_correlation needs at least 2 trials");
  const int n = model_n(spec.params);
  const std::vector<MultiGraph>* family = is_tree_kind(spec.kind) ? &tree_family(n, spec.k) : nullptr;
  std::vector<double> fx(trials), f2(trials), x2(trials);
#pragma omp parallel for schedule(static) if (parallel)
  for (long long t = 0; t < trials; ++t) {
    Sample s = sample(spec.params, seed, static_cast<std::uint64_t>(t));
    double f = evaluate_with(spec, s.Y, family);
    double x = estimand(spec.params, s);
    fx[t] = f * x;
    f2[t] = f * f;
    x2[t] = x * x;
  }
  McResult r;
  r.trials = trials;
  r.seed = seed;
  const double N = static_cast<double>(trials);
  r.Efx = mean_of(fx);
  r.Ef2 = mean_of(f2);
  r.Ex2_mc = mean_of(x2);
  const double vfx = cov_of(fx, fx, r.Efx, r.Efx);
  const double vf2 = cov_of(f2, f2, r.Ef2, r.Ef2);
  const double cfx = cov_of(fx, f2, r.Efx, r.Ef2);
  r.Efx_se = std::sqrt(vfx / N);
  r.Ef2_se = std::sqrt(vf2 / N);
  r.Ex2_se = std::sqrt(cov_of(x2, x2, r.Ex2_mc, r.Ex2_mc) / N);
  r.Ex2 = second_moment_x(spec.params);
  if (r.Ef2 > 0.0 && r.Ex2 > 0.0) {
    r.corr = r.Efx / std::sqrt(r.Ef2 * r.Ex2);
    const double ga = 1.0 / std::sqrt(r.Ef2 * r.Ex2);
    const double gb = -0.5 * r.Efx / (std::pow(r.Ef2, 1.5) * std::sqrt(r.Ex2));
    const double var = ga * ga * vfx + 2.0 * ga * gb * cfx + gb * gb * vf2;
    r.corr_se = std::sqrt(std::max(var, 0.0) / N);
  }
  return r;
}

// ---------------- spiked Wigner SAW pair moments ----------------

SawPairMoment saw_pair_moment(const MultiGraph& alpha, const MultiGraph& beta, const WignerParams& p) {
  validate(p);
  if (alpha.size() != beta.size()) throw ValidationError("saw_pair_moment: paths must have equal length");
  const int D = alpha.size();
  MultiGraph both = alpha.intersect(beta);
  MultiGraph one = alpha.sym_diff(beta);
  SawPairMoment r;
  r.shared_edges = both.size();
  for (int v : alpha.vertices())
    if (beta.has_vertex(v)) ++r.shared_vertices;
  const double c = p.lambda / p.n;
  // prod_{shared}(c <x_i,x_j>^2 + 1) expanded over subsets S of the shared edges.
  std::vector<MultiGraph::Key> shared;
  for (const auto& [key, m] : both.edges()) shared.push_back(key);
  double total = 0.0;
  const std::size_t L = shared.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
    MultiGraph g = one;
    int s = 0;
    for (std::size_t i = 0; i < L; ++i)
      if (mask & (std::size_t{1} << i)) {
        g.add(shared[i].first, shared[i].second, 2);
        ++s;
      }
    total += std::pow(c, s) * moment_X_unit(g, p.prior, p.m);
  }
  r.exact = std::pow(c, 0.5 * one.size()) * total;
  const double Km = p.prior.K() * p.m;
  const int v = r.shared_vertices, l = r.shared_edges;
  r.bound = std::pow(Km, v - l - 1) * std::pow(1.0 + Km * c, l) * std::pow(c, D - l);
  return r;
}

// ---------------- path moments ----------------

double path_moment_formula(int L, int m, double K) {
  return std::pow(static_cast<double>(m), L) * std::pow(1.0 + (K - 1.0) / m, L - 1);
}

double path_moment_exact(int L, const PriorSpec& prior, int m) {
  MultiGraph g;
  for (int i = 1; i <= L; ++i) g.add(i, i + 1, 2);
  return moment_X_unit(g, prior, m);
}

McMean path_moment_mc(int L, const PriorSpec& prior, int m, long long trials, std::uint64_t seed, bool parallel) {
  if (trials < 2) throw ValidationError("path_moment_mc needs at least 2 trials");
  std::vector<double> vals(trials);
  const auto& probs = prior.probs();
  const auto& pts = prior.points();
#pragma omp parallel for schedule(static) if (parallel)
  for (long long t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    Eigen::MatrixXd X(L + 1, m);
    for (int i = 0; i <= L; ++i)
      for (int k = 0; k < m; ++k) X(i, k) = pts[rng.categorical(probs)];
    double r = 1.0;
    for (int i = 0; i < L; ++i) {
      double ip = X.row(i).dot(X.row(i + 1));
      r *= ip * ip;
    }
    vals[t] = r;
  }
  McMean out;
  out.trials = trials;
  out.mean = mean_of(vals);
  out.se = std::sqrt(cov_of(vals, vals, out.mean, out.mean) / static_cast<double>(trials));
  return out;
}

}  // namespace lowdeg
