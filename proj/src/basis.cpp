#include "lowdeg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace lowdeg {

namespace {

constexpr int kMaxLatentVertices = 10;

int vertex_union_size_with(const MultiGraph& g, int extra) {
  int v = g.vertex_count();
  return g.has_vertex(extra) ? v : v + 1;
}

std::vector<int> merge_vertices(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

int position(const std::vector<int>& vs, int v) {
  return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
}

void require_open_unit(double rho, const char* who) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError(std::string(who) + ": rho must lie strictly in (0,1)");
}

}  // namespace

std::string gamma_canonical(const std::vector<int>& gamma) {
  std::ostringstream os;
  for (std::size_t i = 0; i < gamma.size(); ++i) os << (i ? ";" : "") << gamma[i];
  return os.str();
}

std::string labeling_canonical(const MultiGraph& beta, const std::vector<int>& labels) {
  std::ostringstream os;
  auto vs = beta.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ";" : "") << vs[i] << ':' << labels[i] + 1;
  return os.str();
}

double hermite(int k, double z) {
  if (k < 0) throw ValidationError("hermite: negative degree");
  if (k == 0) return 1.0;
  double prev = 1.0, cur = z;
  for (int j = 1; j < k; ++j) {
    double next = (z * cur - std::sqrt(static_cast<double>(j)) * prev) / std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_graph(const MultiGraph& alpha, const Eigen::MatrixXd& Y) {
  double r = 1.0;
  for (const auto& [key, m] : alpha.edges()) r *= hermite(m, Y(key.first - 1, key.second - 1));
  return r;
}

double monomial(const MultiGraph& alpha, const Eigen::MatrixXd& M) {
  double r = 1.0;
  for (const auto& [key, m] : alpha.edges()) r *= std::pow(M(key.first - 1, key.second - 1), m);
  return r;
}

double hermite_expansion(const MultiGraph& alpha, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z) {
  double total = 0.0;
  const double af = static_cast<double>(graph_factorial(alpha));
  for_each_subgraph(alpha, [&](const MultiGraph& beta) {
    double coef = std::sqrt(static_cast<double>(graph_factorial(beta)) / af) *
                  static_cast<double>(graph_binomial(alpha, beta));
    total += coef * monomial(alpha.minus(beta), X) * hermite_graph(beta, Z);
  });
  return total;
}

void for_each_labeling(int count, int q, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> lab(count, 0);
  while (true) {
    fn(lab);
    int p = count - 1;
    while (p >= 0 && lab[p] == q - 1) lab[p--] = 0;
    if (p < 0) break;
    ++lab[p];
  }
}

std::vector<std::vector<int>> subsets_of(const std::vector<int>& vs) {
  std::vector<std::vector<int>> out;
  const std::size_t n = vs.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(vs[i]);
    out.push_back(s);
  }
  return out;
}

// ---------------- planted submatrix ----------------

double moment_X_submatrix(const MultiGraph& gamma, double lambda, double rho) {
  return std::pow(lambda, gamma.size()) * std::pow(rho, gamma.vertex_count());
}

double c_submatrix(const MultiGraph& alpha, double lambda, double rho) {
  return std::pow(lambda, alpha.size()) * std::pow(rho, vertex_union_size_with(alpha, 1)) /
         std::sqrt(static_cast<double>(graph_factorial(alpha)));
}

double M_submatrix(const BasisIndex& idx, const MultiGraph& alpha, double lambda, double rho) {
  require_open_unit(rho, "M_submatrix");
  if (!idx.beta.leq(alpha)) return 0.0;
  MultiGraph rest = alpha.minus(idx.beta);
  for (int v : idx.gamma)
    if (!rest.has_vertex(v)) return 0.0;
  double r = std::sqrt(static_cast<double>(graph_factorial(idx.beta)) / static_cast<double>(graph_factorial(alpha)));
  r *= static_cast<double>(graph_binomial(alpha, idx.beta));
  r *= std::pow(lambda, rest.size()) * std::pow(rho, rest.vertex_count());
  r *= std::pow((1.0 - rho) / rho, 0.5 * static_cast<double>(idx.gamma.size()));
  return r;
}

double mean_phi_submatrix(const MultiGraph& alpha, double lambda, double rho) {
  return moment_X_submatrix(alpha, lambda, rho) / std::sqrt(static_cast<double>(graph_factorial(alpha)));
}

// ---------------- planted dense subgraph ----------------

double c_pds(const MultiGraph& alpha, const PdsParams& p) {
  return std::pow(p.rho, vertex_union_size_with(alpha, 1)) * std::pow(p.p1 - p.p0, alpha.size());
}

double mean_phi_pds(const MultiGraph& alpha, const PdsParams& p) {
  // E (Y - p0)^alpha = (p1 - p0)^|alpha| P(theta = 1 on V(alpha))
  return std::pow(p.p1 - p.p0, alpha.size()) * std::pow(p.rho, alpha.vertex_count());
}

double M_pds(const BasisIndex& idx, const MultiGraph& alpha, const PdsParams& p) {
  if (!(p.p0 > 0.0 && p.p0 < 1.0)) throw ValidationError("M_pds: p0 must lie in (0,1)");
  if (!idx.gamma.empty()) require_open_unit(p.rho, "M_pds");
  if (!idx.beta.leq(alpha)) return 0.0;
  auto vs = merge_vertices(alpha.vertices(), idx.gamma);
  for (int v : idx.gamma)
    if (!alpha.has_vertex(v)) return 0.0;
  check_guard("M_pds latent vertices", static_cast<long long>(vs.size()), kMaxLatentVertices);
  // p1 = 1 makes the planted-edge normalizer vanish; use the continuity limit.
  const double p1 = p.p1 >= 1.0 ? 1.0 - std::numeric_limits<double>::epsilon() : p.p1;
  const double gnorm = idx.gamma.empty() ? 1.0 : std::sqrt(p.rho * (1.0 - p.rho));
  const int V = static_cast<int>(vs.size());
  double total = 0.0;
  for_each_labeling(V, 2, [&](const std::vector<int>& th) {
    double w = 1.0;
    for (int i = 0; i < V; ++i) w *= th[i] ? p.rho : 1.0 - p.rho;
    if (w == 0.0) return;
    for (int v : idx.gamma) w *= (th[position(vs, v)] - p.rho) / gnorm;
    for (const auto& [key, m] : alpha.edges()) {
      bool planted = th[position(vs, key.first)] && th[position(vs, key.second)];
      double pe = planted ? p1 : p.p0;
      if (idx.beta.mult(key.first, key.second) > 0)
        w *= std::sqrt(pe * (1.0 - pe));
      else
        w *= pe - p.p0;
    }
    total += w;
  });
  return total;
}

// ---------------- stochastic block model ----------------

namespace {

double sbm_weight(const std::vector<int>& labels, const SbmParams& p) {
  double w = 1.0;
  for (int l : labels) w *= p.pi[l];
  return w;
}

// E over labels on vs of w(labels) * fn(labels).
double sbm_expect(const std::vector<int>& vs, const SbmParams& p,
                  const std::function<double(const std::vector<int>&)>& fn) {
  check_guard("SBM latent vertices", static_cast<long long>(vs.size()), kMaxLatentVertices);
  double total = 0.0;
  for_each_labeling(static_cast<int>(vs.size()), p.q,
                    [&](const std::vector<int>& lab) { total += sbm_weight(lab, p) * fn(lab); });
  return total;
}

double phi_given_labels(const MultiGraph& alpha, const std::vector<int>& vs, const std::vector<int>& lab,
                        const SbmParams& p) {
  const double d = p.d();
  double r = 1.0;
  for (const auto& [key, m] : alpha.edges())
    r *= (p.Q(lab[position(vs, key.first)], lab[position(vs, key.second)]) - d) / p.n;
  return r;
}

}  // namespace

double c_sbm(const MultiGraph& alpha, int k0, int l0, const SbmParams& p) {
  auto vs = merge_vertices(alpha.vertices(), {1, 2});
  return sbm_expect(vs, p, [&](const std::vector<int>& lab) {
    double x = ((lab[position(vs, 1)] == k0) - p.pi[k0]) * ((lab[position(vs, 2)] == l0) - p.pi[l0]);
    return x * phi_given_labels(alpha, vs, lab, p);
  });
}

double c_sbm_full(const MultiGraph& alpha, const SbmParams& p) {
  auto vs = merge_vertices(alpha.vertices(), {1, 2});
  const double d = p.d();
  return sbm_expect(vs, p, [&](const std::vector<int>& lab) {
    double x = p.Q(lab[position(vs, 1)], lab[position(vs, 2)]) - d;
    return x * phi_given_labels(alpha, vs, lab, p);
  });
}

double mean_phi_sbm(const MultiGraph& alpha, const SbmParams& p) {
  auto vs = alpha.vertices();
  return sbm_expect(vs, p, [&](const std::vector<int>& lab) { return phi_given_labels(alpha, vs, lab, p); });
}

std::vector<double> M_sbm_all(const MultiGraph& beta, const MultiGraph& alpha, const SbmParams& p) {
  const auto bv = beta.vertices();
  std::size_t count = 1;
  for (std::size_t i = 0; i < bv.size(); ++i) count *= static_cast<std::size_t>(p.q);
  std::vector<double> out(count, 0.0);
  if (!beta.leq(alpha)) return out;
  const auto vs = alpha.vertices();
  check_guard("SBM latent vertices", static_cast<long long>(vs.size()), kMaxLatentVertices);
  const double d = p.d();
  for_each_labeling(static_cast<int>(vs.size()), p.q, [&](const std::vector<int>& lab) {
    double w = sbm_weight(lab, p);
    std::size_t code = 0;
    for (int v : bv) {
      int l = lab[position(vs, v)];
      w /= std::sqrt(p.pi[l]);
      code = code * p.q + static_cast<std::size_t>(l);
    }
    for (const auto& [key, m] : alpha.edges()) {
      double Qe = p.Q(lab[position(vs, key.first)], lab[position(vs, key.second)]);
      if (beta.mult(key.first, key.second) > 0)
        w *= std::sqrt((Qe / p.n) * (1.0 - Qe / p.n));
      else
        w *= (Qe - d) / p.n;
    }
    out[code] += w;
  });
  return out;
}

double M_sbm(const BasisIndex& idx, const MultiGraph& alpha, const SbmParams& p) {
  auto all = M_sbm_all(idx.beta, alpha, p);
  std::size_t code = 0;
  for (int l : idx.gamma) code = code * p.q + static_cast<std::size_t>(l);
  return all.at(code);
}

double conditional_moment_phi(const MultiGraph& alpha, const std::vector<int>& W, const std::vector<int>& tau,
                              const SbmParams& p) {
  if (W.size() != tau.size()) throw ValidationError("conditional_moment_phi: |W| != |tau|");
  for (int w : W)
    if (!alpha.has_vertex(w)) throw ValidationError("conditional_moment_phi: W must lie inside V(alpha)");
  const auto vs = alpha.vertices();
  std::vector<int> free;
  for (int v : vs)
    if (std::find(W.begin(), W.end(), v) == W.end()) free.push_back(v);
  std::vector<int> lab(vs.size());
  for (std::size_t i = 0; i < W.size(); ++i) lab[position(vs, W[i])] = tau[i];
  return sbm_expect(free, p, [&](const std::vector<int>& fl) {
    for (std::size_t i = 0; i < free.size(); ++i) lab[position(vs, free[i])] = fl[i];
    return phi_given_labels(alpha, vs, lab, p);
  });
}

}  // namespace lowdeg
