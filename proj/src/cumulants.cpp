#include "lowdeg/cumulants.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace lowdeg {

namespace {

constexpr int kMaxKappaEdges = 6;
constexpr int kMaxOracleVariables = 6;

std::vector<std::pair<int, int>> edge_copies(const MultiGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, m] : g.edges())
    for (int c = 0; c < m; ++c) out.push_back(key);
  return out;
}

}  // namespace

double moment_X_unit(const MultiGraph& gamma, const PriorSpec& prior, int m) {
  if (m < 1) throw ValidationError("rank must be >= 1");
  if (m == 1) {
    double r = 1.0;
    for (const auto& [v, deg] : gamma.degrees()) r *= prior.moment(deg);
    return r;
  }
  // Assign a rank coordinate to every edge copy; each (vertex, coordinate)
  // then contributes E pi^{degree}.
  auto edges = edge_copies(gamma);
  check_guard("rank-m moment edge copies", static_cast<long long>(edges.size()), 10);
  auto vs = gamma.vertices();
  std::map<int, int> pos;
  for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
  std::vector<int> deg(vs.size() * m, 0);
  double total = 0.0;
  std::function<void(std::size_t)> rec = [&](std::size_t e) {
    if (e == edges.size()) {
      double r = 1.0;
      for (int d : deg) {
        if (d == 0) continue;
        r *= prior.moment(d);
        if (r == 0.0) return;
      }
      total += r;
      return;
    }
    int a = pos[edges[e].first], b = pos[edges[e].second];
    for (int k = 0; k < m; ++k) {
      ++deg[a * m + k];
      ++deg[b * m + k];
      rec(e + 1);
      --deg[a * m + k];
      --deg[b * m + k];
    }
  };
  rec(0);
  return total;
}

double moment_X(const MultiGraph& gamma, const PriorSpec& prior, double lambda, int n, int m) {
  return std::pow(lambda / n, 0.5 * gamma.size()) * moment_X_unit(gamma, prior, m);
}

double CumulantTable::moment(const MultiGraph& g) {
  auto it = moment_unit_.find(g);
  if (it != moment_unit_.end()) return it->second;
  double v = moment_X_unit(g, prior_, 1);
  moment_unit_.emplace(g, v);
  return v;
}

double CumulantTable::unit(const MultiGraph& alpha) {
  auto it = kappa_unit_.find(alpha);
  if (it != kappa_unit_.end()) return it->second;
  check_guard("kappa |alpha|", alpha.size(), kMaxKappaEdges);
  double value = moment(alpha.bar());
  for_each_subgraph(alpha, [&](const MultiGraph& beta) {
    if (beta == alpha) return;
    value -= static_cast<double>(graph_binomial(alpha, beta)) * moment(alpha.minus(beta)) * unit(beta);
  });
  kappa_unit_.emplace(alpha, value);
  return value;
}

double CumulantTable::kappa(const MultiGraph& alpha, double lambda, int n, int m) {
  return m * std::pow(lambda / n, 0.5 * (alpha.size() + 1)) * unit(alpha);
}

double kappa(const MultiGraph& alpha, const PriorSpec& prior, double lambda, int n, int m) {
  CumulantTable table(prior);
  return table.kappa(alpha, lambda, n, m);
}

double kappa_oracle(const MultiGraph& alpha, const PriorSpec& prior, double lambda, int n, int m) {
  std::vector<std::pair<int, int>> vars{{1, 2}};
  for (const auto& e : edge_copies(alpha)) vars.push_back(e);
  const int N = static_cast<int>(vars.size());
  check_guard("cumulant oracle variables", N, kMaxOracleVariables);

  std::map<MultiGraph, double> cache;
  auto block_moment = [&](const std::vector<int>& members) {
    MultiGraph g;
    for (int i : members) g.add(vars[i].first, vars[i].second);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    double v = moment_X_unit(g, prior, m);
    cache.emplace(g, v);
    return v;
  };

  // Restricted growth strings enumerate set partitions.
  std::vector<int> block(N, 0);
  double total = 0.0;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == N) {
      std::vector<std::vector<int>> blocks(used);
      for (int v = 0; v < N; ++v) blocks[block[v]].push_back(v);
      double prod = 1.0;
      for (const auto& b : blocks) {
        prod *= block_moment(b);
        if (prod == 0.0) return;
      }
      double sign = (used - 1) % 2 == 0 ? 1.0 : -1.0;
      total += sign * static_cast<double>(factorial(used - 1)) * prod;
      return;
    }
    for (int b = 0; b <= used && b < N; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return std::pow(lambda / n, 0.5 * N) * total;
}

std::uint64_t FTable::f(const MultiGraph& alpha) {
  if (!is_good_sw(alpha)) throw ValidationError("f is defined on good graphs only: " + alpha.canonical());
  if (alpha.empty()) return 1;
  auto it = memo_.find(alpha);
  if (it != memo_.end()) return it->second;
  std::uint64_t total = 0;
  for_each_subgraph(alpha, [&](const MultiGraph& beta) {
    if (beta == alpha || !is_good_sw(beta)) return;
    total += checked_mul(graph_binomial(alpha, beta), f(beta));
  });
  memo_.emplace(alpha, total);
  return total;
}

std::uint64_t f_value(const MultiGraph& alpha) {
  FTable t;
  return t.f(alpha);
}

double kappa_bound_rhs(const MultiGraph& alpha, const PriorSpec& prior, double lambda, int n) {
  return std::pow(lambda / n, 0.5 * (alpha.size() + 1)) * static_cast<double>(f_value(alpha)) *
         prior.M(excess_degree(alpha.bar()));
}

double wigner_envelope_sum(int D, double lambda, int m, int n) {
  double s = 0.0, p = 1.0;
  for (int d = 1; d <= D; ++d) {
    p *= lambda;
    s += p;
  }
  return static_cast<double>(m) / n * s;
}

WignerCorrBound wigner_corr_bound(int D, double lambda, int m, int n, const PriorSpec& prior) {
  WignerCorrBound out;
  out.envelope = std::sqrt(wigner_envelope_sum(D, lambda, m, n));
  CumulantTable table(prior);
  GraphClassSpec spec{GraphClass::GoodSW, n, D, 0, 0, true, true};
  for (const auto& alpha : enumerate(spec)) {
    double k = table.kappa(alpha, lambda, n, m);
    out.exact_sum += k * k / static_cast<double>(graph_factorial(alpha));
    ++out.good_count;
  }
  const double ex2 = m * lambda / n;
  out.exact_corr_bound = ex2 > 0 ? std::sqrt(out.exact_sum / ex2) : 0.0;
  return out;
}

}  // namespace lowdeg
