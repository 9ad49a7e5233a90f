#include "lowdeg/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "lowdeg/basis.hpp"
#include "lowdeg/cumulants.hpp"

namespace lowdeg {

namespace {

constexpr int kMaxOracleN = 6;
constexpr int kMaxOracleD = 3;

double gaussian_entry(const MultiGraph& a, const MultiGraph& b, const std::function<double(const MultiGraph&)>& EX) {
  const double fa = static_cast<double>(graph_factorial(a));
  const double fb = static_cast<double>(graph_factorial(b));
  double total = 0.0;
  for_each_subgraph(a.intersect(b), [&](const MultiGraph& beta) {
    const double fbeta = static_cast<double>(graph_factorial(beta));
    double coef = std::sqrt(fbeta / fa) * std::sqrt(fbeta / fb) * static_cast<double>(graph_binomial(a, beta)) *
                  static_cast<double>(graph_binomial(b, beta));
    total += coef * EX(a.minus(beta).plus(b.minus(beta)));
  });
  return total;
}

// Conditional per-slot moments of (Y - centre) given one latent configuration.
struct LatentTable {
  std::vector<double> weight;             // per latent configuration
  std::vector<double> x;                  // estimand per configuration
  std::vector<std::vector<double>> m1;    // [config][slot]
  std::vector<std::vector<double>> m2;
};

int slot_index(int n, int i, int j) {
  // simple-graph slots (i < j), 1-based vertices, row-major
  int idx = 0;
  for (int r = 1; r < i; ++r) idx += n - r;
  return idx + (j - i - 1);
}

LatentTable bernoulli_table(const ModelParams& params, const OracleOptions& opt) {
  LatentTable t;
  const int n = model_n(params);
  const int slots = n * (n - 1) / 2;
  auto fill = [&](double w, double x, const std::function<double(int, int)>& prob, double centre) {
    t.weight.push_back(w);
    t.x.push_back(x);
    std::vector<double> a(slots), b(slots);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        double p = prob(i, j);
        int s = slot_index(n, i, j);
        a[s] = p - centre;
        b[s] = p * (1.0 - p) + (p - centre) * (p - centre);
      }
    t.m1.push_back(std::move(a));
    t.m2.push_back(std::move(b));
  };
  if (const auto* p = std::get_if<PdsParams>(&params)) {
    for_each_labeling(n, 2, [&](const std::vector<int>& th) {
      double w = 1.0;
      for (int v : th) w *= v ? p->rho : 1.0 - p->rho;
      if (w == 0.0) return;
      fill(w, th[0], [&](int i, int j) { return th[i - 1] && th[j - 1] ? p->p1 : p->p0; }, p->p0);
    });
  } else {
    const auto& s = std::get<SbmParams>(params);
    const double d = s.d();
    for_each_labeling(n, s.q, [&](const std::vector<int>& sg) {
      double w = 1.0;
      for (int v : sg) w *= s.pi[v];
      double x = opt.use_indicator
                     ? ((sg[0] == opt.k0) - s.pi[opt.k0]) * ((sg[1] == opt.l0) - s.pi[opt.l0])
                     : s.Q(sg[0], sg[1]) - d;
      fill(w, x, [&](int i, int j) { return s.Q(sg[i - 1], sg[j - 1]) / s.n; }, d / s.n);
    });
  }
  return t;
}

}  // namespace

std::vector<MultiGraph> oracle_basis(const ModelParams& params, int D) {
  const int n = model_n(params);
  check_guard("oracle n", n, kMaxOracleN);
  check_guard("oracle D", D, kMaxOracleD);
  const bool gaussian = params.index() == 0 || params.index() == 2;
  GraphClassSpec spec{GraphClass::All, n, D, 0, 0, gaussian, gaussian};
  return enumerate(spec);
}

GramSystem build_gram(const ModelParams& params, int D, const OracleOptions& opt) {
  validate(params);
  GramSystem gs;
  gs.basis = oracle_basis(params, D);
  const int N = static_cast<int>(gs.basis.size());
  gs.G = Eigen::MatrixXd::Zero(N, N);
  gs.c = Eigen::VectorXd::Zero(N);
  const auto& B = gs.basis;

  if (params.index() == 0 || params.index() == 2) {
    std::function<double(const MultiGraph&)> EX;
    std::function<double(const MultiGraph&)> cfun;
    if (const auto* p = std::get_if<SubmatrixParams>(&params)) {
      EX = [p](const MultiGraph& g) { return moment_X_submatrix(g, p->lambda, p->rho); };
      cfun = [p](const MultiGraph& a) { return c_submatrix(a, p->lambda, p->rho); };
      gs.Ex2 = p->rho;
    } else {
      const auto& w = std::get<WignerParams>(params);
      EX = [w](const MultiGraph& g) { return moment_X(g, w.prior, w.lambda, w.n, w.m); };
      cfun = [w](const MultiGraph& a) {
        return moment_X(a.bar(), w.prior, w.lambda, w.n, w.m) / std::sqrt(static_cast<double>(graph_factorial(a)));
      };
      gs.Ex2 = second_moment_x(params);
    }
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int a = 0; a < N; ++a) {
      gs.c(a) = cfun(B[a]);
      for (int b = a; b < N; ++b) gs.G(a, b) = gs.G(b, a) = gaussian_entry(B[a], B[b], EX);
    }
    return gs;
  }

  const int n = model_n(params);
  LatentTable t = bernoulli_table(params, opt);
  std::vector<std::vector<int>> slots(N);
  for (int a = 0; a < N; ++a)
    for (const auto& [key, m] : B[a].edges()) slots[a].push_back(slot_index(n, key.first, key.second));
  const int L = static_cast<int>(t.weight.size());
  for (int l = 0; l < L; ++l) gs.Ex2 += t.weight[l] * t.x[l] * t.x[l];
  if (const auto* s = std::get_if<SbmParams>(&params); s && opt.use_indicator)
    gs.Ex2 = second_moment_x_kl(*s, opt.k0, opt.l0);

#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int a = 0; a < N; ++a) {
    double ca = 0.0;
    for (int l = 0; l < L; ++l) {
      double r = t.weight[l] * t.x[l];
      for (int s : slots[a]) r *= t.m1[l][s];
      ca += r;
    }
    gs.c(a) = ca;
    for (int b = a; b < N; ++b) {
      std::vector<int> both, one;
      std::set_intersection(slots[a].begin(), slots[a].end(), slots[b].begin(), slots[b].end(),
                            std::back_inserter(both));
      std::set_symmetric_difference(slots[a].begin(), slots[a].end(), slots[b].begin(), slots[b].end(),
                                    std::back_inserter(one));
      double g = 0.0;
      for (int l = 0; l < L; ++l) {
        double r = t.weight[l];
        for (int s : both) r *= t.m2[l][s];
        for (int s : one) r *= t.m1[l][s];
        g += r;
      }
      gs.G(a, b) = gs.G(b, a) = g;
    }
  }
  return gs;
}

OracleResult exact_corr(const GramSystem& gs) {
  if (!(gs.Ex2 > 0.0)) throw ValidationError("exact_corr: E[x^2] must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gs.G);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  const double cutoff = 1e-10 * top;
  Eigen::VectorXd proj = es.eigenvectors().transpose() * gs.c;
  double quad = 0.0;
  int rank = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) {
      quad += proj(i) * proj(i) / ev(i);
      ++rank;
    }
  }
  OracleResult r;
  double c2 = std::clamp(quad / gs.Ex2, 0.0, 1.0);
  r.corr = std::sqrt(c2);
  r.mmse = (1.0 - c2) * gs.Ex2;
  r.basis_size = static_cast<int>(gs.basis.size());
  r.gram_rank = rank;
  return r;
}

double independent_mmse(const GramSystem& gs) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gs.G);
  cod.setThreshold(1e-10);
  Eigen::VectorXd a = cod.solve(gs.c);
  return gs.Ex2 - 2.0 * a.dot(gs.c) + a.dot(gs.G * a);
}

}  // namespace lowdeg
