#include "lowdeg/models.hpp"

#include <cmath>

#include "lowdeg/graph.hpp"
#include "lowdeg/rng.hpp"

namespace lowdeg {

namespace {

// Moments of the discrete priors used here are integers or simple rationals.
// Accumulating in long double and snapping near-integers keeps cumulant
// cancellations exact (bad graphs must give exactly zero).
double snap(long double v) {
  long double r = std::round(v);
  if (std::fabs(v - r) <= 1e-12L * std::max<long double>(1.0L, std::fabs(r))) return static_cast<double>(r);
  return static_cast<double>(v);
}

}  // namespace

PriorSpec::PriorSpec(std::string name, std::vector<double> points, std::vector<double> probs)
    : name_(std::move(name)), points_(std::move(points)), probs_(std::move(probs)) {
  if (points_.empty() || points_.size() != probs_.size()) throw ValidationError("prior: bad support");
  long double total = 0;
  for (double p : probs_) {
    if (p < 0) throw ValidationError("prior: negative probability");
    total += p;
  }
  if (std::fabs(static_cast<double>(total) - 1.0) > 1e-12) throw ValidationError("prior: probabilities must sum to 1");
  moments_.resize(kMaxOrder + 1);
  abs_moments_.resize(kMaxOrder + 1);
  for (int k = 0; k <= kMaxOrder; ++k) {
    long double m = 0, a = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      long double x = points_[i];
      long double xk = std::pow(x, k);
      m += probs_[i] * xk;
      a += probs_[i] * std::fabs(xk);
    }
    moments_[k] = snap(m);
    abs_moments_[k] = snap(a);
  }
  if (std::fabs(moments_[1]) > 1e-12) throw ValidationError("prior: mean must be 0");
  if (std::fabs(moments_[2] - 1.0) > 1e-12) throw ValidationError("prior: variance must be 1");
}

PriorSpec PriorSpec::rademacher() { return PriorSpec("rademacher", {-1.0, 1.0}, {0.5, 0.5}); }

PriorSpec PriorSpec::three_point(double K) {
  if (K < 1.0) throw ValidationError("three-point prior needs K >= 1");
  double a = std::sqrt(K);
  double p = 1.0 / (2.0 * K);
  return PriorSpec("three-point", {-a, 0.0, a}, {p, 1.0 - 2.0 * p, p});
}

double PriorSpec::moment(int k) const {
  if (k < 0 || k > kMaxOrder) throw ValidationError("prior moment order out of range");
  return moments_[k];
}

double PriorSpec::abs_moment(int k) const {
  if (k < 0 || k > kMaxOrder) throw ValidationError("prior moment order out of range");
  return abs_moments_[k];
}

double PriorSpec::M(int k) const {
  double best = 0.0;
  for (int j = 0; j <= k; ++j) best = std::max(best, abs_moment(j));
  return best;
}

double PdsParams::lambda_sub() const { return (p1 - p0) / std::sqrt(p0 * (1.0 - p0)); }
double PdsParams::eta() const { return (p1 - p0) / (p0 * (1.0 - p0)); }

double SbmParams::d() const {
  double s = 0;
  for (int k = 0; k < q; ++k)
    for (int l = 0; l < q; ++l) s += pi[k] * pi[l] * Q(k, l);
  return s;
}

double SbmParams::pi_min() const { return *std::min_element(pi.begin(), pi.end()); }
double SbmParams::Q_min() const { return Q.minCoeff(); }
double SbmParams::Q_max() const { return Q.cwiseAbs().maxCoeff(); }

double SbmParams::degree_condition_residual() const {
  double dd = d();
  double worst = 0;
  for (int k = 0; k < q; ++k) {
    double row = 0;
    for (int l = 0; l < q; ++l) row += Q(k, l) * pi[l];
    worst = std::max(worst, std::fabs(row - dd));
  }
  return worst;
}

std::string model_name(const ModelParams& p) {
  switch (p.index()) {
    case 0: return "submatrix";
    case 1: return "pds";
    case 2: return "wigner";
    default: return "sbm";
  }
}

int model_n(const ModelParams& p) {
  return std::visit([](const auto& x) { return x.n; }, p);
}

void validate(const SubmatrixParams& p) {
  if (p.n < 2) throw ValidationError("submatrix: n must be >= 2");
  if (!(p.rho >= 0.0 && p.rho <= 1.0)) throw ValidationError("submatrix: rho must lie in [0,1]");
  if (!(p.lambda >= 0.0)) throw ValidationError("submatrix: lambda must be >= 0");
}

void validate(const PdsParams& p) {
  if (p.n < 2) throw ValidationError("pds: n must be >= 2");
  if (!(p.rho >= 0.0 && p.rho <= 1.0)) throw ValidationError("pds: rho must lie in [0,1]");
  if (!(p.p0 > 0.0 && p.p0 <= p.p1 && p.p1 <= 1.0)) throw ValidationError("pds: need 0 < p0 <= p1 <= 1");
}

void validate(const WignerParams& p) {
  if (p.n < 2) throw ValidationError("wigner: n must be >= 2");
  if (p.m < 1) throw ValidationError("wigner: m must be >= 1");
  if (!(p.lambda >= 0.0)) throw ValidationError("wigner: lambda must be >= 0");
  if (std::fabs(p.prior.moment(1)) > 1e-12 || std::fabs(p.prior.moment(2) - 1.0) > 1e-12)
    throw ValidationError("wigner: prior must have mean 0 and variance 1");
}

void validate(const SbmParams& p) {
  if (p.n < 2) throw ValidationError("sbm: n must be >= 2");
  if (p.q < 2) throw ValidationError("sbm: q must be >= 2");
  if (static_cast<int>(p.pi.size()) != p.q) throw ValidationError("sbm: pi must have q entries");
  double total = 0;
  for (double x : p.pi) {
    if (!(x > 0.0)) throw ValidationError("sbm: pi entries must be positive");
    total += x;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw ValidationError("sbm: pi must sum to 1");
  if (p.Q.rows() != p.q || p.Q.cols() != p.q) throw ValidationError("sbm: Q must be q x q");
  for (int k = 0; k < p.q; ++k)
    for (int l = 0; l < p.q; ++l) {
      if (!(p.Q(k, l) > 0.0)) throw ValidationError("sbm: Q entries must be positive");
      if (p.Q(k, l) != p.Q(l, k)) throw ValidationError("sbm: Q must be symmetric");
      if (p.Q(k, l) > p.n) throw ValidationError("sbm: Q entries must be <= n");
    }
}

void validate(const ModelParams& p) {
  std::visit([](const auto& x) { validate(x); }, p);
}

Sample sample(const ModelParams& params, std::uint64_t seed, std::uint64_t stream) {
  validate(params);
  CounterRng rng(seed, stream);
  Sample s;
  s.seed = seed;
  s.stream = stream;
  const int n = model_n(params);
  s.Y = Eigen::MatrixXd::Zero(n, n);
  if (const auto* p = std::get_if<SubmatrixParams>(&params)) {
    s.theta.resize(n);
    for (int i = 0; i < n; ++i) s.theta(i) = rng.bernoulli(p->rho) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double y = p->lambda * s.theta(i) * s.theta(j) + rng.normal();
        s.Y(i, j) = s.Y(j, i) = y;
      }
  } else if (const auto* p = std::get_if<PdsParams>(&params)) {
    s.theta.resize(n);
    for (int i = 0; i < n; ++i) s.theta(i) = rng.bernoulli(p->rho) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double prob = p->p0 + (p->p1 - p->p0) * s.theta(i) * s.theta(j);
        double y = rng.bernoulli(prob) ? 1.0 : 0.0;
        s.Y(i, j) = s.Y(j, i) = y;
      }
  } else if (const auto* p = std::get_if<WignerParams>(&params)) {
    s.U.resize(n, p->m);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < p->m; ++k) s.U(i, k) = p->prior.points()[rng.categorical(p->prior.probs())];
    const double scale = std::sqrt(p->lambda / n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double y = scale * s.U.row(i).dot(s.U.row(j)) + rng.normal();
        s.Y(i, j) = s.Y(j, i) = y;
      }
  } else {
    const auto& sp = std::get<SbmParams>(params);
    s.sigma.resize(n);
    for (int i = 0; i < n; ++i) s.sigma[i] = rng.categorical(sp.pi);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double y = rng.bernoulli(sp.Q(s.sigma[i], s.sigma[j]) / n) ? 1.0 : 0.0;
        s.Y(i, j) = s.Y(j, i) = y;
      }
  }
  return s;
}

double estimand(const ModelParams& params, const Sample& s) {
  switch (params.index()) {
    case 0:
    case 1:
      return s.theta(0);
    case 2: {
      const auto& p = std::get<WignerParams>(params);
      return std::sqrt(p.lambda / p.n) * s.U.row(0).dot(s.U.row(1));
    }
    default: {
      const auto& p = std::get<SbmParams>(params);
      return p.Q(s.sigma[0], s.sigma[1]) - p.d();
    }
  }
}

double estimand_kl(const SbmParams& params, const Sample& s, int k, int l) {
  double a = (s.sigma[0] == k ? 1.0 : 0.0) - params.pi[k];
  double b = (s.sigma[1] == l ? 1.0 : 0.0) - params.pi[l];
  return a * b;
}

double second_moment_x(const ModelParams& params) {
  switch (params.index()) {
    case 0: return std::get<SubmatrixParams>(params).rho;
    case 1: return std::get<PdsParams>(params).rho;
    case 2: {
      const auto& p = std::get<WignerParams>(params);
      return p.m * p.lambda / p.n;
    }
    default: {
      const auto& p = std::get<SbmParams>(params);
      double dd = p.d(), s = 0;
      for (int k = 0; k < p.q; ++k)
        for (int l = 0; l < p.q; ++l) s += p.pi[k] * p.pi[l] * (p.Q(k, l) - dd) * (p.Q(k, l) - dd);
      return s;
    }
  }
}

double second_moment_x_kl(const SbmParams& p, int k, int l) {
  return p.pi[k] * (1.0 - p.pi[k]) * p.pi[l] * (1.0 - p.pi[l]);
}

}  // namespace lowdeg
