#include "lowdeg/runner.hpp"

#include <omp.h>

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "lowdeg/acceptance.hpp"
#include "lowdeg/certificate.hpp"
#include "lowdeg/cumulants.hpp"
#include "lowdeg/estimators.hpp"
#include "lowdeg/graph.hpp"
#include "lowdeg/oracle.hpp"
#include "lowdeg/rng.hpp"
#include "lowdeg/thresholds.hpp"

namespace lowdeg {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t config_seed(const Json& cfg, const RunOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (!cfg.contains("seed")) return kDefaultSeed;
  const auto& s = cfg.at("seed");
  if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
    throw ConfigError("seed: expected a non-negative integer");
  return s.get<std::uint64_t>();
}

std::string config_out(const Json& cfg, const RunOptions& opt) {
  if (!opt.out.empty()) return opt.out;
  if (cfg.contains("out")) {
    if (!cfg.at("out").is_string()) throw ConfigError("out: expected a string");
    return cfg.at("out").get<std::string>();
  }
  return {};
}

bool get_bool(const Json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(key + ": expected true or false");
  return j.at(key).get<bool>();
}

int get_int_or(const Json& j, const std::string& key, int fallback) {
  return j.contains(key) ? get_int(j, key, "config") : fallback;
}

long long get_ll_or(const Json& j, const std::string& key, long long fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number_integer()) return v.get<long long>();
  // Accept 1e4-style literals when they are whole numbers.
  if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) return static_cast<long long>(v.get<double>());
  throw ConfigError("config." + key + ": expected an integer");
}

std::string get_string_or(const Json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ConfigError("config." + key + ": expected a string");
  return j.at(key).get<std::string>();
}

// Labels are 1-based in configs and 0-based internally.
std::pair<int, int> sbm_labels(const Json& cfg, const ModelParams& params) {
  int k0 = get_int_or(cfg, "k0", 1) - 1, l0 = get_int_or(cfg, "l0", 1) - 1;
  if (const auto* p = std::get_if<SbmParams>(&params))
    if (k0 < 0 || k0 >= p->q || l0 < 0 || l0 >= p->q) throw ConfigError("k0/l0: labels must lie in 1..q");
  return {k0, l0};
}

std::vector<int> degree_list(const Json& cfg) {
  std::vector<int> Ds;
  if (cfg.contains("D_values")) {
    if (!cfg.at("D_values").is_array()) throw ConfigError("config.D_values: expected an array");
    for (const auto& v : cfg.at("D_values")) {
      if (!v.is_number_integer()) throw ConfigError("config.D_values: expected integers");
      Ds.push_back(v.get<int>());
    }
  } else {
    Ds.push_back(get_int(cfg, "D", "config"));
  }
  for (int D : Ds)
    if (D < 0) throw ConfigError("config.D: must be non-negative");
  return Ds;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_atomic(path, text);
}

std::string compact(const Json& j) { return j.dump(); }

// Columns shared by the estimate and sweep tables.
struct ParamCells {
  double lambda = kNan, rho = kNan, p0 = kNan, p1 = kNan, m = kNan, K = kNan, q = kNan, d = kNan, ks = kNan;
};

ParamCells param_cells(const ModelParams& params) {
  ParamCells c;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SubmatrixParams>) {
          c.lambda = p.lambda;
          c.rho = p.rho;
        } else if constexpr (std::is_same_v<T, PdsParams>) {
          c.lambda = p.lambda_sub();
          c.rho = p.rho;
          c.p0 = p.p0;
          c.p1 = p.p1;
        } else if constexpr (std::is_same_v<T, WignerParams>) {
          c.lambda = p.lambda;
          c.m = p.m;
          c.K = p.prior.K();
        } else {
          auto sp = sbm_spectral(p);
          c.lambda = sp.lambda;
          c.q = p.q;
          c.d = sp.d;
          c.ks = sp.ks;
        }
      },
      params);
  return c;
}

EstimatorKind default_estimator(const ModelParams& params) {
  switch (params.index()) {
    case 0: return EstimatorKind::TreeSubmatrix;
    case 1: return EstimatorKind::TreePds;
    case 2: return EstimatorKind::SawWigner;
    default: return EstimatorKind::SawSbm;
  }
}

bool is_tree(EstimatorKind k) { return k == EstimatorKind::TreeSubmatrix || k == EstimatorKind::TreePds; }

// ---------------------------------------------------------------- subcommands

int cmd_enumerate(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  GraphClassSpec spec;
  try {
    spec.cls = parse_graph_class(get_string_or(cfg, "class", "all"));
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("class: ") + e.what());
  }
  spec.n = get_int(cfg, "n", "config");
  spec.max_edges = get_int_or(cfg, "max_edges", 0);
  spec.k = get_int_or(cfg, "k", 0);
  spec.D = get_int_or(cfg, "D", 0);
  spec.parallel = get_bool(cfg, "parallel", false);
  spec.loops = get_bool(cfg, "loops", false);
  std::ostringstream os;
  for (const auto& g : enumerate(spec)) os << g.canonical() << "\n";
  emit(os.str(), config_out(cfg, opt), out);
  return kExitOk;
}

int cmd_sample(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  auto params = parse_model(cfg);
  const auto seed = config_seed(cfg, opt);
  const auto stream = static_cast<std::uint64_t>(get_ll_or(cfg, "stream", 0));
  auto s = sample(params, seed, stream);
  const auto path = config_out(cfg, opt);
  if (path.empty()) {
    out << matrix_text(s.Y) << latent_text(params, s);
  } else {
    write_atomic(path, matrix_text(s.Y));
    write_atomic(path + ".latent", latent_text(params, s));
  }
  return kExitOk;
}

int cmd_oracle(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  auto params = parse_model(cfg);
  auto [k0, l0] = sbm_labels(cfg, params);
  OracleOptions oo;
  oo.use_indicator = get_bool(cfg, "indicator", false);
  oo.k0 = k0;
  oo.l0 = l0;
  CsvTable t{"lowdeg-oracle", 1, {"model", "params", "D", "corr", "mmse", "basis_size", "gram_rank", "Ex2"}, {}};
  const auto pj = compact(model_to_json(params)["params"]);
  for (int D : degree_list(cfg)) {
    auto gs = build_gram(params, D, oo);
    auto r = exact_corr(gs);
    t.add_row({model_name(params), pj, std::to_string(D), fmt(r.corr), fmt(r.mmse), std::to_string(r.basis_size),
               std::to_string(r.gram_rank), fmt(gs.Ex2)});
  }
  emit(t.str(), config_out(cfg, opt), out);
  return kExitOk;
}

int cmd_certificate(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  auto params = parse_model(cfg);
  if (params.index() == 2) throw ConfigError("model: certificates are built for submatrix, pds and sbm");
  auto [k0, l0] = sbm_labels(cfg, params);
  const int D = get_int(cfg, "D", "config");
  auto cert = build_certificate(params, D, k0, l0);
  const double tol = cfg.contains("tolerance") ? get_double(cfg, "tolerance", "config") : 1e-9;
  Json j = model_to_json(params);
  j["D"] = D;
  j["residual"] = cert.residual;
  j["residual_all"] = cert.residual_all;
  j["bound"] = cert.bound;
  j["norm"] = cert.norm;
  j["Ex2"] = cert.Ex2;
  j["entries"] = cert.entry_count();
  bool pass = cert.pass(tol);
  if (get_bool(cfg, "oracle", false)) {
    OracleOptions oo;
    oo.use_indicator = params.index() == 3;
    oo.k0 = k0;
    oo.l0 = l0;
    double oc = exact_corr(build_gram(params, D, oo)).corr;
    j["oracle_corr"] = oc;
    pass = pass && cert.bound >= oc - tol;
  }
  j["pass"] = pass;
  if (cfg.contains("export_constraints")) {
    auto sys = cert_system(params, D, k0, l0);
    CsvTable t{"lowdeg-constraints", 1, {"beta_canonical", "gamma_canonical", "alpha_canonical", "value"}, {}};
    for (const auto& beta : sys.good) {
      auto gl = sys.gammas(beta);
      for (const auto& alpha : sys.all) {
        if (!beta.leq(alpha)) continue;
        auto row = sys.M_block(beta, alpha);
        for (std::size_t g = 0; g < gl.size(); ++g) {
          if (row[g] == 0.0) continue;
          std::string gc = params.index() == 3 ? labeling_canonical(beta, gl[g]) : gamma_canonical(gl[g]);
          t.add_row({beta.canonical(), gc, alpha.canonical(), fmt(row[g])});
        }
      }
    }
    for (const auto& alpha : sys.all) t.add_row({"", "", alpha.canonical(), fmt(sys.c(alpha))});
    write_atomic(get_string_or(cfg, "export_constraints", ""), t.str());
  }
  emit(j.dump(2) + "\n", config_out(cfg, opt), out);
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_cumulants(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  auto params = parse_model(cfg);
  const auto* wp = std::get_if<WignerParams>(&params);
  if (!wp) throw ConfigError("model: cumulants are defined for the wigner model");
  GraphClassSpec spec{GraphClass::GoodSW, wp->n, get_int(cfg, "max_edges", "config"), 0, 0, true, true};
  CumulantTable table(wp->prior);
  FTable ft;
  CsvTable t{"lowdeg-cumulants", 1, {"alpha_canonical", "kappa", "f", "bound_rhs", "pass"}, {}};
  bool all_pass = true;
  for (const auto& a : enumerate(spec)) {
    if (a.empty()) continue;
    double k = table.kappa(a, wp->lambda, wp->n, wp->m);
    double rhs = wp->m * kappa_bound_rhs(a, wp->prior, wp->lambda, wp->n);
    bool pass = std::abs(k) <= rhs * (1 + 1e-12);
    all_pass = all_pass && pass;
    t.add_row({a.canonical(), fmt(k), std::to_string(ft.f(a)), fmt(rhs), pass ? "1" : "0"});
  }
  emit(t.str(), config_out(cfg, opt), out);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

const std::vector<std::string>& estimate_columns() {
  static const std::vector<std::string> cols = {
      "model", "kind", "n", "D_or_k", "lambda", "rho", "p0", "p1", "m", "K", "q", "d",
      "Efx_mc", "Efx_se", "Efx_analytic", "Ef2_mc", "corr_mc", "se", "trials", "seed",
      "tree_count_construct", "tree_count_printed"};
  return cols;
}

int cmd_estimate(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  EstimatorSpec spec;
  spec.params = parse_model(cfg);
  try {
    spec.kind = cfg.contains("estimator") ? parse_estimator_kind(get_string_or(cfg, "estimator", ""))
                                          : default_estimator(spec.params);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("estimator: ") + e.what());
  }
  if (is_tree(spec.kind))
    spec.k = get_int_or(cfg, "k", 0);
  else
    spec.D = get_int(cfg, "D", "config");
  try {
    validate(spec);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("estimator: ") + e.what());
  }
  const long long trials = get_ll_or(cfg, "trials", 10000);
  if (trials < 2) throw ConfigError("config.trials: need at least 2");
  const auto seed = config_seed(cfg, opt);
  auto mc = mc_correlation(spec, trials, seed);
  auto pc = param_cells(spec.params);
  const bool tree = is_tree(spec.kind);
  const int n = model_n(spec.params);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CsvTable t{"lowdeg-estimate", 1, estimate_columns(), {}};
  t.add_row({model_name(spec.params), estimator_kind_name(spec.kind), std::to_string(model_n(spec.params)),
             std::to_string(is_tree(spec.kind) ? spec.k : spec.D), fmt(pc.lambda), fmt(pc.rho), fmt(pc.p0),
             fmt(pc.p1), fmt(pc.m), fmt(pc.K), fmt(pc.q), fmt(pc.d), fmt(mc.Efx), fmt(mc.Efx_se),
             fmt(first_moment(spec)), fmt(mc.Ef2), fmt(mc.corr), fmt(mc.corr_se), std::to_string(trials),
             std::to_string(seed), fmt(tree ? tree_count_construct(n, spec.k) : nan),
             fmt(tree ? tree_count_printed(n, spec.k) : nan)});
  emit(t.str(), config_out(cfg, opt), out);
  return kExitOk;
}

Json matrix_json(const Eigen::MatrixXd& M) {
  Json a = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    a.push_back(row);
  }
  return a;
}

Json submatrix_json(double lambda, double rho, int n, int D) {
  auto a = analytic_submatrix(lambda, rho, n, D);
  Json j;
  j["lambda"] = lambda;
  j["amp_threshold"] = amp_threshold(rho, n);
  j["lower_threshold"] = a.threshold;
  j["gap_to_amp"] = lambda - amp_threshold(rho, n);
  j["gap_to_lower"] = lambda - a.threshold;
  j["below_amp"] = lambda < amp_threshold(rho, n);
  j["below_lower_threshold"] = a.below_threshold;
  j["b"] = a.b;
  j["prefactor"] = a.prefactor;
  j["sum_b"] = a.sum_b;
  j["sum_v2_b"] = a.sum_v2_b;
  j["counting_bound_sq"] = a.counting_bound_sq;
  return j;
}

int cmd_thresholds(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  auto params = parse_model(cfg);
  const int D = get_int_or(cfg, "D", 10);
  if (D < 1) throw ConfigError("config.D: must be at least 1");
  Json j = model_to_json(params);
  j["D"] = D;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SubmatrixParams>) {
          j["submatrix"] = submatrix_json(p.lambda, p.rho, p.n, D);
        } else if constexpr (std::is_same_v<T, PdsParams>) {
          j["lambda_sub"] = pds_lambda(p.p0, p.p1);
          j["eta"] = p.eta();
          j["submatrix"] = submatrix_json(pds_lambda(p.p0, p.p1), p.rho, p.n, D);
        } else if constexpr (std::is_same_v<T, WignerParams>) {
          auto a = analytic_wigner(p.lambda, p.m, p.n, D);
          j["bbp_gap"] = bbp_gap(p.lambda);
          j["below_bbp"] = a.below_bbp;
          j["envelope_sum"] = a.envelope_sum;
          j["envelope"] = a.envelope;
          j["envelope_limit"] = a.limit;
        } else {
          auto sp = sbm_spectral(p);
          j["d"] = sp.d;
          j["T"] = matrix_json(sp.T);
          j["B"] = matrix_json(sp.B);
          j["T_eigenvalues"] = sp.T_eigenvalues;
          j["B_eigenvalues"] = sp.B_eigenvalues;
          j["lambda"] = sp.lambda;
          j["ks"] = sp.ks;
          j["multiplicity"] = sp.multiplicity;
          j["degree_condition_residual"] = sp.degree_condition_residual;
          j["below_ks"] = sp.ks <= 1.0;
          Json norms = Json::array();
          for (int t = 1; t <= 10; ++t) norms.push_back(max_abs_entry_power(sp.B, t));
          j["B_power_max_entry"] = norms;
          auto a = analytic_sbm(p, D);
          j["ks_sum"] = a.ks_sum;
          j["c_prime"] = a.c_prime;
          j["ratio"] = a.ratio;
          j["geometric"] = a.geometric;
          j["chain_bound_sq"] = a.chain_bound_sq;
          j["pi_min"] = p.pi_min();
          j["Q_min"] = p.Q_min();
          j["Q_max"] = p.Q_max();
        }
      },
      params);
  emit(j.dump(2) + "\n", config_out(cfg, opt), out);
  return kExitOk;
}

int cmd_sweep(const Json& cfg, const RunOptions& opt, std::ostream& out) {
  const auto seed = config_seed(cfg, opt);
  std::vector<double> timing;
  std::string svg;
  const bool plot = opt.plot || get_bool(cfg, "plot", false);
  auto table = run_sweep(cfg, seed, &timing, plot ? &svg : nullptr);
  const auto path = config_out(cfg, opt);
  emit(table.str(), path, out);
  if (!path.empty()) {
    CsvTable tt{"lowdeg-sweep-timing", 1, {"grid_index", "wall_seconds"}, {}};
    for (std::size_t i = 0; i < timing.size(); ++i) tt.add_row({std::to_string(i), fmt(timing[i])});
    write_atomic(path + ".timing.csv", tt.str());
  }
  if (plot) {
    auto dot = path.rfind('.');
    std::string svg_path = path.empty() ? "sweep.svg" : (dot == std::string::npos ? path : path.substr(0, dot)) + ".svg";
    write_atomic(svg_path, svg);
  }
  return kExitOk;
}

int cmd_verify(const Json& cfg, std::ostream& out) {
  AcceptanceOptions ao;
  if (cfg.contains("criteria")) {
    if (!cfg.at("criteria").is_array()) throw ConfigError("config.criteria: expected an array of integers");
    for (const auto& c : cfg.at("criteria")) {
      if (!c.is_number_integer() || c.get<int>() < 1 || c.get<int>() > kCriterionCount)
        throw ConfigError("config.criteria: ids must lie in 1.." + std::to_string(kCriterionCount));
      ao.only.push_back(c.get<int>());
    }
  }
  ao.mc_trials = get_ll_or(cfg, "trials", ao.mc_trials);
  if (ao.mc_trials < 100) throw ConfigError("config.trials: need at least 100");
  if (cfg.contains("seed")) ao.seed = cfg.at("seed").get<std::uint64_t>();
  auto results = run_acceptance(ao, &out);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  out << (ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- sweep

struct Axis {
  std::string name;
  std::vector<double> values;
};

const std::map<std::string, std::set<std::string>>& axis_names() {
  static const std::map<std::string, std::set<std::string>> names = {
      {"submatrix", {"n", "lambda", "rho", "D", "k", "trials"}},
      {"pds", {"n", "rho", "p0", "p1", "D", "k", "trials"}},
      {"wigner", {"n", "lambda", "m", "K", "D", "trials"}},
      {"sbm", {"n", "a", "b", "ks", "D", "trials"}},
  };
  return names;
}

bool is_integer_axis(const std::string& a) { return a == "n" || a == "m" || a == "D" || a == "k" || a == "trials"; }

struct PointResult {
  std::vector<std::string> cells;
  std::map<std::string, double> values;
  std::map<std::string, double> axis_values;
};

}  // namespace

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) { return CounterRng(seed, index).next_u64(); }

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "grid_index", "stream", "model", "n", "lambda", "rho", "p0", "p1", "m", "K", "q", "d", "ks", "D", "k",
      "estimator", "below_amp", "below_bbp", "below_ks", "analytic_bound", "ks_sum", "cert_bound", "cert_residual",
      "oracle_corr", "Efx_mc", "Efx_se", "Efx_analytic", "Ef2_mc", "corr_mc", "corr_se", "trials", "seed",
      "point_seed", "status", "error"};
  return cols;
}

CsvTable run_sweep(const Json& cfg, std::uint64_t seed, std::vector<double>* timing, std::string* svg) {
  if (!cfg.contains("model") || !cfg.at("model").is_string()) throw ConfigError("model: missing or not a string");
  const auto model = cfg.at("model").get<std::string>();
  if (!axis_names().count(model)) throw ConfigError("model: unknown model '" + model + "'");
  if (!cfg.contains("params") || !cfg.at("params").is_object()) throw ConfigError("params: missing or not an object");

  std::vector<Axis> axes;
  if (cfg.contains("grid")) {
    const auto& g = cfg.at("grid");
    if (!g.is_object()) throw ConfigError("grid: expected an object mapping axis names to value lists");
    for (auto it = g.begin(); it != g.end(); ++it) {
      if (!axis_names().at(model).count(it.key()))
        throw ConfigError("grid." + it.key() + ": not a valid axis for model " + model);
      if (!it.value().is_array() || it.value().empty())
        throw ConfigError("grid." + it.key() + ": expected a non-empty array of numbers");
      Axis a{it.key(), {}};
      for (const auto& v : it.value()) {
        if (!v.is_number()) throw ConfigError("grid." + it.key() + ": expected numbers");
        double x = v.get<double>();
        if (is_integer_axis(a.name) && std::floor(x) != x) throw ConfigError("grid." + it.key() + ": expected integers");
        a.values.push_back(x);
      }
      axes.push_back(std::move(a));
    }
  }
  const long long cap = get_ll_or(cfg, "grid_cap", kDefaultGridCap);
  long long total = 1;
  for (const auto& a : axes) {
    total *= static_cast<long long>(a.values.size());
    if (total > cap) throw ConfigError("grid: more than " + std::to_string(cap) + " points (grid_cap)");
  }

  std::set<std::string> tasks;
  if (cfg.contains("tasks")) {
    if (!cfg.at("tasks").is_array()) throw ConfigError("tasks: expected an array");
    for (const auto& t : cfg.at("tasks")) {
      if (!t.is_string()) throw ConfigError("tasks: expected strings");
      auto s = t.get<std::string>();
      if (s != "analytic" && s != "estimate" && s != "oracle" && s != "certificate")
        throw ConfigError("tasks: unknown task '" + s + "' (analytic, estimate, oracle, certificate)");
      tasks.insert(s);
    }
  } else {
    tasks.insert("analytic");
  }
  const int base_D = get_int_or(cfg, "D", 2);
  const int base_k = get_int_or(cfg, "k", 0);
  const long long base_trials = get_ll_or(cfg, "trials", 10000);
  const int k0 = get_int_or(cfg, "k0", 1) - 1, l0 = get_int_or(cfg, "l0", 1) - 1;
  std::optional<EstimatorKind> kind;
  if (cfg.contains("estimator")) {
    try {
      kind = parse_estimator_kind(get_string_or(cfg, "estimator", ""));
    } catch (const ValidationError& e) {
      throw ConfigError(std::string("estimator: ") + e.what());
    }
  }
  // Parse the first grid point up front so misspelled or missing fields fail
  // fast with exit code 2 instead of producing a column of error records.
  {
    Json first = cfg;
    for (const auto& a : axes) {
      if (a.name == "D" || a.name == "k" || a.name == "trials" || a.name == "ks") continue;
      if (a.name == "K")
        first["params"]["prior"] = Json{{"name", "three-point"}, {"K", a.values.front()}};
      else if (is_integer_axis(a.name))
        first["params"][a.name] = static_cast<int>(a.values.front());
      else
        first["params"][a.name] = a.values.front();
    }
    (void)parse_model(first);
  }

  std::vector<PointResult> results(static_cast<std::size_t>(total));
  std::vector<double> wall(static_cast<std::size_t>(total), 0.0);

#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < total; ++idx) {
    const double t0 = omp_get_wtime();
    PointResult& pr = results[static_cast<std::size_t>(idx)];
    std::map<std::string, double> av;
    long long rem = idx;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const auto sz = static_cast<long long>(axes[a].values.size());
      av[axes[a].name] = axes[a].values[static_cast<std::size_t>(rem % sz)];
      rem /= sz;
    }
    pr.axis_values = av;
    auto get = [&](const char* key, double fallback) { return av.count(key) ? av.at(key) : fallback; };

    const int D = static_cast<int>(get("D", base_D));
    const int k = static_cast<int>(get("k", base_k));
    const long long trials = static_cast<long long>(get("trials", static_cast<double>(base_trials)));
    const std::uint64_t ps = point_seed(seed, static_cast<std::uint64_t>(idx));
    std::map<std::string, std::string> cell;
    for (const auto& c : sweep_columns()) cell[c] = "nan";
    cell["grid_index"] = std::to_string(idx);
    cell["stream"] = std::to_string(idx);
    cell["model"] = model;
    cell["D"] = std::to_string(D);
    cell["k"] = std::to_string(k);
    cell["estimator"] = "none";
    cell["trials"] = tasks.count("estimate") ? std::to_string(trials) : "0";
    cell["seed"] = std::to_string(seed);
    cell["point_seed"] = std::to_string(ps);
    cell["status"] = "ok";
    cell["error"] = "";
    auto put = [&](const std::string& c, double v) {
      cell[c] = fmt(v);
      pr.values[c] = v;
    };

    try {
      Json pc = cfg;
      Json& pj = pc["params"];
      for (const auto& [name, v] : av) {
        if (name == "D" || name == "k" || name == "trials" || name == "ks") continue;
        if (name == "K")
          pj["prior"] = Json{{"name", "three-point"}, {"K", v}};
        else if (is_integer_axis(name))
          pj[name] = static_cast<int>(v);
        else
          pj[name] = v;
      }
      ModelParams params;
      try {
        params = parse_model(pc);
      } catch (const ConfigError& e) {
        throw ValidationError(e.what());
      }
      const int n = model_n(params);
      cell["n"] = std::to_string(n);
      auto cells = param_cells(params);
      put("lambda", cells.lambda);
      put("rho", cells.rho);
      put("p0", cells.p0);
      put("p1", cells.p1);
      put("m", cells.m);
      put("K", cells.K);
      put("q", cells.q);
      put("d", cells.d);
      const double ks = av.count("ks") ? av.at("ks") : cells.ks;
      put("ks", ks);
      if (params.index() <= 1) put("below_amp", cells.lambda < amp_threshold(cells.rho, n) ? 1 : 0);
      if (params.index() == 2) put("below_bbp", cells.lambda < 1.0 ? 1 : 0);
      if (params.index() == 3) put("below_ks", ks <= 1.0 ? 1 : 0);

      if (tasks.count("analytic")) {
        if (D < 1) throw ValidationError("analytic bounds need D >= 1");
        if (params.index() <= 1) {
          put("analytic_bound", std::sqrt(analytic_submatrix(cells.lambda, cells.rho, n, D).counting_bound_sq));
        } else if (params.index() == 2) {
          put("analytic_bound", analytic_wigner(cells.lambda, static_cast<int>(cells.m), n, D).envelope);
        } else {
          put("analytic_bound", std::sqrt(analytic_sbm(std::get<SbmParams>(params), D).chain_bound_sq));
          put("ks_sum", ks_series(ks, D));
        }
      }
      if (tasks.count("certificate")) {
        if (params.index() == 2) throw ValidationError("certificates are not built for the wigner model");
        auto cert = build_certificate(params, D, k0, l0);
        put("cert_bound", cert.bound);
        put("cert_residual", cert.residual);
      }
      if (tasks.count("oracle")) {
        OracleOptions oo;
        oo.use_indicator = params.index() == 3;
        oo.k0 = k0;
        oo.l0 = l0;
        oo.parallel = false;
        put("oracle_corr", exact_corr(build_gram(params, D, oo)).corr);
      }
      if (tasks.count("estimate")) {
        EstimatorSpec spec;
        spec.params = params;
        spec.kind = kind ? *kind : default_estimator(params);
        spec.k = k;
        spec.D = D;
        if (is_tree(spec.kind)) cell["D"] = std::to_string(estimator_degree(spec));
        validate(spec);
        cell["estimator"] = estimator_kind_name(spec.kind);
        auto mc = mc_correlation(spec, trials, ps, false);
        put("Efx_mc", mc.Efx);
        put("Efx_se", mc.Efx_se);
        put("Efx_analytic", first_moment(spec));
        put("Ef2_mc", mc.Ef2);
        put("corr_mc", mc.corr);
        put("corr_se", mc.corr_se);
      }
    } catch (const std::exception& e) {
      cell["status"] = "error";
      cell["error"] = e.what();
    }
    for (const auto& c : sweep_columns()) pr.cells.push_back(cell[c]);
    wall[static_cast<std::size_t>(idx)] = omp_get_wtime() - t0;
  }

  CsvTable table{"lowdeg-sweep", kSweepCsvVersion, sweep_columns(), {}};
  for (auto& r : results) table.add_row(r.cells);
  if (timing) *timing = wall;

  if (svg) {
    std::string xaxis = axes.empty() ? "grid_index" : axes.front().name;
    std::vector<PlotSeries> series;
    for (const char* col : {"corr_mc", "oracle_corr", "cert_bound", "analytic_bound", "ks_sum"}) {
      std::map<std::string, PlotSeries> groups;
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.values.count(col) || !std::isfinite(r.values.at(col))) continue;
        std::string label = col;
        for (std::size_t a = 1; a < axes.size(); ++a) label += " " + axes[a].name + "=" + fmt(r.axis_values.at(axes[a].name));
        auto& s = groups[label];
        s.name = label;
        s.x.push_back(axes.empty() ? static_cast<double>(i) : r.axis_values.at(xaxis));
        s.y.push_back(r.values.at(col));
        s.err.push_back(std::string(col) == "corr_mc" ? r.values.at("corr_se") : 0.0);
      }
      for (auto& [_, s] : groups) series.push_back(std::move(s));
    }
    std::vector<double> vlines;
    if ((xaxis == "lambda" && model == "wigner") || xaxis == "ks") vlines.push_back(1.0);
    if (xaxis == "lambda" && model == "submatrix") {
      const auto& p = cfg.at("params");
      if (p.contains("rho") && p.contains("n"))
        vlines.push_back(amp_threshold(p.at("rho").get<double>(), p.at("n").get<double>()));
    }
    *svg = svg_plot("lowdeg sweep: " + model, xaxis, "value", series, vlines);
  }
  return table;
}

int run_command(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> known = {"enumerate", "sample",    "oracle", "certificate", "cumulants",
                                              "estimate",  "thresholds", "sweep",  "verify"};
  try {
    if (!known.count(opt.subcommand)) throw ConfigError("unknown subcommand '" + opt.subcommand + "'");
    if (opt.jobs < 0) throw ConfigError("--jobs: must be positive");
    if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
    Json cfg = Json::object();
    if (opt.config_text)
      cfg = parse_json_text(*opt.config_text, "<inline>");
    else if (!opt.config_path.empty())
      cfg = load_config(opt.config_path);
    else if (opt.subcommand != "verify")
      throw ConfigError("--config is required for " + opt.subcommand);
    if (!cfg.is_object()) throw ConfigError("config: top level must be a JSON object");
    if (cfg.contains("jobs") && opt.jobs == 0) {
      int j = get_int(cfg, "jobs", "config");
      if (j < 1) throw ConfigError("config.jobs: must be positive");
      omp_set_num_threads(j);
    }

    const auto& s = opt.subcommand;
    if (s == "enumerate") return cmd_enumerate(cfg, opt, out);
    if (s == "sample") return cmd_sample(cfg, opt, out);
    if (s == "oracle") return cmd_oracle(cfg, opt, out);
    if (s == "certificate") return cmd_certificate(cfg, opt, out);
    if (s == "cumulants") return cmd_cumulants(cfg, opt, out);
    if (s == "estimate") return cmd_estimate(cfg, opt, out);
    if (s == "thresholds") return cmd_thresholds(cfg, opt, out);
    if (s == "sweep") return cmd_sweep(cfg, opt, out);
    return cmd_verify(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << " (set LOWDEG_GUARD_OVERRIDE=1 to lift)\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}

}  // namespace lowdeg
