#include "lowdeg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "lowdeg/graph.hpp"

namespace lowdeg {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw std::logic_error("CSV row for " + schema + " has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(header.size()));
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string CsvTable::str() const {
  std::ostringstream os;
  os << "# " << schema << " v" << version << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_cell(header[i]);
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  }
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp);
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte ? byte - 1 : 0), '\n'));
    throw ConfigError(origin + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
}

Json load_config(const std::string& path) { return parse_json_text(read_file(path), path); }

double get_double(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + "." + key + ": missing");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + "." + key + ": missing");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + "." + it.key() + ": unknown field");
}

std::vector<double> get_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

}  // namespace

PriorSpec parse_prior(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) {
      auto name = j.get<std::string>();
      if (name == "rademacher") return PriorSpec::rademacher();
      throw ConfigError(where + ": unknown prior '" + name + "' (use an object for three-point priors)");
    }
    if (!j.is_object()) throw ConfigError(where + ": expected a prior name or object");
    if (j.contains("points")) {
      reject_unknown(j, {"name", "points", "probs"}, where);
      std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
      if (!j.contains("probs")) throw ConfigError(where + ".probs: missing");
      return PriorSpec(name, get_vector(j.at("points"), where + ".points"), get_vector(j.at("probs"), where + ".probs"));
    }
    reject_unknown(j, {"name", "K"}, where);
    if (!j.contains("name")) throw ConfigError(where + ".name: missing");
    auto name = j.at("name").get<std::string>();
    if (name == "rademacher") return PriorSpec::rademacher();
    if (name == "three-point") return PriorSpec::three_point(get_double(j, "K", where));
    throw ConfigError(where + ".name: unknown prior '" + name + "'");
  } catch (const ValidationError& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ModelParams parse_model(const Json& config) {
  if (!config.contains("model") || !config.at("model").is_string()) throw ConfigError("model: missing or not a string");
  if (!config.contains("params") || !config.at("params").is_object())
    throw ConfigError("params: missing or not an object");
  const auto model = config.at("model").get<std::string>();
  const Json& j = config.at("params");
  const std::string w = "params";
  ModelParams out;
  if (model == "submatrix") {
    reject_unknown(j, {"n", "lambda", "rho"}, w);
    out = SubmatrixParams{get_int(j, "n", w), get_double(j, "lambda", w), get_double(j, "rho", w)};
  } else if (model == "pds") {
    reject_unknown(j, {"n", "rho", "p0", "p1"}, w);
    out = PdsParams{get_int(j, "n", w), get_double(j, "rho", w), get_double(j, "p0", w), get_double(j, "p1", w)};
  } else if (model == "wigner") {
    reject_unknown(j, {"n", "m", "lambda", "prior"}, w);
    WignerParams p;
    p.n = get_int(j, "n", w);
    p.m = j.contains("m") ? get_int(j, "m", w) : 1;
    p.lambda = get_double(j, "lambda", w);
    if (j.contains("prior")) p.prior = parse_prior(j.at("prior"), w + ".prior");
    out = p;
  } else if (model == "sbm") {
    reject_unknown(j, {"n", "q", "pi", "Q", "a", "b"}, w);
    SbmParams p;
    p.n = get_int(j, "n", w);
    if (j.contains("Q")) {
      if (j.contains("a") || j.contains("b")) throw ConfigError(w + ": give either Q or (a, b), not both");
      const Json& q = j.at("Q");
      if (!q.is_array() || q.empty()) throw ConfigError(w + ".Q: expected a square matrix");
      p.q = static_cast<int>(q.size());
      p.Q.resize(p.q, p.q);
      for (int r = 0; r < p.q; ++r) {
        auto row = get_vector(q[r], w + ".Q[" + std::to_string(r) + "]");
        if (static_cast<int>(row.size()) != p.q) throw ConfigError(w + ".Q: expected a square matrix");
        for (int c = 0; c < p.q; ++c) p.Q(r, c) = row[c];
      }
      if (j.contains("q") && get_int(j, "q", w) != p.q) throw ConfigError(w + ".q: does not match the size of Q");
    } else {
      p.q = j.contains("q") ? get_int(j, "q", w) : 2;
      if (p.q < 2) throw ConfigError(w + ".q: need at least 2 communities");
      const double a = get_double(j, "a", w), b = get_double(j, "b", w);
      p.Q = Eigen::MatrixXd::Constant(p.q, p.q, b);
      for (int k = 0; k < p.q; ++k) p.Q(k, k) = a;
    }
    if (j.contains("pi")) {
      p.pi = get_vector(j.at("pi"), w + ".pi");
      if (static_cast<int>(p.pi.size()) != p.q) throw ConfigError(w + ".pi: length must equal q");
    } else {
      p.pi.assign(p.q, 1.0 / p.q);
    }
    out = p;
  } else {
    throw ConfigError("model: unknown model '" + model + "' (submatrix, pds, wigner, sbm)");
  }
  try {
    validate(out);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  return out;
}

Json model_to_json(const ModelParams& p) {
  Json j;
  j["model"] = model_name(p);
  Json q;
  switch (p.index()) {
    case 0: {
      const auto& s = std::get<SubmatrixParams>(p);
      q["n"] = s.n;
      q["lambda"] = s.lambda;
      q["rho"] = s.rho;
      break;
    }
    case 1: {
      const auto& s = std::get<PdsParams>(p);
      q["n"] = s.n;
      q["rho"] = s.rho;
      q["p0"] = s.p0;
      q["p1"] = s.p1;
      break;
    }
    case 2: {
      const auto& s = std::get<WignerParams>(p);
      q["n"] = s.n;
      q["m"] = s.m;
      q["lambda"] = s.lambda;
      q["prior"] = {{"points", s.prior.points()}, {"probs", s.prior.probs()}, {"name", s.prior.name()}};
      break;
    }
    default: {
      const auto& s = std::get<SbmParams>(p);
      q["n"] = s.n;
      q["q"] = s.q;
      q["pi"] = s.pi;
      Json Q = Json::array();
      for (int r = 0; r < s.q; ++r) {
        Json row = Json::array();
        for (int c = 0; c < s.q; ++c) row.push_back(s.Q(r, c));
        Q.push_back(row);
      }
      q["Q"] = Q;
    }
  }
  j["params"] = q;
  return j;
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, const std::vector<double>& vlines) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      double e = i < s.err.size() && std::isfinite(s.err[i]) ? s.err[i] : 0.0;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i] - e);
      ymax = std::max(ymax, s.y[i] + e);
    }
  for (double v : vlines)
    if (std::isfinite(v)) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + (xmax - xmin) * t / 4.0, yv = ymin + (ymax - ymin) * t / 4.0;
    char xs[32], ys[32];
    std::snprintf(xs, sizeof xs, "%.3g", xv);
    std::snprintf(ys, sizeof ys, "%.3g", yv);
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">" << xs
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << ys
       << "</text>\n";
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << H / 2 << ")\">" << ylabel << "</text>\n";
  for (double v : vlines)
    if (std::isfinite(v))
      os << "<line x1=\"" << px(v) << "\" y1=\"" << T << "\" x2=\"" << px(v) << "\" y2=\"" << H - B
         << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = colors[k % 6];
    os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    os << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
      if (i < s.err.size() && std::isfinite(s.err[i]) && s.err[i] > 0)
        os << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(s.y[i] - s.err[i]) << "\" x2=\"" << px(s.x[i])
           << "\" y2=\"" << py(s.y[i] + s.err[i]) << "\" stroke=\"" << c << "\"/>\n";
    }
    os << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 16 * (k + 1) << "\" font-size=\"12\" fill=\"" << c << "\">"
       << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string matrix_text(const Eigen::MatrixXd& M) {
  std::ostringstream os;
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) os << (j ? " " : "") << fmt(M(i, j));
    os << "\n";
  }
  return os.str();
}

std::string latent_text(const ModelParams& p, const Sample& s) {
  std::ostringstream os;
  os << "# model " << model_name(p) << " seed " << s.seed << " stream " << s.stream << "\n";
  switch (p.index()) {
    case 0:
    case 1:
      os << "# theta\n";
      for (int i = 0; i < s.theta.size(); ++i) os << fmt(s.theta(i)) << "\n";
      break;
    case 2:
      os << "# U (rows)\n" << matrix_text(s.U);
      break;
    default:
      os << "# sigma (1-based labels)\n";
      for (int l : s.sigma) os << l + 1 << "\n";
  }
  return os.str();
}

}  // namespace lowdeg
