#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lowdeg/models.hpp"

namespace lowdeg {

using Json = nlohmann::ordered_json;

// Invalid configuration; the message names the offending field or line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string fmt(double v);

// A CSV table whose first line is "# <schema> v<version>", followed by the
// mandatory header row.
struct CsvTable {
  std::string schema;
  int version = 1;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string str() const;
};

// Writes to "<path>.tmp" and renames over path.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Parses JSON text; syntax errors become ConfigError with a line number.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_config(const std::string& path);

// "model" plus a "params" object. See README for the schema.
ModelParams parse_model(const Json& config);
PriorSpec parse_prior(const Json& j, const std::string& where);
Json model_to_json(const ModelParams& p);

// Typed field access with ConfigError diagnostics.
double get_double(const Json& j, const std::string& key, const std::string& where);
int get_int(const Json& j, const std::string& key, const std::string& where);

struct PlotSeries {
  std::string name;
  std::vector<double> x, y, err;
};
// Minimal line chart with optional error bars and vertical marker lines.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, const std::vector<double>& vlines = {});

// Y as whitespace-separated rows; latent variables in a sidecar file.
std::string matrix_text(const Eigen::MatrixXd& M);
std::string latent_text(const ModelParams& p, const Sample& s);

}  // namespace lowdeg
