#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "lowdeg/io.hpp"
#include "lowdeg/runner.hpp"

using namespace lowdeg;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::string& sub, const std::string& config, int jobs = 1) {
  RunOptions o;
  o.subcommand = sub;
  o.config_text = config;
  o.jobs = jobs;
  std::ostringstream out, err;
  int code = run_command(o, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"')
        quoted = !quoted;
      else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else
        cell += c;
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t col(const std::vector<std::string>& header, const std::string& name) {
  return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
}

}  // namespace

TEST(Io, Format17Digits) {
  EXPECT_EQ(fmt(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt(std::nan("")), "nan");
  EXPECT_EQ(fmt(-INFINITY), "-inf");
}

TEST(Io, CsvHasVersionLineAndHeader) {
  CsvTable t{"demo", 3, {"a", "b"}, {}};
  t.add_row({"1", "x,y"});
  EXPECT_EQ(t.str(), "# demo v3\na,b\n1,\"x,y\"\n");
  EXPECT_THROW(t.add_row({"1"}), std::logic_error);
}

TEST(Io, AtomicWriteLeavesNoTempFile) {
  auto dir = std::filesystem::temp_directory_path() / "lowdeg_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "x.csv").string();
  write_atomic(path, "hello\n");
  EXPECT_EQ(read_file(path), "hello\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(Io, PriorParsing) {
  EXPECT_EQ(parse_prior(Json("rademacher"), "p").K(), 1.0);
  EXPECT_NEAR(parse_prior(Json::parse(R"({"name":"three-point","K":3})"), "p").K(), 3.0, 1e-12);
  EXPECT_THROW(parse_prior(Json::parse(R"({"points":[1,2],"probs":[0.5,0.5]})"), "p"), ConfigError);
}

TEST(Runner, SyntaxErrorReportsLine) {
  auto r = run("thresholds", "{\n  \"model\": \"sbm\",\n  \"params\": {\n    \"n\": 10,,\n  }\n}");
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find(":4:"), std::string::npos) << r.err;
}

TEST(Runner, FieldDiagnostics) {
  auto r = run("thresholds", R"({"model":"submatrix","params":{"n":10,"lambda":1,"rho":1.5}})");
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("rho"), std::string::npos);

  r = run("thresholds", R"({"model":"submatrix","params":{"n":10,"lambda":1,"rho":0.5,"lamda":2}})");
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("params.lamda"), std::string::npos);

  r = run("sweep", R"({"model":"wigner","params":{"n":10,"lambda":1},"grid":{"rho":[0.1]}})");
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("grid.rho"), std::string::npos);
}

TEST(Runner, GridCap) {
  auto r = run("sweep", R"({"model":"wigner","params":{"n":10,"lambda":1},"grid":{"lambda":[1,2,3],"m":[1,2]},
                 "grid_cap":5})");
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("grid_cap"), std::string::npos);
}

TEST(Runner, ThresholdsJson) {
  auto r = run("thresholds", R"({"model":"sbm","params":{"n":100,"Q":[[3,1],[1,3]]}})");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_NEAR(j["d"].get<double>(), 2.0, 1e-15);
  EXPECT_NEAR(j["lambda"].get<double>(), 0.5, 1e-12);
  EXPECT_TRUE(j["below_ks"].get<bool>());
}

TEST(Runner, WignerSweepHasOneRowPerLambda) {
  auto r = run("sweep", R"({"model":"wigner","params":{"n":30,"lambda":1},"tasks":["estimate","analytic"],"D":3,
                 "trials":200,"grid":{"lambda":[0.25,0.5,0.75,1.0,1.25,1.5,1.75,2.0]}})");
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 9u);
  const auto& h = rows[0];
  EXPECT_EQ(h, sweep_columns());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][col(h, "grid_index")], std::to_string(i - 1));
    EXPECT_EQ(rows[i][col(h, "status")], "ok");
    EXPECT_EQ(rows[i].size(), h.size());
  }
  EXPECT_EQ(rows[8][col(h, "below_bbp")], "0");
  EXPECT_EQ(rows[1][col(h, "below_bbp")], "1");
}

TEST(Runner, SbmSeriesGrowth) {
  auto r = run("sweep", R"({"model":"sbm","params":{"n":1000,"a":3,"b":1},"grid":{"ks":[0.5,1.0,1.5],"D":[10,20,40]}})");
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  const auto& h = rows[0];
  auto value = [&](int row) { return std::stod(rows[static_cast<std::size_t>(row)][col(h, "ks_sum")]); };
  // rows 1..3: ks = 0.5; 4..6: ks = 1; 7..9: ks = 1.5
  EXPECT_DOUBLE_EQ(value(4), 10.0);
  EXPECT_DOUBLE_EQ(value(5), 20.0);
  EXPECT_DOUBLE_EQ(value(6), 40.0);
  EXPECT_GT(value(9) / value(8), 1000.0);
  EXPECT_LT(value(3), 1.0);
}

TEST(Runner, GuardViolationBecomesErrorRecord) {
  unsetenv("LOWDEG_GUARD_OVERRIDE");
  auto r = run("sweep", R"({"model":"submatrix","params":{"n":4,"lambda":1,"rho":0.3},"tasks":["oracle"],
                 "grid":{"n":[4,12]},"D":1})");
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  const auto& h = rows[0];
  EXPECT_EQ(rows[1][col(h, "status")], "ok");
  EXPECT_EQ(rows[2][col(h, "status")], "error");
  EXPECT_FALSE(rows[2][col(h, "error")].empty());
}

TEST(Runner, SameSeedSameBytes) {
  const std::string cfg = R"({"model":"sbm","params":{"n":20,"a":3,"b":1},"tasks":["estimate"],"D":2,"trials":150,
                             "grid":{"a":[2,4]},"seed":9})";
  auto a = run("sweep", cfg), b = run("sweep", cfg);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto c = run("sweep", cfg, 2);
  EXPECT_EQ(a.out, c.out);  // MC reduction is serial in trial order
}

TEST(Runner, PointSeedsDiffer) {
  EXPECT_NE(point_seed(1, 0), point_seed(1, 1));
  EXPECT_EQ(point_seed(5, 3), point_seed(5, 3));
}

TEST(Runner, EstimateColumns) {
  auto r = run("estimate", R"({"model":"wigner","params":{"n":20,"lambda":2},"D":2,"trials":100,"seed":3})");
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].front(), "model");
  EXPECT_EQ(rows[1][col(rows[0], "kind")], "saw-wigner");
  EXPECT_EQ(rows[1][col(rows[0], "seed")], "3");
}

TEST(Runner, CertificateJson) {
  auto r = run("certificate", R"({"model":"sbm","params":{"n":5,"a":3,"b":1},"D":2,"oracle":true})");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_GE(j["bound"].get<double>(), j["oracle_corr"].get<double>() - 1e-9);
}

TEST(Runner, EnumerateLines) {
  auto r = run("enumerate", R"({"class":"saw-SD","n":5,"D":2})");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Runner, UnknownSubcommand) { EXPECT_EQ(run("frobnicate", "{}").code, kExitConfigError); }
