#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

namespace benford::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "benford-chains");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("benford_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string chain(const std::string& links, int base = 10) {
    return write("chain" + std::to_string(counter_++) + ".json",
                 R"({"base": )" + std::to_string(base) + R"(, "links": [)" + links + "]}");
  }

  fs::path dir_;
  int counter_ = 0;
};

const char* kExp3 = R"({"family": "exponential"}, {"family": "exponential"}, {"family": "exponential"})";

TEST_F(CliTest, UsageErrors) {
  auto r = invoke({});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  r = invoke({"frobnicate"});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(invoke({"bound-exp", "--n", "3", "--bogus", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bound-exp"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"bound-exp", "--n", "two"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, BoundExp) {
  const auto r = invoke({"bound-exp", "--n", "10", "--base", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["value"].get<double>() / 3.59328751633477749e-13, 1.0, 1e-12);
  EXPECT_EQ(doc["config"]["n"], 10);
  EXPECT_EQ(doc["config"]["base"], 10);
  EXPECT_LE(doc["value"].get<double>(), doc["envelope"].get<double>());
  const auto defaulted = json::parse(invoke({"bound-exp", "--n", "2"}).out);
  EXPECT_EQ(defaulted["config"]["base"], 10);
  EXPECT_EQ(invoke({"bound-exp", "--n", "1"}).code, kExitInvalidInput);
}

TEST_F(CliTest, BoundUniform) {
  const auto r = invoke({"bound-uniform", "--n", "10", "--k", "5", "--s", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["value"].get<double>(), 5.13505778083890311e-4, 1e-16);
  EXPECT_DOUBLE_EQ(doc["value"].get<double>(), doc["density_term"].get<double>() +
                                                   doc["first_harmonic_term"].get<double>() +
                                                   doc["higher_harmonics_term"].get<double>());
  EXPECT_EQ(invoke({"bound-uniform", "--n", "3", "--k", "12", "--s", "2"}).code, kExitInvalidInput);
}

TEST_F(CliTest, BoundAndFold) {
  const auto spec = chain(kExp3);
  auto r = invoke({"bound", "--chain", spec, "--a", "0", "--b", "0.5", "--lmax", "32"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["truncation_L"], 32);
  EXPECT_EQ(doc["per_term"].size(), 64u);
  EXPECT_EQ(doc["config"]["chain"]["links"].size(), 3u);

  r = invoke({"fold", "--chain", spec, "--a", "0", "--b", "1", "--lmax", "64"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["probability"].get<double>(), 1.0);

  r = invoke({"fold", "--chain", spec, "--a", "0", "--b", "0.3010299956639812"});
  doc = json::parse(r.out);
  EXPECT_NEAR(doc["probability"].get<double>(), 0.301050895484165227, 1e-14);
  EXPECT_EQ(doc["config"]["lmax"], 64);

  EXPECT_EQ(invoke({"fold", "--chain", spec, "--a", "0.7", "--b", "0.2"}).code, kExitInvalidInput);
}

TEST_F(CliTest, NonSummableTailIsNonConvergence) {
  const auto lone = chain(R"({"family": "uniform"})");
  const auto r = invoke({"bound", "--chain", lone});
  EXPECT_EQ(r.code, kExitNonConvergence);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, BadChainSpecNamesTheLink) {
  const auto bad = chain(R"({"family": "exponential"}, {"family": "weibull"})");
  const auto r = invoke({"fold", "--chain", bad});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("links[1]"), std::string::npos);
  EXPECT_EQ(invoke({"fold", "--chain", path("missing.json")}).code, kExitInvalidInput);
}

// Property: printed probabilities sum to one and delta is their exact difference.
TEST_F(CliTest, DigitsCsv) {
  const auto spec = chain(R"({"family": "uniform"}, {"family": "half_gaussian", "power": 2})");
  const auto r = invoke({"digits", "--chain", spec});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# config: ", 0), 0u);
  const auto config = json::parse(line.substr(10));
  EXPECT_EQ(config["lmax"], 64);
  std::getline(lines, line);
  EXPECT_EQ(line, "d,probability,benford,delta");
  double sum = 0.0;
  int rows = 0;
  while (std::getline(lines, line)) {
    int d;
    double p, b, delta;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &d, &p, &b, &delta), 4) << line;
    EXPECT_EQ(d, ++rows);
    EXPECT_EQ(delta, p - b);
    EXPECT_DOUBLE_EQ(b, std::log10(1.0 + 1.0 / d));
    sum += p;
  }
  EXPECT_EQ(rows, 9);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST_F(CliTest, DensityUniformCsv) {
  const auto r = invoke({"density-uniform", "--n", "3", "--k", "5", "--points", "50"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# config: ", 0), 0u);
  std::getline(lines, line);
  EXPECT_EQ(line, "x,f");
  std::vector<double> xs;
  while (std::getline(lines, line)) {
    double x, f;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf", &x, &f), 2);
    EXPECT_NEAR(f, std::pow(std::log(5.0 / x), 2) / 10.0, 1e-14);
    xs.push_back(x);
  }
  ASSERT_EQ(xs.size(), 50u);
  EXPECT_NEAR(xs.front(), 5e-3, 1e-15);
  EXPECT_EQ(xs.back(), 5.0);
  EXPECT_NEAR(xs[1] / xs[0], xs[2] / xs[1], 1e-12);
  EXPECT_EQ(invoke({"density-uniform", "--n", "3", "--k", "5", "--points", "1"}).code,
            kExitInvalidInput);
}

TEST_F(CliTest, SimulateIsByteReproducible) {
  const auto spec = chain(kExp3);
  const auto a = invoke({"simulate", "--chain", spec, "--samples", "5000", "--seed", "7", "--out",
                         path("a.csv")});
  const auto b = invoke({"simulate", "--chain", spec, "--samples", "5000", "--seed", "7", "--out",
                         path("a.csv")});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto first = slurp(path("a.csv"));
  const auto threaded = invoke({"simulate", "--chain", spec, "--samples", "5000", "--seed", "7",
                                "--out", path("b.csv"), "--workers", "4"});
  ASSERT_EQ(threaded.code, kExitOk);
  EXPECT_EQ(slurp(path("b.csv")), first);
  EXPECT_EQ(first.substr(0, first.find('\n')), "index,value,mantissa,first_digit");

  const auto stats = json::parse(a.out);
  EXPECT_EQ(stats["config"]["rng"], "philox4x32-10/v1");
  EXPECT_EQ(stats["config"]["seed"], 7);
  EXPECT_EQ(stats["config"]["stream"], 0);
  EXPECT_EQ(stats["count"], 5000);

  const auto other = invoke({"simulate", "--chain", spec, "--samples", "5000", "--seed", "8",
                             "--out", path("c.csv")});
  EXPECT_NE(slurp(path("c.csv")), first);
  EXPECT_EQ(invoke({"simulate", "--chain", spec, "--samples", "10", "--out", path("d.csv")}).code,
            kExitInvalidInput);
}

TEST_F(CliTest, SimulateThenAuditRoundTrip) {
  // Deep uniform chains with large powers underflow sometimes.
  const auto spec = chain(R"({"family": "uniform"}, {"family": "uniform", "power": 40},
                             {"family": "exponential", "power": 3})");
  const auto sim = invoke({"simulate", "--chain", spec, "--samples", "20000", "--seed", "3",
                           "--out", path("s.csv")});
  ASSERT_EQ(sim.code, kExitOk) << sim.err;
  const auto stats = json::parse(sim.out);
  const long failures = stats["failures"];
  EXPECT_GT(failures, 0);

  const auto audit = invoke({"audit", "--input", path("s.csv"), "--column", "value", "--base", "10"});
  ASSERT_EQ(audit.code, kExitOk) << audit.err;
  const auto report = json::parse(audit.out);
  EXPECT_EQ(report["count"].get<long>(), 20000 - failures);
  EXPECT_EQ(report["skipped"], 0);
  EXPECT_EQ(report["digit_frequencies"], stats["digit_frequencies"]);
  EXPECT_EQ(report["sup_deviation"], stats["sup_deviation"]);
}

TEST_F(CliTest, AuditReportShape) {
  const auto csv = write("data.csv", "id,amount\n1,123.4\n2,-5\n3,n/a\n4,0.0071\n5,1.9e5\n6,88\n");
  const auto r = invoke({"audit", "--input", csv, "--column", "amount", "--bound", "0.001"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  std::set<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"count", "skipped", "base", "digit_frequencies",
                                         "benford_frequencies", "sup_deviation", "chi_square",
                                         "ks_critical", "conforms", "bound_context",
                                         "bound_consistent"}));
  EXPECT_EQ(doc["count"], 4);
  EXPECT_EQ(doc["skipped"], 2);
  EXPECT_EQ(doc["base"], 10);
  EXPECT_EQ(doc["bound_context"], 0.001);
  EXPECT_EQ(doc["digit_frequencies"].size(), 9u);
  EXPECT_NE(r.err.find("# config: "), std::string::npos);

  const auto plain = json::parse(invoke({"audit", "--input", csv, "--col-index", "1"}).out);
  EXPECT_TRUE(plain["bound_context"].is_null());
  EXPECT_TRUE(plain["bound_consistent"].is_null());

  const auto headless = write("raw.csv", "5.5\n17\n0.3\n");
  const auto raw = invoke({"audit", "--input", headless, "--col-index", "0", "--no-header"});
  ASSERT_EQ(raw.code, kExitOk) << raw.err;
  EXPECT_EQ(json::parse(raw.out)["count"], 3);
}

TEST_F(CliTest, AuditInputErrors) {
  const auto csv = write("data.csv", "amount\n1\n2\n");
  EXPECT_EQ(invoke({"audit", "--input", csv}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"audit", "--input", csv, "--column", "amount", "--col-index", "0"}).code,
            kExitInvalidInput);
  EXPECT_EQ(invoke({"audit", "--input", csv, "--column", "nope"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"audit", "--input", path("none.csv"), "--col-index", "0"}).code,
            kExitInvalidInput);
  const auto empty = write("empty.csv", "amount\n-1\nx\n");
  EXPECT_EQ(invoke({"audit", "--input", empty, "--column", "amount"}).code, kExitInvalidInput);
}

}  // namespace
}  // namespace benford::cli
