#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "moment_forge/cli/options.hpp"
#include "moment_forge/cli/run.hpp"

namespace cli = moment_forge::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "moment_forge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("mf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
    ::setenv("MOMENT_FORGE_CACHE", (dir_ / "cache").c_str(), 1);
  }
  void TearDown() override {
    ::unsetenv("MOMENT_FORGE_CACHE");
    std::filesystem::remove_all(dir_);
  }
  std::filesystem::path write(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  std::filesystem::path dir_;
};

json strip_wall_time(json j) {
  if (j.is_object()) {
    json kept = json::object();
    for (auto& [k, v] : j.items())
      if (!k.ends_with("wall_time")) kept[k] = strip_wall_time(v);
    return kept;
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_wall_time(v);
  }
  return j;
}

}  // namespace

TEST(Options, ComplexLiterals) {
  EXPECT_EQ(cli::parse_complex("0.01"), moment_forge::Complex(0.01, 0));
  EXPECT_EQ(cli::parse_complex("+0.1"), moment_forge::Complex(0.1, 0));
  EXPECT_EQ(cli::parse_complex("0.03+0.05i"), moment_forge::Complex(0.03, 0.05));
  EXPECT_EQ(cli::parse_complex("-1e-2-2e-3i"), moment_forge::Complex(-0.01, -0.002));
  EXPECT_EQ(cli::parse_complex("0.2i"), moment_forge::Complex(0, 0.2));
  EXPECT_EQ(cli::parse_complex("-i"), moment_forge::Complex(0, -1));
  EXPECT_THROW(cli::parse_complex("abc"), cli::UsageError);
  EXPECT_THROW(cli::parse_complex("1+2"), cli::UsageError);
}

TEST(Options, ConfigFileSyntax) {
  std::istringstream in("# comment\nT = 2000\n  --Xexp=1.3  \n\nshiftA = 0.01, 0.02\n");
  const auto cfg = cli::read_config(in);
  EXPECT_EQ(cfg.at("T"), "2000");
  EXPECT_EQ(cfg.at("Xexp"), "1.3");
  EXPECT_EQ(cfg.at("shiftA"), "0.01, 0.02");
  std::istringstream bad("T 2000\n");
  EXPECT_THROW(cli::read_config(bad), cli::UsageError);
}

TEST_F(CliTest, VerifyCertificate) {
  auto r = invoke({"verify", "--identity", "theorem2", "--sizes", "1,1,1,1", "--degree", "6"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto j = r.doc();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(j["config"]["identity"], "theorem2");
  EXPECT_EQ(j["config"]["degree"], 6);
  EXPECT_TRUE(j["result"]["equal"].get<bool>());
  EXPECT_TRUE(j.contains("wall_time"));
}

TEST_F(CliTest, VerifyDegreeZeroIsTrivial) {
  auto r = invoke({"verify", "--identity", "lemma1", "--degree", "0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(r.doc()["result"]["equal"].get<bool>());
  EXPECT_EQ(r.doc()["result"]["degree"], 0);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"verify", "--bogus", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--identity", "lemma9"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"compare", "--shiftA", "zero"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--format", "yaml"}).code, cli::kExitUsage);
  auto unknown = invoke({"predict", "--nonsense"});
  EXPECT_EQ(unknown.code, cli::kExitUsage);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos) << unknown.err;
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk); }

TEST_F(CliTest, ComputationErrorsExitThree) {
  // The sweep exceeds its budget; the prediction still appears.
  auto r = invoke({"compare", "--shiftA", "0.01", "--shiftB", "0.02", "--T", "1000", "--Xexp", "1.4", "--budget", "10"});
  EXPECT_EQ(r.code, cli::kExitComputation);
  auto j = r.doc();
  EXPECT_FALSE(j["result"]["errors"].empty());
  EXPECT_TRUE(j["result"]["predicted"]["re"].is_number());
  EXPECT_EQ(invoke({"compute", "--T", "1000", "--X", "3e9"}).code, cli::kExitComputation);
  EXPECT_EQ(invoke({"correlate", "--u", "0.5"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"farey", "--m1", "0"}).code, cli::kExitUsage);
}

TEST_F(CliTest, CompareReportAndDeterminism) {
  const std::vector<std::string> args{"compare", "--shiftA", "0.01", "--shiftB", "0.02", "--T", "500", "--Xexp", "1.4"};
  auto first = invoke(args), second = invoke(args);
  ASSERT_EQ(first.code, cli::kExitOk) << first.err;
  auto j = first.doc();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["config"]["budget"], 200000000);
  EXPECT_EQ(j["config"]["psi-eps"], 1e-10);
  EXPECT_LT(j["result"]["relative_error"].get<double>(), 0.05);
  EXPECT_EQ(strip_wall_time(j), strip_wall_time(second.doc()));
  // The second run reads the cached tables.
  EXPECT_FALSE(std::filesystem::is_empty(dir_ / "cache"));
}

TEST_F(CliTest, CsvSweep) {
  auto r = invoke({"compute", "--T", "300,500", "--Xexp", "1.3", "--shiftA", "0.01", "--shiftB", "0.02", "--format",
                   "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "T,X_exponent,empirical_re,empirical_im,predicted_re,predicted_im,rel_err,pairs_visited,wall_time");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) {
      ++rows;
      EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8) << line;
    }
  EXPECT_EQ(rows, 2);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto cfg = write("run.cfg", "# moment run\nidentity = semidiagonal\nsizes = 2,1,1,1\ndegree = 3\n");
  auto from_file = invoke({"verify", "--config", cfg.string()});
  ASSERT_EQ(from_file.code, cli::kExitOk) << from_file.err;
  EXPECT_EQ(from_file.doc()["config"]["identity"], "semidiagonal");
  EXPECT_EQ(from_file.doc()["config"]["degree"], 3);

  auto overridden = invoke({"verify", "--config", cfg.string(), "--degree", "2"});
  ASSERT_EQ(overridden.code, cli::kExitOk);
  EXPECT_EQ(overridden.doc()["config"]["degree"], 2);
  EXPECT_EQ(overridden.doc()["config"]["identity"], "semidiagonal");

  // Integral floats are integers on the command line and in config files alike.
  EXPECT_EQ(invoke({"verify", "--degree", "2e0"}).doc()["config"]["degree"], 2);
  EXPECT_EQ(invoke({"verify", "--degree", "2.5"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"farey", "--random", "-3"}).code, cli::kExitUsage);

  const auto bad = write("bad.cfg", "colour = blue\n");
  EXPECT_EQ(invoke({"verify", "--config", bad.string()}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--config", (dir_ / "missing.cfg").string()}).code, cli::kExitUsage);
}

TEST_F(CliTest, OutputFile) {
  const auto out = dir_ / "report.json";
  auto r = invoke({"farey", "--m1", "3", "--m2", "4", "--n1", "7", "--n2", "5", "--Q", "5", "--out", out.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  auto j = json::parse(in);
  EXPECT_EQ(j["command"], "farey");
  EXPECT_EQ(j["result"]["frame"]["M"], 2);
  EXPECT_EQ(j["result"]["frame"]["N"], 5);
  EXPECT_TRUE(j["result"]["identity_holds"].get<bool>());
}

TEST_F(CliTest, PredictModes) {
  auto poly = invoke({"predict", "--shiftA", "0.01", "--shiftB", "0.02", "--T", "1000", "--Xexp", "1.4"});
  ASSERT_EQ(poly.code, cli::kExitOk) << poly.err;
  EXPECT_EQ(poly.doc()["result"]["prediction"]["per_class"].size(), 2u);

  // Coincident shifts fall back to the perturbed average.
  auto confluent = invoke({"predict", "--shiftA", "0", "--shiftB", "0", "--T", "1000"});
  ASSERT_EQ(confluent.code, cli::kExitOk) << confluent.err;
  EXPECT_TRUE(confluent.doc()["result"]["perturbed"].get<bool>());
  EXPECT_FALSE(confluent.doc()["result"]["prediction"]["diagnostics"].empty());
  EXPECT_EQ(invoke({"predict", "--shiftA", "0", "--shiftB", "0", "--T", "1000", "--eps", "0"}).code,
            cli::kExitComputation);

  auto corr = invoke({"predict", "--shiftA", "0.05", "--shiftB", "0.07", "--h", "2", "--u", "1e5"});
  ASSERT_EQ(corr.code, cli::kExitOk) << corr.err;
  EXPECT_NEAR(corr.doc()["result"]["r_star"]["re"].get<double>(), std::pow(1e5, -0.12), 1e-12);
}

TEST_F(CliTest, CorrelateAndFareyRandom) {
  auto c = invoke({"correlate", "--shiftA", "0.05", "--shiftB", "0.07", "--h", "1", "--u", "2e4", "--Qmax", "500"});
  ASSERT_EQ(c.code, cli::kExitOk) << c.err;
  EXPECT_LT(c.doc()["result"]["relative_error"].get<double>(), 0.05);
  auto f = invoke({"farey", "--random", "500", "--seed", "4"});
  ASSERT_EQ(f.code, cli::kExitOk) << f.err;
  EXPECT_EQ(f.doc()["result"]["failures"], 0);
}

TEST_F(CliTest, TextFormat) {
  auto r = invoke({"verify", "--degree", "2", "--format", "text"});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("schema = 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("result.equal = true"), std::string::npos) << r.out;
}
