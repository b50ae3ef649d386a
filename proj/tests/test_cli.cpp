#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace ffd;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ffd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

void expect_error(const Result& r, const std::string& code, const std::string& mention) {
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(count_lines(r.err), 1) << r.err;
  EXPECT_EQ(r.err.rfind("ERROR " + code + ":", 0), 0u) << r.err;
  EXPECT_NE(r.err.find(mention), std::string::npos) << r.err;
}

}  // namespace

TEST(Cli, VerifyPasses) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"verify", "--family", "I", "--M", "1", "--homogeneous", "0.7"},
           {"verify", "--family", "II", "--M", "6", "--seed", "3"},
           {"verify", "--family", "III", "--M", "9", "--phases", "0.3,0.5,0.7,0.9,1.1,1.2,0.4,0.6,0.8"}}) {
    auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS algebra"), std::string::npos);
    EXPECT_NE(r.out.find("max residual"), std::string::npos);
  }
}

TEST(Cli, InvalidSizeNamesTheKey) {
  expect_error(run_cli({"verify", "--family", "II", "--M", "7", "--homogeneous", "1"}), "argument", "--M");
  expect_error(run_cli({"verify", "--family", "III", "--M", "13", "--homogeneous", "1"}), "resource", "--M");
  expect_error(run_cli({"spectrum", "--family", "III", "--M", "0", "--homogeneous", "1"}), "argument", "--M");
}

TEST(Cli, ExactlyOnePhaseOption) {
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3"}), "argument", "exactly one");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--homogeneous", "1", "--seed", "2"}), "argument",
               "exactly one");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--phases", "1,2"}), "argument", "--phases");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--phases", "1,x,2"}), "argument", "--phases");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--homogeneous", "nan"}), "argument",
               "--homogeneous");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--seed", "-4"}), "argument", "--seed");
}

TEST(Cli, BadValues) {
  expect_error(run_cli({"spectrum", "--family", "IV", "--M", "3", "--homogeneous", "1"}), "argument", "--family");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "three", "--homogeneous", "1"}), "argument", "--M");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--homogeneous", "1", "--format", "csv"}),
               "argument", "--format");
  expect_error(run_cli({"evolve", "--family", "III", "--M", "3", "--homogeneous", "1", "--format", "xml"}),
               "argument", "--format");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--homogeneous", "1", "--precision", "quad"}),
               "argument", "--precision");
  expect_error(run_cli({"spectrum", "--family", "I", "--M", "3", "--homogeneous", "1", "--bogus"}), "argument",
               "--bogus");
  expect_error(run_cli({"evolve", "--family", "III", "--M", "3", "--homogeneous", "1", "--t-max", "-1"}),
               "argument", "--t-max");
  expect_error(run_cli({"frobnicate"}), "argument", "subcommand");
}

TEST(Cli, EvolveNeedsFamilyIII) {
  expect_error(run_cli({"evolve", "--family", "I", "--M", "6", "--homogeneous", "1"}), "unsupported", "--family");
}

TEST(Cli, SpectrumModeCounts) {
  for (auto [M, S] : {std::pair{12, 4}, {3, 1}, {150, 50}}) {
    auto r = run_cli({"spectrum", "--family", "III", "--M", std::to_string(M), "--homogeneous", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["S"], S);
    EXPECT_EQ(j["roots"].size(), static_cast<std::size_t>(S));
    EXPECT_NE(r.err.find("S=" + std::to_string(S)), std::string::npos);
  }
}

TEST(Cli, EvolveExactCheck) {
  auto r = run_cli({"evolve", "--family", "III", "--M", "12", "--homogeneous", "1", "--t-max", "50", "--exact-check"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 52);
  EXPECT_EQ(r.out.rfind("t,chi\n0,", 0), 0u);
  EXPECT_NE(r.err.find("exact-check max deviation"), std::string::npos);
}

TEST(Cli, EvolveZeroStepsIsInitialValue) {
  auto r = run_cli({"evolve", "--family", "III", "--M", "30", "--homogeneous", "1", "--t-max", "0", "--theta", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 2);
  double v = std::stod(r.out.substr(r.out.find("\n0,") + 3));
  EXPECT_NEAR(v, std::cos(0.6), 1e-10);
}

TEST(Cli, SeededRunsAreByteIdentical) {
  std::vector<std::string> args{"evolve", "--family", "III", "--M", "24", "--seed", "17", "--format", "json"};
  auto a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["series"]["chi"].size(), 71u);
  EXPECT_EQ(j["spectrum"]["M"], 24);
  auto c = run_cli({"evolve", "--family", "III", "--M", "24", "--seed", "18", "--format", "json"});
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, SeededPhasesInRange) {
  auto ph = cli::seeded_phases(5, 200);
  ASSERT_EQ(ph.size(), 200u);
  for (double p : ph) {
    EXPECT_GE(p, 0.2);
    EXPECT_LT(p, 1.3);
  }
  EXPECT_EQ(ph, cli::seeded_phases(5, 200));
}

TEST(Cli, OutFileWritten) {
  fs::path p = fs::temp_directory_path() / "ffd_cli_test_out.csv";
  fs::remove(p);
  auto r = run_cli({"evolve", "--family", "III", "--M", "6", "--homogeneous", "0.9", "--t-max", "5", "--out", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  EXPECT_NE(r.out.find("wrote"), std::string::npos);
  std::ifstream f(p);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "t,chi");
  fs::remove(p);
  expect_error(
      run_cli({"spectrum", "--family", "I", "--M", "3", "--homogeneous", "1", "--out", "/nonexistent_dir/x.json"}),
      "io", "nonexistent_dir");
}

TEST(Cli, HelpExitsZero) {
  auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("evolve"), std::string::npos);
  auto s = run_cli({"evolve", "--help"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("--t-max"), std::string::npos);
}

TEST(Cli, ParseDefaults) {
  std::vector<const char*> argv{"ffd", "evolve", "--family", "III", "--M", "6", "--homogeneous", "1"};
  auto cfg = cli::parse(static_cast<int>(argv.size()), argv.data());
  EXPECT_EQ(cfg.t_max, 70);
  EXPECT_NEAR(cfg.theta, M_PI / 8, 1e-16);
  EXPECT_EQ(cfg.format, cli::Format::csv);
  EXPECT_EQ(cfg.precision, Precision::standard);
  EXPECT_TRUE(cfg.out.empty());
}
