#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mixgap/tools/cli.hpp"

namespace mixgap::tools {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mixgap_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kBundled = std::string(MIXGAP_DATA_DIR) + "/ex31.json";

TEST(Cli, OracleOnBundledChain) {
  const auto r = invoke({"oracle", "--matrix", kBundled});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["gamma_ps"].get<double>(), 0.29495147459972404, 1e-12);
  EXPECT_NEAR(j["gamma_dps"].get<double>(), 0.19282161153045774, 1e-12);
  EXPECT_EQ(j["k_ps"], 2);
  EXPECT_EQ(j["k_dps"], 3);
  EXPECT_EQ(j["t_mix"], 5);
  EXPECT_TRUE(j["gamma_star"].is_null());
  EXPECT_NEAR(j["pi_star"].get<double>(), 0.25, 1e-14);
}

TEST(Cli, SimulateThenEstimate) {
  const auto sim = invoke({"--seed", "3", "simulate", "--fixture", "fast3", "--m", "20000", "--start", "stationary"});
  ASSERT_EQ(sim.code, kExitOk) << sim.err;
  const auto again = invoke({"simulate", "--fixture", "fast3", "--m", "20000", "--start", "stationary", "--seed", "3"});
  EXPECT_EQ(sim.out, again.out);

  const auto est = invoke({"estimate", "--method", "dps", "--states", "3"}, sim.out);
  ASSERT_EQ(est.code, kExitOk) << est.err;
  const auto j = json::parse(est.out);
  EXPECT_EQ(j["method"], "dps");
  EXPECT_NEAR(j["value"].get<double>(), 0.735, 0.1);

  const auto pi = invoke({"estimate", "--method", "pi-star"}, sim.out);
  ASSERT_EQ(pi.code, kExitOk) << pi.err;
  EXPECT_NEAR(json::parse(pi.out)["value"].get<double>(), 1.0 / 3.0, 0.05);
}

TEST(Cli, BinaryTrajectoryThroughFiles) {
  const auto path = scratch("fast3.bin");
  const auto sim = invoke({"simulate", "--fixture", "fast3", "--m", "5000", "--format", "binary", "-o", path.string()});
  ASSERT_EQ(sim.code, kExitOk) << sim.err;
  const auto est = invoke({"estimate", "--method", "ps-prefix", "--K", "2", "--trajectory", path.string()});
  ASSERT_EQ(est.code, kExitOk) << est.err;
  EXPECT_EQ(json::parse(est.out)["K_used"], 2);
}

TEST(Cli, StatsReportsTallies) {
  const auto r = invoke({"stats", "--k", "1", "--states", "2"}, "0\n1\n0\n1\n1\n");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["pairs"], 4);
  EXPECT_EQ(j["visits"], json::array({2, 2}));
  EXPECT_EQ(j["transitions"], json::parse("[[0,1,2],[1,0,1],[1,1,1]]"));
}

TEST(Cli, ErrorsMapToExitCodes) {
  const auto empty = invoke({"estimate", "--method", "dps"}, "");
  EXPECT_EQ(empty.code, kExitDomain);
  EXPECT_EQ(json::parse(empty.err)["error"], "TRAJECTORY_TOO_SHORT");

  const auto missing = invoke({"estimate", "--method", "dps", "--trajectory", "/nonexistent/path.txt"});
  EXPECT_EQ(missing.code, kExitIoOrParse);
  EXPECT_EQ(json::parse(missing.err)["error"], "IO_ERROR");

  const auto bad_flag = invoke({"estimate", "--no-such-flag"});
  EXPECT_EQ(bad_flag.code, kExitIoOrParse);
  EXPECT_EQ(json::parse(bad_flag.err)["error"], "PARSE_ERROR");

  const auto bad_method = invoke({"estimate", "--method", "magic"});
  EXPECT_EQ(bad_method.code, kExitIoOrParse);

  const auto no_usable = invoke({"estimate", "--method", "ps-prefix", "--K", "1", "--states", "2"}, "0\n0\n0\n");
  EXPECT_EQ(no_usable.code, kExitDomain);
  EXPECT_EQ(json::parse(no_usable.err)["error"], "NO_USABLE_K");
}

TEST(Cli, IntervalWritesTermsCsv) {
  const auto sim = invoke({"simulate", "--fixture", "fast3", "--m", "10000", "--seed", "1"});
  ASSERT_EQ(sim.code, kExitOk);
  const auto csv = scratch("terms.csv");
  const auto r = invoke({"interval", "--c-override", "0.1", "--csv", csv.string()}, sim.out);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j["interval"][0].get<double>(), j["point"].get<double>());
  EXPECT_GE(j["interval"][1].get<double>(), j["point"].get<double>());
  const std::string text = slurp(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "k,W,V,T,U,gamma_ps_p_hat");
}

TEST(Cli, BenchIsDeterministic) {
  const std::vector<std::string> args{"bench",   "--fixture", "fast3", "--m-grid", "1000,2000,4000",
                                      "--seeds", "20",        "--seed", "5"};
  const auto first = invoke(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  std::size_t lines = 0;
  for (const char ch : first.out) lines += ch == '\n';
  EXPECT_EQ(lines, 1u + 60u + 3u);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(invoke(threaded).out, first.out);
}

TEST(Cli, LemmaCheck) {
  const auto r = invoke({"lemma-check", "--fixture", "cycle3", "--k-max", "6"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["violations"], 0);
  EXPECT_EQ(invoke({"lemma-check", "--fixture", "cycle3", "--k-max", "40"}).code, kExitIoOrParse);
  EXPECT_EQ(invoke({"oracle", "--fixture", "nope"}).code, kExitDomain);
}

}  // namespace
}  // namespace mixgap::tools
