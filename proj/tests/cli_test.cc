#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace primecycles::cli {
namespace {

struct Result {
  int status = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.status = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(CliTest, Count) {
  EXPECT_EQ(run_cli({"count", "--spec", "primes", "--n", "5"}).out, "44\n");
  EXPECT_EQ(run_cli({"count", "--n", "13"}).out, "914698212\n");
  EXPECT_EQ(run_cli({"count", "--spec", "odd", "--n", "9"}).out, "99225\n");
  EXPECT_EQ(run_cli({"count", "--spec", "all", "--n", "20"}).out, "2432902008176640000\n");
  EXPECT_NEAR(std::stod(run_cli({"count", "--n", "5", "--mode", "float"}).out), 44.0, 1e-12);
  EXPECT_NEAR(std::stod(run_cli({"count", "--n", "150", "--mode", "float"}).out) /
                  std::stod(run_cli({"count", "--n", "150", "--mode", "exact"}).out),
              1.0, 1e-12);
}

TEST(CliTest, Sum) {
  EXPECT_EQ(run_cli({"sum", "--n", "5", "--mode", "exact"}).out, "93/40\n");
  EXPECT_EQ(run_cli({"sum", "--n", "5"}).out, "2.3250000000000002\n");
  EXPECT_EQ(run_cli({"sum", "--spec", "all", "--n", "9", "--mode", "exact"}).out, "10\n");
}

TEST(CliTest, Constants) {
  const Result r = run_cli({"constants"});
  ASSERT_EQ(r.status, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["euler_gamma"].get<double>(), 0.577215664901533);
  EXPECT_EQ(doc["mertens_c"].get<double>(), 0.261497212847643);
  EXPECT_EQ(doc["e_to_c"].get<double>(), 1.29887332140903);
  EXPECT_TRUE(doc.contains("method"));
  EXPECT_TRUE(doc.contains("tail_bound"));
}

TEST(CliTest, Phi) {
  EXPECT_EQ(run_cli({"phi", "--z", "0"}).out, "0\n");
  const Result r = run_cli({"phi", "--z", "0.5"});
  EXPECT_NEAR(std::stod(r.out), 0.1740870718, 1e-10);
  EXPECT_NEAR(std::stod(run_cli({"phi", "--z", "0.5", "--order", "1"}).out), 0.82936502, 1e-8);
  EXPECT_NEAR(std::stod(run_cli({"phi", "--z", "0.5", "--egf"}).out), 1.1901591906, 1e-9);
  const Result split = run_cli({"phi", "--t", "0.001", "--split"});
  ASSERT_EQ(split.status, kExitOk) << split.err;
  EXPECT_EQ(split.out.substr(0, split.out.find('\n')), "t,cutoff,phi1,phi2,phi3,total");
  EXPECT_EQ(run_cli({"phi"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"phi", "--z", "0.5", "--t", "1"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"phi", "--z", "0.5", "--split"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"phi", "--z", "1.5"}).status, kExitFailure);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({"count", "--n", "-1"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"count", "--n", "5", "--bogus"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"count"}).status, kExitUsage);
  EXPECT_EQ(run_cli({}).status, kExitUsage);
  EXPECT_EQ(run_cli({"count", "--spec", "prime", "--n", "5"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"count", "--n", "5", "--mode", "fuzzy"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).status, kExitOk);
  EXPECT_EQ(run_cli({"count", "--help"}).status, kExitOk);
}

TEST(CliTest, DomainErrorsExitOne) {
  const Result r = run_cli({"count", "--n", "5000"});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(run_cli({"sample", "--n", "1"}).status, kExitFailure);
  EXPECT_EQ(run_cli({"count", "--n", "300", "--mode", "float"}).status, kExitFailure);
  EXPECT_EQ(run_cli({"count", "--n", "50", "--sieve-limit", "10"}).status, kExitFailure);
}

TEST(CliTest, TableMatchesGolden) {
  const Result r = run_cli({"table", "--n", "30", "--mode", "exact"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(r.out, read_file(std::string(PRIMECYCLES_GOLDEN_DIR) + "/primes_exact_30.csv"));
  const Result json = run_cli({"table", "--n", "5", "--mode", "exact", "--format", "json"});
  const auto doc = nlohmann::json::parse(json.out);
  ASSERT_EQ(doc.size(), 6u);
  EXPECT_EQ(doc[5]["P_n"], "44");
}

TEST(CliTest, Deterministic) {
  const std::vector<std::string> args{"table", "--n", "200", "--spec", "mod:3:1,2"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  const std::vector<std::string> sample{"sample", "--n", "50", "--seed", "7", "--count", "5"};
  EXPECT_EQ(run_cli(sample).out, run_cli(sample).out);
}

TEST(CliTest, Sample) {
  const Result r = run_cli({"sample", "--n", "4", "--count", "3"});
  EXPECT_EQ(r.out, "2,2\n2,2\n2,2\n");
  const Result five = run_cli({"sample", "--n", "5", "--count", "200", "--seed", "3"});
  std::istringstream lines(five.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_TRUE(line == "5" || line == "3,2") << line;
  }
  EXPECT_EQ(rows, 200);
}

TEST(CliTest, OutFileAndEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "primecycles_cli_out.txt";
  EXPECT_EQ(run_cli({"count", "--n", "5", "--out", path.string()}).status, kExitOk);
  EXPECT_EQ(read_file(path.string()), "44\n");
  std::filesystem::remove(path);

  ::setenv(kSieveLimitEnv, "10", 1);
  EXPECT_EQ(run_cli({"count", "--n", "50"}).status, kExitFailure);
  ::setenv(kSieveLimitEnv, "abc", 1);
  EXPECT_EQ(run_cli({"count", "--n", "5"}).status, kExitUsage);
  ::unsetenv(kSieveLimitEnv);
  EXPECT_EQ(run_cli({"count", "--n", "5"}).out, "44\n");
}

TEST(CliTest, VerifySmall) {
  const Result r = run_cli({"verify", "--table", "theorem1", "--n-grid", "100,1000,10000"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# theorem1\nx,exact,model,ratio,scaled_residual\n"), std::string::npos);
  EXPECT_NE(r.out.find("PASS theorem1.residual_bound"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--table", "nope"}).status, kExitUsage);
}

}  // namespace
}  // namespace primecycles::cli
