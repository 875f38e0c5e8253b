#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace mdq;
using mdq::cli::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mdq_cli_test_" + name);
}

}  // namespace

TEST(ParseComplex, AcceptedForms) {
  EXPECT_EQ(cli::parse_complex("1.5"), Complex(1.5, 0.0));
  EXPECT_EQ(cli::parse_complex("-2"), Complex(-2.0, 0.0));
  EXPECT_EQ(cli::parse_complex("0.7071+0.7071i"), Complex(0.7071, 0.7071));
  EXPECT_EQ(cli::parse_complex("1-2i"), Complex(1.0, -2.0));
  EXPECT_EQ(cli::parse_complex("3i"), Complex(0.0, 3.0));
  EXPECT_EQ(cli::parse_complex("i"), Complex(0.0, 1.0));
  EXPECT_EQ(cli::parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(cli::parse_complex("2+i"), Complex(2.0, 1.0));
  EXPECT_EQ(cli::parse_complex("1e-3-2.5e+1i"), Complex(1e-3, -25.0));
  EXPECT_EQ(cli::parse_complex(" 1 + 2i "), Complex(1.0, 2.0));
}

TEST(ParseComplex, RejectedForms) {
  for (const char* s : {"", "abc", "1+", "1+2j", "1++2i", "+", "nan", "inf", "1e999", "2i3", "1+2ii"})
    EXPECT_THROW(cli::parse_complex(s), cli::UsageError) << s;
}

TEST(Cli, CentralChargeOfOneIs25) {
  const Result r = call({"central-charge", "--b", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C = 25+0i"), std::string::npos);
  const Result j = call({"--format", "json", "central-charge", "--b", "1"});
  const json doc = json::parse(j.out);
  EXPECT_EQ(doc["central_charge"]["re"].get<double>(), 25.0);
  EXPECT_EQ(doc["star_case"], "SLq2R");
}

TEST(Cli, PentagonSuiteAtDegreeSix) {
  const Result r = call({"verify", "--suite", "pentagon", "--degree", "6", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["suites"].size(), 1u);
  const json& recs = doc["suites"][0]["records"];
  ASSERT_FALSE(recs.empty());
  for (const auto& rec : recs) {
    EXPECT_EQ(rec["residual"], "0");
    EXPECT_EQ(rec["degree"], 6);
    EXPECT_TRUE(rec["pass"].get<bool>());
  }
  EXPECT_EQ(doc["conventions"]["twist_k"], -1);
}

TEST(Cli, ControlsFlagAddsNegativeControls) {
  const Result r = call({"verify", "--suite", "pentagon", "--degree", "4", "--controls", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  int controls = 0;
  for (const auto& rec : doc["suites"][0]["records"]) controls += rec["role"] == "control";
  EXPECT_EQ(controls, 2);
}

TEST(Cli, EvalPsiAgreement) {
  const Result r = call({"--format", "json", "eval-psi", "--b", "0.7071+0.7071i", "--p", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["agree"].get<bool>());
  EXPECT_LT(doc["relative_error"].get<double>(), 1e-8);
  EXPECT_TRUE(std::isfinite(doc["psi_integral"]["re"].get<double>()));
}

TEST(Cli, EvalPsiWithoutProductForm) {
  // real b: |q| = 1, only the integral is available
  const Result r = call({"--format", "json", "eval-psi", "--b", "0.9", "--p", "0.3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["psi_product"].is_null());
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"central-charge", "--b", "1+x"}).code, 2);
  EXPECT_EQ(call({"central-charge", "--b", "0"}).code, 2);
  EXPECT_EQ(call({"eval-psi", "--p", "1+"}).code, 2);
  EXPECT_EQ(call({"eval-psi", "--p", "0+20i"}).code, 2);
  EXPECT_EQ(call({"verify", "--suite", "pentagon", "--degree", "1"}).code, 2);
  EXPECT_EQ(call({"verify", "--suite", "pentagon", "--degree", "-3"}).code, 2);
  EXPECT_EQ(call({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(call({"--format", "xml", "central-charge", "--b", "1"}).code, 2);
  EXPECT_EQ(call({"oracle-check", "--dim", "1"}).code, 2);
  EXPECT_EQ(call({"oracle-check", "--dim", "4", "--trials", "-1"}).code, 2);
  const Result r = call({"central-charge", "--b", "abc"});
  EXPECT_NE(r.err.find("malformed complex literal"), std::string::npos);
}

TEST(Cli, HelpExitsWithZero) {
  const Result r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify-all"), std::string::npos);
}

TEST(Cli, OracleCheck) {
  const Result r = call({"--format", "json", "oracle-check", "--dim", "5", "--trials", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["suites"][0]["records"].size(), 6u);
}

TEST(Cli, ReportFileIsWrittenAndDeterministic) {
  const auto path = temp_path("report.json");
  std::filesystem::remove(path);
  const Result a = call({"--report", path.string(), "--format", "json", "verify", "--suite", "heisenberg"});
  EXPECT_EQ(a.code, 0);
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  EXPECT_EQ(content.str(), a.out);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  const Result b = call({"--report", path.string(), "--format", "json", "verify", "--suite", "heisenberg"});
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove(path);
}

TEST(Cli, UnwritableReportPathIsAUsageError) {
  const Result r = call({"--report", "/nonexistent-dir/x/report.json", "central-charge", "--b", "1"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ConventionsReport) {
  const Result r = call({"--format", "json", "conventions-report"});
  EXPECT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["conventions"]["twist_k"], -1);
  EXPECT_GE(doc["conventions"]["discrepancies"].size(), 9u);
  const Result t = call({"conventions-report"});
  EXPECT_NE(t.out.find("relation direction"), std::string::npos);
}

TEST(Cli, FailingSuiteExitsWithOne) {
  const Result r = call({"verify", "--suite", "intertwining", "--degree", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL identity unique-intertwining-pair"), std::string::npos);
}
