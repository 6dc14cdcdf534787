#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "monogenic/cli.hpp"

using namespace monogenic;

namespace {

const std::string kData = MONOGENIC_SAMPLES_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("monogenic_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, EvalUnitAndAxisSeries) {
  EXPECT_EQ(run({"eval", data("unit.json"), "--point", "1/2,3,-4"}).out, "{\"\": \"1/1\"}\n");
  EXPECT_EQ(run({"eval", data("v10.json"), "--point", "0,2,0"}).out, "{\"\": \"2/1\"}\n");
  // V_(1,0)(x0, x1, x2) = x1 - x0 e1
  EXPECT_EQ(run({"eval", data("v10.json"), "--point", "3,2,0"}).out, "{\"\": \"2/1\", \"1\": \"-3/1\"}\n");
  EXPECT_EQ(run({"eval", data("f_float.json"), "--point", "0,0,2"}).out, "{\"\": 0.5}\n");
}

TEST(Cli, ParseErrorsCarryLineAndExitTwo) {
  const CliRun r = run({"eval", data("malformed.json"), "--point", "0,0,0"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line 6"), std::string::npos) << r.err;
}

TEST(Cli, UsageAndDimensionErrorsExitTwo) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", data("v10.json")}).code, kExitUsage);
  EXPECT_EQ(run({"eval", data("v10.json"), "--point", "0,1"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", data("missing.json"), "--point", "0,1,1"}).code, kExitUsage);
  EXPECT_EQ(run({"ckprod", data("f.json"), data("f_float.json")}).code, kExitUsage);
  EXPECT_EQ(run({"eval", data("f.json"), "--point", "0,1,1", "--mode", "float"}).code, kExitUsage);
}

TEST(Cli, CkprodWithUnitEchoesInput) {
  const CliRun r = run({"ckprod", data("f.json"), data("unit.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, read_text_file(data("f.json")));
}

TEST(Cli, ApplyIdentityEchoesInput) {
  EXPECT_EQ(run({"apply", data("identity_op.json"), data("f.json")}).out, read_text_file(data("f.json")));
}

TEST(Cli, DiffLowersTheIndex) {
  const CliRun r = run({"diff", data("v10.json"), "--index", "1,0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, read_text_file(data("unit.json")));
}

TEST(Cli, OperatorTableRoundTripIsByteIdentical) {
  const std::string hom = temp_path("hom.json"), op = temp_path("op.json");
  ASSERT_EQ(run({"op2hom", data("op.json"), "--degree", "3", "--out", hom}).code, kExitOk);
  EXPECT_EQ(read_text_file(hom), read_text_file(data("hom.json")));
  ASSERT_EQ(run({"hom2op", hom, "--out", op}).code, kExitOk);
  EXPECT_EQ(read_text_file(op), read_text_file(data("op.json")));
}

TEST(Cli, IncompleteTableIsAnError) {
  const std::string path = temp_path("incomplete.json");
  write_text_file(path, "{\"n\": 2, \"entries\": [{\"p\": [1, 0], \"b\": " + read_text_file(data("unit.json")) + "}]}");
  const CliRun r = run({"hom2op", path});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("incomplete"), std::string::npos);
}

TEST(Cli, GrowthOnAxisFixture) {
  const std::string csv = temp_path("growth.csv");
  const CliRun r = run({"growth", data("axis_norms.json"), "--po", "constant:1", "--window", "200:500", "--out", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string text = read_text_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "q,ln_Kq_lower,ln_Kq_upper,ln_Gq,kq_rhs,membership_value");
  std::filesystem::path summary(csv);
  summary.replace_extension(".summary.json");
  const Json j = parse_json(read_text_file(summary.string()));
  EXPECT_NEAR(j["type_estimate"].get<double>(), 1.0, 0.1);
  EXPECT_NEAR(j["membership_kq"].get<double>(), 1.0, 0.1);
  EXPECT_TRUE(j["member"].get<bool>());
}

TEST(Cli, GrowthEmptyWindowIsAnError) {
  EXPECT_EQ(run({"growth", data("axis_norms.json"), "--window", "600:700"}).code, kExitUsage);
  EXPECT_EQ(run({"growth", data("axis_norms.json"), "--window", "7"}).code, kExitUsage);
}

TEST(Cli, VerifyListAndOutcomes) {
  const CliRun list = run({"verify", "--list"});
  EXPECT_EQ(list.code, kExitOk);
  EXPECT_NE(list.out.find("monogenicity\n"), std::string::npos);

  const std::string report = temp_path("report.json");
  const CliRun ok = run({"verify", data("verify.json"), "--out", report});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
  EXPECT_TRUE(parse_json(read_text_file(report)).is_array());

  const CliRun bad = run({"verify", data("verify_corrupted.json")});
  EXPECT_EQ(bad.code, kExitCheckFailed);
  EXPECT_NE(bad.out.find("monogenicity          NO"), std::string::npos) << bad.out;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, kExitOk); }
