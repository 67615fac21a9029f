#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using nlohmann::json;
using namespace rys::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rys");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json schema() {
  std::ifstream in(RYS_SCHEMA_PATH);
  return json::parse(in);
}

void expect_document_shape(const json& doc) {
  for (const auto& key : schema()["required"]) EXPECT_TRUE(doc.contains(key.get<std::string>())) << key;
  const std::size_t width = doc["columns"].size();
  for (const auto& row : doc["rows"]) {
    ASSERT_EQ(row.size(), width);
    for (const auto& cell : row) EXPECT_TRUE(cell.is_number() || cell.is_string() || cell.is_null());
  }
  for (const auto& [name, entry] : doc["residual_summary"].items()) {
    EXPECT_TRUE(entry.contains("pass")) << name;
    EXPECT_TRUE(entry["pass"].is_boolean()) << name;
  }
}

}  // namespace

TEST(Cli, MomentsJson) {
  const Outcome o = invoke({"moments", "--z", "1", "--lambda", "1", "--n", "6"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json doc = json::parse(o.out);
  expect_document_shape(doc);
  EXPECT_EQ(doc["params"]["command"], "moments");
  EXPECT_EQ(doc["params"]["z"], "1");
  EXPECT_EQ(doc["columns"], json({"m", "s_m", "residual"}));
  EXPECT_TRUE(doc["residual_summary"]["moment_recurrence"]["pass"].get<bool>());
}

TEST(Cli, RecurrenceGegenbauerLimit) {
  const Outcome o = invoke({"recurrence", "--z", "0", "--lambda", "0.5", "--n", "12"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json doc = json::parse(o.out);
  expect_document_shape(doc);
  EXPECT_TRUE(doc["residual_summary"].contains("gegenbauer_limit"));
  EXPECT_TRUE(doc["rows"][0][3].is_null());
  EXPECT_NEAR(doc["rows"][1][1].get<double>(), 1.0 / 3.0, 1e-15);
}

TEST(Cli, RecurrenceBudgetWarning) {
  const Outcome o = invoke({"recurrence", "--n", "40", "--digits", "50"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.err.find("warning"), std::string::npos);
}

TEST(Cli, QuadratureCsv) {
  const Outcome o = invoke({"quadrature", "--n", "5", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,node,weight");
  int rows = 0;
  while (std::getline(in, line) && !line.empty() && line[0] != '#') ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Cli, ZerosAndFlow) {
  const Outcome z = invoke({"zeros", "--n", "7"});
  ASSERT_EQ(z.code, 0) << z.err;
  const json zd = json::parse(z.out);
  expect_document_shape(zd);
  EXPECT_EQ(zd["rows"].size(), 7u);
  const Outcome f = invoke({"flow", "--n", "6", "--z0", "0.5", "--z1", "1", "--steps", "5"});
  ASSERT_EQ(f.code, 0) << f.err;
  const json fd = json::parse(f.out);
  expect_document_shape(fd);
  EXPECT_EQ(fd["rows"].size(), 6u);
  EXPECT_EQ(fd["params"]["steps"], 5);
}

TEST(Cli, ZerosAtGegenbauerLimitHaveNoVelocity) {
  const Outcome o = invoke({"zeros", "--z", "0", "--n", "4"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json doc = json::parse(o.out);
  for (const auto& row : doc["rows"]) EXPECT_TRUE(row[2].is_null());
}

TEST(Cli, VerifyPassesAndDetectsPerturbation) {
  const Outcome ok = invoke({"verify", "--z", "1", "--lambda", "1", "--n", "12", "--format", "json"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const json doc = json::parse(ok.out);
  expect_document_shape(doc);
  for (const auto& [name, entry] : doc["residual_summary"].items()) EXPECT_TRUE(entry["pass"].get<bool>()) << name;

  const Outcome bad = invoke({"verify", "--z", "1", "--lambda", "1", "--n", "12", "--inject-perturbation", "1e-20"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("check failed"), std::string::npos);
}

TEST(Cli, VerifyTextIsDefault) {
  const Outcome o = invoke({"verify", "--n", "8"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_THROW({ [[maybe_unused]] const json j = json::parse(o.out); }, json::parse_error);
  EXPECT_NE(o.out.find("laguerre_freud"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"verify", "--lambda", "-0.6"}).code, 2);
  EXPECT_EQ(invoke({"moments", "--z", "-1"}).code, 2);
  EXPECT_EQ(invoke({"moments", "--digits", "20"}).code, 2);
  EXPECT_EQ(invoke({"moments", "--z", "abc"}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"quadrature", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"moments", "--help"}).code, 0);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "rys_cli_out.json";
  const Outcome o = invoke({"moments", "--n", "3", "--out", path});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  const json doc = json::parse(in);
  EXPECT_EQ(doc["params"]["n"], 3);
}

TEST(Cli, DigitsFromEnvironment) {
  ::setenv("RYS_DIGITS", "60", 1);
  const Outcome o = invoke({"moments", "--n", "3"});
  ::unsetenv("RYS_DIGITS");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["params"]["digits"], 60);
  ::setenv("RYS_DIGITS", "many", 1);
  EXPECT_EQ(invoke({"moments"}).code, 2);
  ::unsetenv("RYS_DIGITS");
}

TEST(Cli, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) EXPECT_EQ(std::stod(format_double(v)), v);
}
