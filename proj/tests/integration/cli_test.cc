// Copyright 2026 The owflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "json.hpp"

namespace owflab::cli {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "owflab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string DropFirstLine(const std::string& text) {
  return text.substr(text.find('\n') + 1);
}

TEST(CliTest, DensityCsv) {
  const Invocation r = Invoke({"density", "--limit", "20"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 23u);
  EXPECT_EQ(lines[0].rfind("# owflab density {", 0), 0u);
  EXPECT_NE(lines[0].find("generated="), std::string::npos);
  EXPECT_EQ(lines[1], "x,dens,lower_bound,upper_bound");
  EXPECT_EQ(lines[2], "1,0,0.3,1");
  EXPECT_EQ(lines.back(), "# violations lower=0 upper=0");
}

TEST(CliTest, ViolationExitCode) {
  const Invocation r = Invoke({"density", "--oracle", "full", "--limit", "10"});
  EXPECT_EQ(r.code, kExitViolation);
  EXPECT_EQ(Lines(r.out).back(), "# violations lower=0 upper=9");
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({"bogus"}).code, kExitUsage);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"density", "--no-such-flag"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"density", "--format", "json"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"experiment", "--format", "csv"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"density", "--oracle", "nope"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"experiment", "--trials", "10"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"experiment", "--alpha", "x/y"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bias", "--k-profile", "fast"}).code, kExitUsage);
  const Invocation r = Invoke({"bogus"});
  EXPECT_NE(r.err.find("unknown command"), std::string::npos);
}

TEST(CliTest, ParseAlpha) {
  EXPECT_EQ(ParseAlpha("8"), 8);
  EXPECT_EQ(ParseAlpha("15/2"), mpq_class(15, 2));
  EXPECT_EQ(ParseAlpha("7.5"), mpq_class(15, 2));
  EXPECT_THROW(ParseAlpha(""), UsageError);
  EXPECT_THROW(ParseAlpha("1/0"), UsageError);
  EXPECT_THROW(ParseAlpha("abc"), UsageError);
}

TEST(CliTest, ThresholdAndCensus) {
  const Invocation t = Invoke({"threshold", "--n-min", "4", "--n-max", "12"});
  EXPECT_EQ(t.code, kExitPass) << t.err;
  EXPECT_EQ(Lines(t.out).back().rfind("# sandwich_violations=0", 0), 0u);
  const Invocation c = Invoke({"census", "--lengths", "4,6,8"});
  EXPECT_EQ(c.code, kExitPass) << c.err;
  EXPECT_EQ(DropFirstLine(c.out),
            "length,members,header_classes\n4,16,4\n6,64,8\n8,256,8\n");
}

TEST(CliTest, BiasAndPermutation) {
  const Invocation b = Invoke({"bias", "--k", "3", "--range", "3"});
  EXPECT_EQ(b.code, kExitPass) << b.err;
  const auto lines = Lines(b.out);
  EXPECT_EQ(lines[1], "index,count,probability,deviation");
  EXPECT_EQ(lines[2].rfind("0,3,3/8,", 0), 0u);
  EXPECT_EQ(lines.back(), "# max_deviation=1/12 bound=1/4 ok=1");

  const Invocation p = Invoke({"permutation", "--n", "3"});
  EXPECT_EQ(p.code, kExitPass) << p.err;
  EXPECT_EQ(Lines(p.out).size(), 1u + 1u + 6u + 1u);
}

TEST(CliTest, ExperimentJson) {
  const Invocation r = Invoke({"experiment", "--n", "2", "--trials", "1000", "--seed", "5"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  const auto header = nlohmann::json::parse(lines[0]);
  EXPECT_EQ(header["owflab"], "experiment");
  EXPECT_EQ(header["config"]["seed"], 5);
  const auto report = nlohmann::json::parse(lines[1]);
  for (const char* key : {"params", "miss0", "miss1", "exact0", "exact1",
                          "criterion_value", "e_ell_frequency",
                          "bits_consumed"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  EXPECT_EQ(report["oracle"], "sq");
  EXPECT_EQ(report["params"]["N"], 16);
  EXPECT_DOUBLE_EQ(report["exact0"].get<double>(), 0.125);
}

TEST(CliTest, OwfFeasibleAndInfeasible) {
  const Invocation ok = Invoke({"owf", "--beta", "1", "--input", "0110001"});
  ASSERT_EQ(ok.code, kExitPass) << ok.err;
  const auto report = nlohmann::json::parse(Lines(ok.out)[1]);
  EXPECT_EQ(report["sets"], nlohmann::json::parse("[[1]]"));
  EXPECT_EQ(report["bits_consumed"], 3);

  const Invocation bad = Invoke({"owf", "--beta", "1", "--ell", "169"});
  EXPECT_EQ(bad.code, kExitViolation);
  const auto err = nlohmann::json::parse(Lines(bad.out)[1]);
  EXPECT_EQ(err["feasible_n"], 1);

  const Invocation seeded = Invoke({"owf", "--beta", "1", "--n", "2"});
  ASSERT_EQ(seeded.code, kExitPass) << seeded.err;
  EXPECT_EQ(nlohmann::json::parse(Lines(seeded.out)[1])["ell"], 170);
}

TEST(CliTest, Determinism) {
  const Invocation a = Invoke({"experiment", "--n", "3", "--trials", "1000"});
  const Invocation b = Invoke({"experiment", "--n", "3", "--trials", "1000",
                        "--threads", "2"});
  ASSERT_EQ(a.code, kExitPass);
  ASSERT_EQ(b.code, kExitPass);
  EXPECT_EQ(Lines(a.out)[1], Lines(b.out)[1]);
}

TEST(CliTest, ConfigFileWithFlagsOverriding) {
  const std::string path = ::testing::TempDir() + "owflab_cli_config.json";
  {
    std::ofstream f(path);
    f << R"({"limit": 5, "seed": 3, "oracle": "odd"})";
  }
  const Invocation r = Invoke({"density", "--config", path, "--limit", "7"});
  ASSERT_EQ(r.code, kExitViolation);  // odd words break the sqrt ceiling
  const auto lines = Lines(r.out);
  EXPECT_EQ(lines.size(), 1u + 1u + 7u + 1u);
  EXPECT_NE(lines[0].find("\"seed\":3"), std::string::npos);
  EXPECT_NE(lines[0].find("\"limit\":7"), std::string::npos);

  {
    std::ofstream f(path);
    f << R"({"limitt": 5})";
  }
  EXPECT_EQ(Invoke({"density", "--config", path}).code, kExitUsage);
  EXPECT_EQ(Invoke({"density", "--config", path + ".missing"}).code, kExitUsage);
  std::remove(path.c_str());
}

TEST(CliTest, OutFile) {
  const std::string path = ::testing::TempDir() + "owflab_cli_out.csv";
  const Invocation r = Invoke({"census", "--lengths", "4", "--out", path});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(DropFirstLine(buf.str()), "length,members,header_classes\n4,16,4\n");
  std::remove(path.c_str());
}

}  // namespace
}  // namespace owflab::cli
