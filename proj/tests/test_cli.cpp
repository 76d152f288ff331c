// Copyright 2026 The PhyDiT Authors
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

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phydit/cli.hpp"
#include "support.hpp"

namespace phydit {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage = {"phydit", "--taxonomy", PHYDIT_TEST_TAXONOMY};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::filesystem::path& corpus_dir() {
  static const std::filesystem::path dir = [] {
    auto d = testing::scratch("cli-corpus");
    EXPECT_EQ(run({"corpus", "gen", "--seed", "42", "-o", d.string()}).code, 0);
    return d;
  }();
  return dir;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  const CliRun r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"validate", "xyz", testing::data("boiler.sdd.json").string()}).code, 2);
  EXPECT_EQ(run({"match", testing::data("boiler.sdd.json").string()}).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, SynthThenValidate) {
  const auto dir = testing::scratch("cli-synth");
  const std::string td = (dir / "boiler.td.json").string();
  ASSERT_EQ(run({"synth", testing::data("boiler.sdd.json").string(), "-o", td}).code, 0);
  const CliRun v = run({"validate", "td", td});
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  EXPECT_NE(v.out.find(": ok"), std::string::npos);
}

TEST(Cli, ValidateReportsDiagnostics) {
  const auto dir = testing::scratch("cli-invalid");
  std::string text = testing::fixture("boiler.sdd.json");
  text.replace(text.find("\"hasMinValue\": 50"), 17, "\"note\": 1");
  write_text_file(dir / "bad.json", text);
  const CliRun r = run({"validate", "sdd", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE((r.out + r.err).find("error"), std::string::npos);
  EXPECT_EQ(run({"validate", "cpd", testing::data("combustion-control.cpd.json").string()}).code, 0);
}

TEST(Cli, MatchCorpusUnitAgainstLibrary) {
  const std::string sdd = (corpus_dir() / "sdd" / "AHU-01.json").string();
  const CliRun r = run({"match", sdd, "--library", (corpus_dir() / "cpd").string(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["summaries"].size(), 1u);
  EXPECT_EQ(j["summaries"][0]["outcome"], "unique");
  const auto truth = nlohmann::json::parse(read_text_file(corpus_dir() / "ground-truth.json"));
  EXPECT_EQ(j["summaries"][0]["matches"], truth["entries"][0]["expectedMatches"]);
  EXPECT_EQ(j["reports"].size(), 11u);
}

TEST(Cli, MatchWholeCorpusCounts) {
  const CliRun r = run({"match", (corpus_dir() / "sdd").string(), "--library", (corpus_dir() / "cpd").string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("unique 31, multi 1, none 2"), std::string::npos);
}

TEST(Cli, EmptyLibraryIsANoMatch) {
  const auto lib = testing::scratch("cli-empty-lib");
  const CliRun r = run({"match", testing::data("boiler.sdd.json").string(), "--library", lib.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("none 1"), std::string::npos);
}

TEST(Cli, MatchAcceptsTdInput) {
  const auto lib = testing::scratch("cli-boiler-lib");
  write_text_file(lib / "c.json", testing::fixture("combustion-control.cpd.json"));
  const CliRun r = run({"match", testing::data("boiler-01.plain.td.json").string(), "--library", lib.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fails process"), std::string::npos);
}

TEST(Cli, AblateIsDeterministic) {
  const CliRun a = run({"ablate", "--corpus", corpus_dir().string(), "--json"});
  const CliRun b = run({"ablate", "--corpus", corpus_dir().string(), "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["successfulMatches"], 32);
  const CliRun t = run({"ablate", "--corpus", corpus_dir().string()});
  EXPECT_NE(t.out.find("Action: Actuator type (100%)"), std::string::npos);
}

TEST(Cli, RuntimeErrorsExitOne) {
  const CliRun r = run({"crawl", "http://127.0.0.1:1", "--library", (corpus_dir() / "cpd").string(), "--timeout-ms",
                     "200", "--retries", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

}  // namespace
}  // namespace phydit
