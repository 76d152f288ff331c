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

#include <chrono>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "phydit/corpus.hpp"
#include "phydit/fleet.hpp"
#include "phydit/sdd.hpp"
#include "phydit/td.hpp"
#include "support.hpp"

namespace phydit {
namespace {

using nlohmann::json;
using testing::shipped;

const CorpusBundle& corpus() {
  static const CorpusBundle b = generate_corpus(42, shipped());
  return b;
}

std::vector<Twin> corpus_twins(std::size_t limit = 34) {
  const auto dir = testing::scratch("fleet-corpus");
  write_corpus(corpus(), dir);
  std::vector<Twin> twins = load_twins(FleetManifest::load(dir / "manifest.json"), shipped());
  twins.resize(std::min(limit, twins.size()));
  return twins;
}

std::vector<ThingDescription> corpus_tds() {
  std::vector<ThingDescription> out;
  for (const SystemDesign& s : corpus().sdds) out.push_back(synthesize_td(s, shipped()));
  return out;
}

// host:port/path split for httplib.
std::pair<std::string, std::string> split(const std::string& url) {
  const auto slash = url.find('/', 7);
  return {url.substr(0, slash), slash == std::string::npos ? "/" : url.substr(slash)};
}

httplib::Result get(const std::string& url) {
  auto [origin, path] = split(url);
  httplib::Client cli(origin);
  cli.set_read_timeout(std::chrono::seconds(5));
  return cli.Get(path);
}

TEST(Manifest, ParsesAndResolvesRelativePaths) {
  const FleetManifest m = FleetManifest::parse(
      R"({"twins": [{"id": "a", "sdd": "sdd/a.json"}, {"id": "b", "sdd": "/abs/b.json", "listen": "127.0.0.1:9"}]})",
      "/base");
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.entries[0].sdd_path, std::filesystem::path("/base/sdd/a.json"));
  EXPECT_EQ(m.entries[1].listen, "127.0.0.1:9");
  EXPECT_THROW(FleetManifest::parse(R"({"twins": [{"id": "a", "sdd": "x"}, {"id": "a", "sdd": "y"}]})", "/"), Error);
  EXPECT_THROW(FleetManifest::parse(R"({"twins": [{"sdd": "x"}]})", "/"), Error);
}

TEST(Manifest, LoadFailureNamesTheTwin) {
  const auto dir = testing::scratch("fleet-bad");
  write_text_file(dir / "manifest.json", R"({"twins": [{"id": "ghost", "sdd": "missing.json"}]})");
  try {
    (void)load_twins(FleetManifest::load(dir / "manifest.json"), shipped());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(FleetServer, ServesTdsAndModels) {
  FleetServer server(corpus_twins(3), shipped());
  server.start();
  const auto listing = get(server.root_url() + "/twins");
  ASSERT_TRUE(listing);
  ASSERT_EQ(listing->status, 200);
  const json urls = json::parse(listing->body);
  ASSERT_EQ(urls.size(), 3u);
  for (const auto& u : urls) {
    const auto td = get(u.get<std::string>() + "/td");
    ASSERT_TRUE(td);
    EXPECT_EQ(td->status, 200);
    EXPECT_EQ(td->get_header_value("Content-Type"), "application/td+json");
    const ThingDescription parsed = parse_td(td->body, shipped());
    EXPECT_EQ(parsed.base_url, u.get<std::string>());
    EXPECT_TRUE(validate_td(parsed, shipped()).empty());
    // Immutable snapshot: the same bytes every time.
    EXPECT_EQ(get(u.get<std::string>() + "/td")->body, td->body);
    const auto sdd = get(u.get<std::string>() + "/model/sdd");
    ASSERT_TRUE(sdd);
    EXPECT_EQ(sdd->status, 200);
    EXPECT_EQ(parse_sdd(sdd->body, shipped()).id, parsed.id);
  }
  EXPECT_EQ(get(server.root_url() + "/nowhere")->status, 404);
  EXPECT_EQ(get(server.root_url() + "/twin/AHU-99/td")->status, 404);
  server.stop();
}

TEST(FleetServer, DistinctPortsGiveEachTwinItsOwnOrigin) {
  FleetOptions opts;
  opts.distinct_ports = true;
  FleetServer server(corpus_twins(3), shipped(), opts);
  server.start();
  const auto urls = server.twin_urls();
  ASSERT_EQ(urls.size(), 3u);
  EXPECT_NE(split(urls[0]).first, split(urls[1]).first);
  for (const std::string& u : urls) EXPECT_EQ(get(u + "/td")->status, 200);
  const FleetSummary s = crawl_and_match(server.root_url(), corpus().cpds, shipped());
  EXPECT_EQ(s.summaries.size(), 3u);
  EXPECT_TRUE(s.failures.empty());
}

TEST(Crawl, OnlineEqualsOffline) {
  FleetServer server(corpus_twins(), shipped());
  server.start();
  const auto begin = std::chrono::steady_clock::now();
  const FleetSummary online = crawl_and_match(server.root_url(), corpus().cpds, shipped());
  EXPECT_LT(std::chrono::steady_clock::now() - begin, std::chrono::seconds(5));
  const FleetSummary offline = match_offline(corpus_tds(), corpus().cpds, shipped());
  EXPECT_TRUE(online.failures.empty());
  EXPECT_EQ(online.summaries.size(), 34u);
  EXPECT_EQ(fleet_summary_to_json(online), fleet_summary_to_json(offline));
  // Parallelism does not change the result.
  CrawlOptions serial;
  serial.parallel = 1;
  EXPECT_EQ(fleet_summary_to_json(crawl_and_match(server.root_url(), corpus().cpds, shipped(), serial)),
            fleet_summary_to_json(offline));
}

TEST(Crawl, FailingTwinIsRecordedAndSkipped) {
  FleetOptions opts;
  opts.failing_twins = {"AHU-05"};
  FleetServer server(corpus_twins(), shipped(), opts);
  server.start();
  CrawlOptions fast;
  fast.retries = 1;
  const FleetSummary s = crawl_and_match(server.root_url(), corpus().cpds, shipped(), fast);
  EXPECT_EQ(s.summaries.size(), 33u);
  ASSERT_EQ(s.failures.size(), 1u);
  EXPECT_NE(s.failures[0].url.find("AHU-05"), std::string::npos);

  std::vector<ThingDescription> rest;
  for (ThingDescription& td : corpus_tds())
    if (td.id != "AHU-05") rest.push_back(std::move(td));
  EXPECT_EQ(summaries_to_json(s.summaries),
            summaries_to_json(match_offline(rest, corpus().cpds, shipped()).summaries));
}

TEST(Crawl, EmptyFleetGivesEmptySummary) {
  FleetServer server({}, shipped());
  server.start();
  const FleetSummary s = crawl_and_match(server.root_url(), corpus().cpds, shipped());
  EXPECT_TRUE(s.summaries.empty());
  EXPECT_TRUE(s.failures.empty());
}

TEST(Crawl, UnreachableRootThrows) {
  std::string url;
  {
    FleetServer server({}, shipped());
    server.start();
    url = server.root_url();
  }
  CrawlOptions quick;
  quick.timeout = std::chrono::milliseconds(200);
  quick.retries = 0;
  EXPECT_THROW((void)crawl_and_match(url, corpus().cpds, shipped(), quick), Error);
}

}  // namespace
}  // namespace phydit
