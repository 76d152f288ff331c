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

#include "phydit/fleet.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

// The default backlog of 5 makes a parallel crawl wait on SYN retransmits.
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include <httplib.h>

#include "json_io.hpp"
#include "phydit/io.hpp"
#include "phydit/sdd.hpp"

namespace phydit {
namespace {

using detail::Json;

constexpr const char* kTdMime = "application/td+json";
constexpr const char* kJsonMime = "application/json";

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

UrlParts split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw Error("not an absolute URL: '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string join(const std::string& base, std::string_view tail) {
  std::string out = base;
  while (!out.empty() && out.back() == '/') out.pop_back();
  return out + std::string(tail);
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error("listen address '" + listen + "' lacks a port");
  return {listen.substr(0, colon), std::stoi(listen.substr(colon + 1))};
}

// One GET with retries. Returns the body or sets `error`.
std::optional<std::string> fetch(const std::string& url, const CrawlOptions& o, std::string& error) {
  const UrlParts parts = split_url(url);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(o.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(o.timeout - secs);
  for (int attempt = 0; attempt <= std::max(0, o.retries); ++attempt) {
    httplib::Client client(parts.origin);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_keep_alive(false);
    auto res = client.Get(parts.path);
    if (!res) {
      error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      error = "HTTP " + std::to_string(res->status);
      continue;
    }
    return res->body;
  }
  error += " after " + std::to_string(std::max(0, o.retries) + 1) + " attempt(s)";
  return std::nullopt;
}

}  // namespace

FleetManifest FleetManifest::parse(std::string_view json, const std::filesystem::path& base_dir) {
  const Json j = detail::parse_json(json);
  detail::require_object(j, "");
  const Json* twins = detail::find(j, "twins");
  if (twins == nullptr || !twins->is_array()) throw ParseError("/twins", "expected an array");
  FleetManifest m;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < twins->size(); ++i) {
    const std::string here = detail::child_path("/twins", i);
    const Json& t = (*twins)[i];
    detail::require_object(t, here);
    detail::check_keys(t, {"id", "sdd", "listen"}, here);
    FleetEntry e;
    e.twin_id = detail::get_string(t, "id", here);
    if (!ids.insert(e.twin_id).second) throw ParseError(here + "/id", "duplicate twin id '" + e.twin_id + "'");
    std::filesystem::path sdd = detail::get_string(t, "sdd", here);
    e.sdd_path = sdd.is_absolute() ? sdd : base_dir / sdd;
    e.listen = detail::get_opt_string(t, "listen", here);
    m.entries.push_back(std::move(e));
  }
  return m;
}

FleetManifest FleetManifest::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.parent_path());
}

std::string FleetManifest::to_json() const {
  Json arr = Json::array();
  for (const FleetEntry& e : entries) {
    Json t = Json::object();
    t["id"] = e.twin_id;
    t["sdd"] = e.sdd_path.generic_string();
    if (e.listen) t["listen"] = *e.listen;
    arr.push_back(std::move(t));
  }
  Json j = Json::object();
  j["twins"] = std::move(arr);
  return detail::dump_json(j);
}

std::vector<Twin> load_twins(const FleetManifest& manifest, const Taxonomy& taxonomy) {
  std::vector<Twin> twins;
  std::string problems;
  for (const FleetEntry& e : manifest.entries) {
    try {
      std::string text = read_text_file(e.sdd_path);
      SystemDesign design = parse_sdd(text, taxonomy);
      std::string errors;
      for (const Diagnostic& d : validate_sdd(design, taxonomy))
        if (d.severity == Severity::kError) errors += "\n    " + d.path + ": " + d.message;
      if (!errors.empty()) {
        problems += "\n  " + e.twin_id + ":" + errors;
        continue;
      }
      twins.push_back({e.twin_id, std::move(design), std::move(text), e.listen});
    } catch (const Error& ex) {
      problems += "\n  " + e.twin_id + ": " + ex.what();
    }
  }
  if (!problems.empty()) throw Error("fleet startup failed:" + problems);
  return twins;
}

struct FleetServer::Impl {
  struct Served {
    std::string id;
    std::string url;
    std::string td_json;
    std::string sdd_json;
    bool failing = false;
    std::optional<std::string> listen;
    SystemDesign design;
    std::unique_ptr<httplib::Server> server;  // distinct-ports mode only
    int port = 0;
  };

  const Taxonomy& taxonomy;
  FleetOptions options;
  httplib::Server root;
  int root_port = 0;
  std::vector<Served> twins;
  std::map<std::string, std::size_t, std::less<>> by_id;
  std::string listing;
  std::vector<std::thread> threads;
  bool running = false;

  Impl(const Taxonomy& t, FleetOptions o) : taxonomy(t), options(std::move(o)) {}

  std::string origin(int port) const { return "http://" + options.host + ":" + std::to_string(port); }

  static void answer_td(const Served& s, httplib::Response& res) {
    if (s.failing) {
      res.status = 503;
      res.set_content("twin unavailable\n", "text/plain");
      return;
    }
    res.set_content(s.td_json, kTdMime);
  }

  static void answer_sdd(const Served& s, httplib::Response& res) {
    res.set_content(s.sdd_json, kJsonMime);
  }

  void bind(httplib::Server& server, const std::string& host, int port, int& bound) {
    if (port == 0) {
      bound = server.bind_to_any_port(host);
      if (bound < 0) throw Error("cannot bind " + host);
    } else {
      if (!server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
      bound = port;
    }
  }
};

FleetServer::FleetServer(std::vector<Twin> twins, const Taxonomy& taxonomy, FleetOptions options)
    : impl_(std::make_unique<Impl>(taxonomy, std::move(options))) {
  std::sort(twins.begin(), twins.end(), [](const Twin& a, const Twin& b) { return a.id < b.id; });
  for (Twin& t : twins) {
    if (impl_->by_id.count(t.id) != 0) throw Error("duplicate twin id '" + t.id + "'");
    impl_->by_id.emplace(t.id, impl_->twins.size());
    Impl::Served s;
    s.id = t.id;
    s.sdd_json = std::move(t.sdd_json);
    s.failing = impl_->options.failing_twins.count(t.id) != 0;
    s.design = std::move(t.design);
    s.listen = t.listen;
    impl_->twins.push_back(std::move(s));
  }
}

FleetServer::~FleetServer() { stop(); }

void FleetServer::start() {
  Impl& m = *impl_;
  if (m.running) return;

  m.bind(m.root, m.options.host, m.options.port, m.root_port);
  if (m.options.distinct_ports) {
    for (Impl::Served& s : m.twins) {
      s.server = std::make_unique<httplib::Server>();
      std::string host = m.options.host;
      int port = 0;
      if (s.listen) std::tie(host, port) = split_listen(*s.listen);
      m.bind(*s.server, host, port, s.port);
      s.url = "http://" + host + ":" + std::to_string(s.port);
    }
  } else {
    for (Impl::Served& s : m.twins) s.url = m.origin(m.root_port) + "/twin/" + s.id;
  }

  // Render every document once; the handlers below only read them.
  Json listing = Json::array();
  for (Impl::Served& s : m.twins) {
    ThingDescription td = synthesize_td(s.design, m.taxonomy);
    td.base_url = s.url;
    s.td_json = serialize_td(td);
    listing.push_back(s.url);
  }
  m.listing = listing.dump(2) + "\n";

  m.root.Get("/twins", [&m](const httplib::Request&, httplib::Response& res) {
    res.set_content(m.listing, kJsonMime);
  });
  m.root.Get(R"(/twin/([^/]+)/td)", [&m](const httplib::Request& req, httplib::Response& res) {
    auto it = m.by_id.find(req.matches[1].str());
    if (it == m.by_id.end()) {
      res.status = 404;
      return;
    }
    Impl::answer_td(m.twins[it->second], res);
  });
  m.root.Get(R"(/twin/([^/]+)/model/sdd)", [&m](const httplib::Request& req, httplib::Response& res) {
    auto it = m.by_id.find(req.matches[1].str());
    if (it == m.by_id.end()) {
      res.status = 404;
      return;
    }
    Impl::answer_sdd(m.twins[it->second], res);
  });
  for (Impl::Served& s : m.twins) {
    if (!s.server) continue;
    const Impl::Served* p = &s;
    s.server->Get("/td", [p](const httplib::Request&, httplib::Response& res) { Impl::answer_td(*p, res); });
    s.server->Get("/model/sdd",
                  [p](const httplib::Request&, httplib::Response& res) { Impl::answer_sdd(*p, res); });
  }

  m.threads.emplace_back([&m] { m.root.listen_after_bind(); });
  for (Impl::Served& s : m.twins)
    if (s.server) m.threads.emplace_back([p = s.server.get()] { p->listen_after_bind(); });
  m.root.wait_until_ready();
  for (Impl::Served& s : m.twins)
    if (s.server) s.server->wait_until_ready();
  m.running = true;
}

void FleetServer::stop() {
  Impl& m = *impl_;
  if (m.threads.empty()) return;
  m.root.stop();
  for (Impl::Served& s : m.twins)
    if (s.server) s.server->stop();
  for (std::thread& t : m.threads) t.join();
  m.threads.clear();
  m.running = false;
}

std::string FleetServer::root_url() const { return impl_->origin(impl_->root_port); }

std::vector<std::string> FleetServer::twin_urls() const {
  std::vector<std::string> out;
  for (const auto& s : impl_->twins) out.push_back(s.url);
  return out;
}

FleetSummary match_offline(std::vector<ThingDescription> tds,
                           const std::vector<ControlProgramDesc>& library,
                           const Taxonomy& taxonomy, const MatchOptions& match_options) {
  std::sort(tds.begin(), tds.end(),
            [](const ThingDescription& a, const ThingDescription& b) { return a.id < b.id; });
  MatchMatrix m = match_all(tds, library, taxonomy, match_options);
  FleetSummary out;
  out.summaries = std::move(m.summaries);
  out.reports = std::move(m.reports);
  return out;
}

FleetSummary crawl_and_match(const std::string& root_url,
                             const std::vector<ControlProgramDesc>& library,
                             const Taxonomy& taxonomy, const CrawlOptions& options,
                             const MatchOptions& match_options) {
  std::string error;
  auto listing = fetch(join(root_url, "/twins"), options, error);
  if (!listing) throw Error("cannot list twins at " + root_url + ": " + error);
  std::vector<std::string> urls;
  try {
    const Json j = Json::parse(*listing);
    if (!j.is_array()) throw Error("twin listing is not a JSON array");
    for (const Json& u : j) urls.push_back(u.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed twin listing at " + root_url + ": " + e.what());
  }

  std::vector<ThingDescription> tds;
  std::vector<FetchFailure> failures;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < urls.size(); i = next++) {
      const std::string url = join(urls[i], "/td");
      std::string err;
      auto body = fetch(url, options, err);
      std::optional<ThingDescription> td;
      if (body) {
        try {
          td = parse_td(*body, taxonomy);
        } catch (const Error& e) {
          err = e.what();
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      if (td) tds.push_back(std::move(*td));
      else failures.push_back({url, err});
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(options.parallel, urls.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  FleetSummary out = match_offline(std::move(tds), library, taxonomy, match_options);
  std::sort(failures.begin(), failures.end(),
            [](const FetchFailure& a, const FetchFailure& b) { return a.url < b.url; });
  out.failures = std::move(failures);
  return out;
}

std::string fleet_summary_to_json(const FleetSummary& summary) {
  Json j = Json::object();
  j["summaries"] = Json::parse(summaries_to_json(summary.summaries));
  Json f = Json::array();
  for (const FetchFailure& x : summary.failures) f.push_back(Json{{"url", x.url}, {"message", x.message}});
  j["failures"] = std::move(f);
  return detail::dump_json(j);
}

}  // namespace phydit
