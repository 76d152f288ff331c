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

#include "phydit/cli.hpp"

#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "phydit/corpus.hpp"
#include "phydit/cpd.hpp"
#include "phydit/error.hpp"
#include "phydit/fleet.hpp"
#include "phydit/io.hpp"
#include "phydit/matcher.hpp"
#include "phydit/sdd.hpp"
#include "phydit/td.hpp"

namespace phydit {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string taxonomy_path;
  std::optional<Taxonomy> taxonomy;

  const Taxonomy& tax() {
    if (!taxonomy) taxonomy = Taxonomy::load(taxonomy_path.empty() ? default_taxonomy_path() : fs::path(taxonomy_path));
    return *taxonomy;
  }
};

// Returns kDiagnostics when any error-severity entry is present.
int print_diagnostics(Context& ctx, const std::string& file, const Diagnostics& diags) {
  bool failed = false;
  for (const Diagnostic& d : diags) {
    ctx.out << file << ": " << d << "\n";
    failed = failed || d.severity == Severity::kError;
  }
  if (diags.empty()) ctx.out << file << ": ok\n";
  return failed ? kDiagnostics : kOk;
}

int run_validate(Context& ctx, const std::string& kind, const std::string& file) {
  const std::string text = read_text_file(file);
  if (kind == "sdd") return print_diagnostics(ctx, file, validate_sdd(parse_sdd(text, ctx.tax()), ctx.tax()));
  if (kind == "cpd") return print_diagnostics(ctx, file, validate_cpd(parse_cpd(text, ctx.tax()), ctx.tax()));
  return print_diagnostics(ctx, file, validate_td(parse_td(text, ctx.tax()), ctx.tax()));
}

bool looks_like_td(const std::string& text) {
  const auto j = ordered_json::parse(text, nullptr, false);
  return j.is_object() && (j.contains("@context") || j.contains("properties") || j.contains("actions"));
}

ThingDescription load_thing(Context& ctx, const fs::path& file, const std::string& as) {
  const std::string text = read_text_file(file);
  const bool td = as == "td" || (as == "auto" && looks_like_td(text));
  try {
    return td ? parse_td(text, ctx.tax()) : synthesize_td(parse_sdd(text, ctx.tax()), ctx.tax());
  } catch (const Error& e) {
    throw Error(file.string() + ": " + e.what());
  }
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      for (const fs::path& p : list_json_files(in)) files.push_back(p);
    } else {
      files.emplace_back(in);
    }
  }
  return files;
}

std::vector<ControlProgramDesc> load_library(Context& ctx, const std::string& dir) {
  return load_cpd_library(dir, ctx.tax());
}

void print_fleet(Context& ctx, const FleetSummary& summary, bool json, bool details) {
  if (json) {
    ctx.out << fleet_summary_to_json(summary) << "\n";
    return;
  }
  if (details) ctx.out << render_reports(summary.reports) << "\n";
  ctx.out << render_summaries(summary.summaries);
  for (const FetchFailure& f : summary.failures) ctx.out << "fetch failed: " << f.url << ": " << f.message << "\n";
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error("--listen expects host:port, got '" + listen + "'");
  return {listen.substr(0, colon), std::stoi(listen.substr(colon + 1))};
}

int run_serve(Context& ctx, const std::string& manifest_path, const std::string& listen, bool distinct,
              const std::vector<std::string>& failing) {
  FleetOptions options;
  if (!listen.empty()) std::tie(options.host, options.port) = split_listen(listen);
  options.distinct_ports = distinct;
  options.failing_twins.insert(failing.begin(), failing.end());
  std::vector<Twin> twins = load_twins(FleetManifest::load(manifest_path), ctx.tax());
  const std::size_t count = twins.size();

  // Block before the server threads exist so they inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  FleetServer server(std::move(twins), ctx.tax(), options);
  server.start();
  ctx.out << "serving " << count << " twins at " << server.root_url() << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  ctx.err << "stopped on signal " << received << "\n";
  return kOk;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Match control programs to building systems described with physical metadata", "phydit"};
  app.require_subcommand(1);
  Context ctx{out, err, {}, std::nullopt};
  app.add_option("--taxonomy", ctx.taxonomy_path, "Taxonomy file (default: $PHYDIT_TAXONOMY or the shipped one)");

  std::string kind, file, output, as = "auto", library, corpus_dir, manifest, listen, root_url;
  std::vector<std::string> inputs, failing;
  bool json = false, details = false, distinct = false, no_component = false;
  std::uint64_t seed = 42;
  std::optional<std::string> base;
  CrawlOptions crawl;
  int timeout_ms = static_cast<int>(crawl.timeout.count());

  auto* validate = app.add_subcommand("validate", "Check an SDD, CPD or TD document");
  validate->add_option("kind", kind, "Document kind")->required()->check(CLI::IsMember({"sdd", "cpd", "td"}));
  validate->add_option("file", file, "Document")->required()->check(CLI::ExistingFile);

  auto* synth = app.add_subcommand("synth", "Synthesize a TD from an SDD");
  synth->add_option("sdd", file, "System design description")->required()->check(CLI::ExistingFile);
  synth->add_option("-o,--output", output, "Write the TD here instead of stdout");
  synth->add_option("--base", base, "Base URL recorded in the TD");

  auto* match_cmd = app.add_subcommand("match", "Match TDs or SDDs against a CPD library");
  match_cmd->add_option("inputs", inputs, "TD/SDD files or directories of them")->required()->check(CLI::ExistingPath);
  match_cmd->add_option("--library", library, "Directory of CPD files")->required()->check(CLI::ExistingDirectory);
  match_cmd->add_option("--as", as, "Input kind")->capture_default_str()->check(CLI::IsMember({"auto", "td", "sdd"}));
  match_cmd->add_flag("--json", json, "Machine-readable output");
  match_cmd->add_flag("--details", details, "Print every TD x CPD report");
  match_cmd->add_flag("--no-component", no_component, "Ignore component classes when comparing variables");

  auto* serve = app.add_subcommand("serve", "Serve the TDs of a fleet over HTTP");
  serve->add_option("--manifest", manifest, "Fleet manifest")->required()->check(CLI::ExistingFile);
  serve->add_option("--listen", listen, "host:port of the root server (port 0 picks one)");
  serve->add_flag("--distinct-ports", distinct, "One server per twin");
  serve->add_option("--fail", failing, "Twin ids that answer 503");

  auto* crawl_cmd = app.add_subcommand("crawl", "Fetch every TD of a fleet and match it");
  crawl_cmd->add_option("url", root_url, "Root URL of the fleet service")->required();
  crawl_cmd->add_option("--library", library, "Directory of CPD files")->required()->check(CLI::ExistingDirectory);
  crawl_cmd->add_option("--timeout-ms", timeout_ms, "Per-request timeout")->capture_default_str()->check(CLI::PositiveNumber);
  crawl_cmd->add_option("--retries", crawl.retries, "Extra attempts per twin")->capture_default_str()->check(CLI::NonNegativeNumber);
  crawl_cmd->add_option("--parallel", crawl.parallel, "Concurrent fetches")->capture_default_str()->check(CLI::PositiveNumber);
  crawl_cmd->add_flag("--json", json, "Machine-readable output");
  crawl_cmd->add_flag("--details", details, "Print every TD x CPD report");

  auto* corpus = app.add_subcommand("corpus", "Evaluation corpus");
  corpus->require_subcommand(1);
  auto* gen = corpus->add_subcommand("gen", "Generate the AHU corpus");
  gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen->add_option("-o,--output", output, "Output directory")->required();

  auto* ablate = app.add_subcommand("ablate", "Metadata ablation study over a corpus");
  ablate->add_option("--corpus", corpus_dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  ablate->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (validate->parsed()) return run_validate(ctx, kind, file);

    if (synth->parsed()) {
      SystemDesign design = parse_sdd(read_text_file(file), ctx.tax());
      if (base) design.base = *base;
      const std::string td = serialize_td(synthesize_td(design, ctx.tax()));
      if (output.empty()) out << td << "\n";
      else write_text_file(output, td + "\n");
      return kOk;
    }

    if (match_cmd->parsed()) {
      std::vector<ThingDescription> tds;
      for (const fs::path& p : expand_inputs(inputs)) tds.push_back(load_thing(ctx, p, as));
      MatchOptions options;
      options.compare_component = !no_component;
      const FleetSummary summary = match_offline(std::move(tds), load_library(ctx, library), ctx.tax(), options);
      if (json) {
        ordered_json j = ordered_json::object();
        j["summaries"] = ordered_json::parse(summaries_to_json(summary.summaries));
        j["reports"] = ordered_json::parse(reports_to_json(summary.reports));
        out << j.dump(2) << "\n";
      } else {
        print_fleet(ctx, summary, false, details || summary.summaries.size() == 1);
      }
      return kOk;
    }

    if (serve->parsed()) return run_serve(ctx, manifest, listen, distinct, failing);

    if (crawl_cmd->parsed()) {
      crawl.timeout = std::chrono::milliseconds(timeout_ms);
      const FleetSummary summary = crawl_and_match(root_url, load_library(ctx, library), ctx.tax(), crawl);
      print_fleet(ctx, summary, json, details);
      return summary.failures.empty() ? kOk : kDiagnostics;
    }

    if (gen->parsed()) {
      const CorpusBundle bundle = generate_corpus(seed, ctx.tax());
      write_corpus(bundle, output);
      out << "wrote " << bundle.sdds.size() << " SDDs and " << bundle.cpds.size() << " CPDs to " << output << "\n";
      return kOk;
    }

    if (ablate->parsed()) {
      const AblationReport report = ablation_study(load_corpus(corpus_dir, ctx.tax()), ctx.tax());
      out << (json ? ablation_to_json(report) + "\n" : render_ablation_table(report));
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDiagnostics;
  }
  err << app.help();
  return kUsage;
}

int cli_dispatch(int argc, const char* const* argv) { return cli_dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace phydit
