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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "phydit/corpus.hpp"
#include "phydit/matcher.hpp"
#include "phydit/td.hpp"

namespace phydit {
namespace {

const Taxonomy& tax() {
  static const Taxonomy t = Taxonomy::load(PHYDIT_BENCH_TAXONOMY);
  return t;
}

const CorpusBundle& corpus() {
  static const CorpusBundle b = generate_corpus(42, tax());
  return b;
}

const std::vector<ThingDescription>& tds() {
  static const std::vector<ThingDescription> v = [] {
    std::vector<ThingDescription> out;
    for (const SystemDesign& s : corpus().sdds) out.push_back(synthesize_td(s, tax()));
    return out;
  }();
  return v;
}

void BM_SubclassOf(benchmark::State& state) {
  const auto& cls = tax().classes();
  std::size_t i = 0, hits = 0;
  for (auto _ : state) {
    hits += tax().subclass_of(cls[i % cls.size()], cls[(i * 7 + 3) % cls.size()]);
    ++i;
  }
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_SubclassOf);

void BM_BuildRandomDag(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  TaxonomyBuilder b;
  b.add_prefix("d", "urn:d:");
  std::vector<Iri> cls;
  for (std::size_t i = 0; i < n; ++i) {
    cls.push_back(b.prefixes().resolve("d:N" + std::to_string(i)));
    b.declare(cls.back());
  }
  for (std::size_t i = 1; i < n; ++i)
    for (int k = 0; k < 2; ++k) b.add_subclass(cls[i], cls[rng() % i]);
  for (auto _ : state) benchmark::DoNotOptimize(b.build());
}
BENCHMARK(BM_BuildRandomDag)->Arg(50)->Arg(200)->Arg(1000);

void BM_SynthesizeTd(benchmark::State& state) {
  const SystemDesign& s = corpus().sdds[0];
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_td(s, tax()));
}
BENCHMARK(BM_SynthesizeTd);

void BM_TdRoundTrip(benchmark::State& state) {
  const ThingDescription& td = tds()[0];
  for (auto _ : state) benchmark::DoNotOptimize(parse_td(serialize_td(td), tax()));
}
BENCHMARK(BM_TdRoundTrip);

void BM_MatchPair(benchmark::State& state) {
  const ThingDescription& td = tds()[0];
  const ControlProgramDesc& cpd = corpus().cpds[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(match(td, cpd, tax()));
}
BENCHMARK(BM_MatchPair)->DenseRange(0, 10, 5);

void BM_MatchAllCorpus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(match_all(tds(), corpus().cpds, tax()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tds().size() * corpus().cpds.size()));
}
BENCHMARK(BM_MatchAllCorpus)->Unit(benchmark::kMillisecond);

void BM_AblationStudy(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ablation_study(corpus(), tax()));
}
BENCHMARK(BM_AblationStudy)->Unit(benchmark::kMillisecond);

void BM_GenerateCorpus(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_corpus(seed++, tax()));
}
BENCHMARK(BM_GenerateCorpus)->Unit(benchmark::kMillisecond);

void BM_BipartiteMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  for (auto& row : adj)
    for (std::size_t j = 0; j < n; ++j) row[j] = rng() % 3 == 0;
  for (auto _ : state) benchmark::DoNotOptimize(max_bipartite_matching(adj, n));
}
BENCHMARK(BM_BipartiteMatching)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
}  // namespace phydit

BENCHMARK_MAIN();
