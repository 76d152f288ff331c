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

#include <iostream>

#include "phydit/cpd.hpp"
#include "phydit/io.hpp"
#include "phydit/matcher.hpp"
#include "phydit/sdd.hpp"
#include "phydit/td.hpp"

// argv: taxonomy, sdd, cpd. Exits 0 when the synthesized TD matches.
int main(int argc, char** argv) {
  if (argc != 4) return 2;
  const phydit::Taxonomy tax = phydit::Taxonomy::load(argv[1]);
  const auto sdd = phydit::parse_sdd(phydit::read_text_file(argv[2]), tax);
  const auto cpd = phydit::parse_cpd(phydit::read_text_file(argv[3]), tax);
  const auto report = phydit::match(phydit::synthesize_td(sdd, tax), cpd, tax);
  std::cout << report.td_id << " / " << report.cpd_id << ": "
            << (report.overall ? "match" : "no match") << "\n";
  return report.overall ? 0 : 1;
}
