// Copyright 2026 The lnndqc Authors
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

#include <catch_amalgamated.hpp>

#include "lnndqc/benchgen.hpp"
#include "lnndqc/router_sabre.hpp"
#include "lnndqc/sim.hpp"
#include "support/exhaustive_router.hpp"

using namespace lnndqc;

namespace {

CouplingGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return CouplingGraph(n, e);
}

RouterConfig fixed(std::vector<std::size_t> layout) {
  RouterConfig cfg;
  cfg.initial_layout = std::move(layout);
  return cfg;
}

}  // namespace

TEST_CASE("sabre leaves conformant circuits alone", "[sabre]") {
  Circuit c(3);
  c.add(gates::cx(0, 1)).add(gates::cx(1, 2)).add(gates::h(0));
  const auto r = route_sabre(c, path_graph(3), fixed({0, 1, 2}));
  CHECK(r.swap_count == 0);
  CHECK(r.circuit.size() == 3);
}

TEST_CASE("sabre inserts one SWAP at distance two", "[sabre]") {
  Circuit c(3);
  c.add(gates::cx(0, 2));
  const auto r = route_sabre(c, path_graph(3), fixed({0, 1, 2}));
  CHECK(r.swap_count == 1);
}

TEST_CASE("sabre matches the optimum for qft(4) on a path", "[sabre]") {
  const auto c = qft(4);
  const auto g = path_graph(4);
  const auto best = testing::exhaustive_min_swaps(c, 4, g.edges());
  CHECK(best == 3);
  RouterConfig cfg;
  cfg.trials = 8;
  const auto r = route_sabre(c, g, cfg);
  CHECK(r.swap_count >= best);
  CHECK(r.swap_count <= best + 1);
}

TEST_CASE("sabre is deterministic and correct on heavy-hex", "[sabre]") {
  const auto g = heavy_hex(3);
  for (const auto& c : {qft(7), qaoa(three_regular_graph(8, 2), 2, 1)}) {
    RouterConfig cfg;
    cfg.seed = 4;
    const auto a = route_sabre(c, g, cfg), b = route_sabre(c, g, cfg);
    CHECK(a.circuit == b.circuit);
    CHECK(a.initial_layout == b.initial_layout);
    CHECK(conformance_violations(a.circuit, g).empty());
    CHECK(a.circuit.count(GateKind::SWAP) == a.swap_count);
    CHECK(routed_equivalent(c, a.circuit, a.initial_layout.log2phys(), a.final_layout.log2phys(), 1e-9, 6)
              .equivalent);
  }
}

TEST_CASE("sabre rejects bad input", "[sabre]") {
  CHECK_THROWS_AS(route_sabre(qft(5), path_graph(4), {}), CapacityError);
  CHECK_THROWS_AS(route_sabre(qft(2), CouplingGraph(4, {{0, 1}, {2, 3}}), {}), UnsupportedTopology);
  CHECK_THROWS_AS(route_sabre(qft(3), path_graph(4), fixed({0, 1})), std::invalid_argument);
  RouterConfig neg;
  neg.extended_weight = -1;
  CHECK_THROWS_AS(route_sabre(qft(3), path_graph(4), neg), std::invalid_argument);
  RouterConfig zero;
  zero.trials = 0;
  CHECK_THROWS_AS(route_sabre(qft(3), path_graph(4), zero), std::invalid_argument);
}
