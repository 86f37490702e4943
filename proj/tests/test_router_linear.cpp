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

#include <set>
#include <utility>

#include "lnndqc/benchgen.hpp"
#include "lnndqc/router_linear.hpp"
#include "lnndqc/sim.hpp"
#include "support/exhaustive_router.hpp"

using namespace lnndqc;

namespace {

constexpr double kTol = 1e-9;

LnnTopology path(std::size_t n) {
  std::vector<std::size_t> line(n);
  for (std::size_t i = 0; i < n; ++i) line[i] = i;
  return make_lnn(n, line);
}

bool equivalent(const Circuit& c, const CompiledCircuit& r) {
  return routed_equivalent(c, r.circuit, r.initial_layout.log2phys(), r.final_layout.log2phys(), kTol, 6)
      .equivalent;
}

Circuit complete_qaoa(std::size_t n, std::size_t p = 1) { return qaoa(erdos_renyi_graph(n, 1.0, 0), p, 3); }

}  // namespace

TEST_CASE("place fills the backbone in line order", "[router_linear]") {
  const auto topo = to_lnn(heavy_hex(3));
  const auto l = place(qft(5), topo);
  for (std::size_t i = 0; i < 5; ++i) CHECK(l.phys(i) == topo.line[i]);
  CHECK_THROWS_AS(place(qft(24), topo), CapacityError);
}

TEST_CASE("greedy needs no SWAP for adjacent operands", "[router_linear]") {
  Circuit c(3);
  c.add(gates::cx(0, 1)).add(gates::cx(1, 2));
  const auto r = route_linear(c, path(3), RoutingStrategy::Greedy);
  CHECK(r.swap_count == 0);
  CHECK(r.circuit.size() == 2);
}

TEST_CASE("greedy needs one SWAP at distance two", "[router_linear]") {
  Circuit c(3);
  c.add(gates::cx(0, 2));
  const auto r = route_linear(c, path(3), RoutingStrategy::Greedy);
  CHECK(r.swap_count == 1);
  CHECK(r.circuit.count(GateKind::SWAP) == 1);
  CHECK(equivalent(c, r));
}

TEST_CASE("greedy qft(10) stays near the line lower bound", "[router_linear]") {
  const auto c = qft(10);
  const auto r = route_linear(c, path(10), RoutingStrategy::Greedy);
  CHECK(r.swap_count <= 45);
  CHECK(equivalent(c, r));
}

TEST_CASE("swap network on two qubits", "[router_linear]") {
  const auto r = route_linear(complete_qaoa(2), path(2), RoutingStrategy::SwapNetwork);
  CHECK(r.swap_count <= 1);
}

TEST_CASE("swap network emits every RZZ on an adjacent pair", "[router_linear]") {
  const auto c = complete_qaoa(4);
  const auto topo = path(4);
  const auto r = route_linear(c, topo, RoutingStrategy::SwapNetwork);
  CHECK(r.circuit.count(GateKind::RZZ) == 6);
  CHECK(conformance_violations(r.circuit, topo.graph).empty());
  Layout l = r.initial_layout;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& g : r.circuit.gates()) {
    if (g.kind == GateKind::SWAP) {
      l.swap_physical(g.qubits[0], g.qubits[1]);
    } else if (g.kind == GateKind::RZZ) {
      CHECK(topo.graph.has_edge(g.qubits[0], g.qubits[1]));
      seen.insert(std::minmax(l.logical(g.qubits[0]), l.logical(g.qubits[1])));
    }
  }
  CHECK(seen.size() == 6);
  CHECK(l == r.final_layout);
  CHECK(equivalent(c, r));
}

TEST_CASE("swap network preserves semantics", "[router_linear]") {
  for (const auto& c : {qft(5), complete_qaoa(6, 2), qaoa(ring_graph(6), 1, 1)}) {
    const auto r = route_linear(c, path(c.num_qubits()), RoutingStrategy::SwapNetwork);
    CHECK(equivalent(c, r));
  }
}

TEST_CASE("recommended strategy", "[router_linear]") {
  CHECK(recommended_strategy(complete_qaoa(6)) == RoutingStrategy::SwapNetwork);
  CHECK(recommended_strategy(qft(6)) == RoutingStrategy::SwapNetwork);
  CHECK(recommended_strategy(qaoa(ring_graph(6), 1, 0)) == RoutingStrategy::Greedy);
}

TEST_CASE("routed output is conformant and never touches dangling qubits", "[router_linear]") {
  const auto topo = to_lnn(heavy_hex(3));
  for (auto s : {RoutingStrategy::Greedy, RoutingStrategy::SwapNetwork}) {
    for (const auto& c : {qft(12), qaoa(three_regular_graph(12, 1), 2, 0)}) {
      const auto r = route_linear(c, topo, s);
      CHECK(conformance_violations(r.circuit, topo.graph).empty());
      for (const auto& g : r.circuit.gates()) {
        for (auto q : g.qubits) CHECK_FALSE(topo.is_dangling(q));
      }
      for (auto p : r.final_layout.log2phys()) CHECK_FALSE(topo.is_dangling(p));
      CHECK(r.final_layout.consistent());
    }
  }
}

TEST_CASE("SWAP accounting", "[router_linear]") {
  const auto c = qft(8);
  const auto r = route_linear(c, path(8), RoutingStrategy::Greedy);
  CHECK(r.circuit.count(GateKind::SWAP) == r.swap_count);
  CHECK(gate_count(r.circuit, SwapAccounting::SwapAsOne) == c.size() + r.swap_count);
  CHECK(gate_count(r.circuit, SwapAccounting::SwapAsThreeCX) == c.size() + 3 * r.swap_count);
}

TEST_CASE("greedy stays close to the fixed-layout optimum", "[router_linear]") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(5);
    for (int k = 0; k < 6; ++k) {
      const auto a = rng.below(5);
      auto b = rng.below(4);
      if (b >= a) ++b;
      c.add(gates::cx(a, b));
    }
    const auto r = route_linear(c, path(5), RoutingStrategy::Greedy);
    CHECK(equivalent(c, r));
    CHECK(conformance_violations(r.circuit, path(5).graph).empty());
    const auto best = testing::exhaustive_min_swaps(c, 5, path(5).graph.edges(), {.free_layout = false});
    CHECK(r.swap_count >= best);
    CHECK(r.swap_count <= best + 2);
  }
}
