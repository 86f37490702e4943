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

#include <numeric>

#include "lnndqc/benchgen.hpp"
#include "lnndqc/dqc.hpp"
#include "lnndqc/sim.hpp"

using namespace lnndqc;

namespace {

constexpr double kTol = 1e-9;

// Five backbone qubits with one dangling qubit (5) off node 1.
LnnTopology small_chip() { return make_lnn(6, {0, 1, 2, 3, 4}, {{1, 5}}); }

bool preserves(const Circuit& c, const DistributedCircuit& d) {
  return routed_equivalent(c, d.circuit, d.initial_layout.log2phys(), d.final_layout.log2phys(), kTol, 4)
      .equivalent;
}

double mean_cross(const Circuit& c, const LnnTopology& chip, LinkKind kind, int seeds) {
  double sum = 0;
  for (int s = 0; s < seeds; ++s) {
    sum += static_cast<double>(distribute(c, chip, TeleportMode::StateTeleport, kind, s).cross_group_swaps);
  }
  return sum / seeds;
}

}  // namespace

TEST_CASE("partition splits contiguously", "[dqc]") {
  const auto chip = to_lnn(heavy_hex(3));
  const auto topo = link_chips(chip, chip, LinkKind::DanglingLink, 0);
  const auto p = partition(qft(10), topo);
  CHECK(p.cut_gates.size() == 25);
  for (std::size_t q = 0; q < 10; ++q) CHECK(p.qubit_chip[q] == (q < 5 ? 0u : 1u));
  CHECK(partition(qft(1), topo).cut_gates.empty());
  CHECK(partition(qaoa(ring_graph(10), 1, 0), topo).cut_gates.size() == 2);
  CHECK_THROWS_AS(partition(qft(47), topo), CapacityError);
}

TEST_CASE("no cut gates means no communication", "[dqc]") {
  Circuit c(4);
  c.add(gates::cx(0, 1)).add(gates::cx(2, 3)).add(gates::h(0));
  for (auto mode : {TeleportMode::StateTeleport, TeleportMode::GateTeleport, TeleportMode::Auto}) {
    const auto d = distribute(c, small_chip(), mode, LinkKind::DanglingLink, 0);
    CHECK(d.cross_group_swaps == 0);
    CHECK(d.ebits_consumed == 0);
    CHECK(d.nonlocal_sites.empty());
  }
}

TEST_CASE("one teleported CX uses one e-bit", "[dqc]") {
  Circuit c(2);
  c.add(gates::cx(0, 1));
  const auto d = distribute(c, small_chip(), TeleportMode::GateTeleport, LinkKind::DanglingLink, 0);
  CHECK(d.ebits_consumed == 1);
  CHECK(d.circuit.count(GateKind::EPR_PREP) == 1);
  CHECK(d.circuit.count(GateKind::MEASURE) == 2);
  CHECK(d.circuit.count(GateKind::CORR_X) >= 1);
  CHECK(d.circuit.count(GateKind::CORR_Z) >= 1);
  REQUIRE(d.nonlocal_sites.size() == 1);
  CHECK(d.nonlocal_sites[0].gate == 0);
  CHECK(d.nonlocal_sites[0].mode == TeleportMode::GateTeleport);
  CHECK(preserves(c, d));
}

TEST_CASE("batching shares one e-bit across a common control", "[dqc]") {
  Circuit c(2);
  c.add(gates::cx(0, 1)).add(gates::cz(0, 1)).add(gates::cp(0.4, 0, 1));
  const auto single = distribute(c, small_chip(), TeleportMode::GateTeleport, LinkKind::DanglingLink, 0);
  const auto batched = distribute(c, small_chip(), TeleportMode::GateTeleportBatched, LinkKind::DanglingLink, 0);
  CHECK(single.ebits_consumed == 3);
  CHECK(batched.ebits_consumed == 1);
  CHECK(preserves(c, single));
  CHECK(preserves(c, batched));
}

TEST_CASE("state teleport sequence moves a qubit in every branch", "[dqc]") {
  // q0 sender, q1 sender half, q2 receiver half.
  Circuit c(3, 2);
  for (auto& g : lower_state_teleport(0, 1, 2, 0, 1)) c.add(g);
  Circuit ref(1);
  const auto rep = compare_embedded(ref, c, {0}, {2}, kTol, 10);
  CHECK(rep.equivalent);
  CHECK(rep.branches_checked >= 4 * 10);
}

TEST_CASE("gate teleport sequence applies a remote CX", "[dqc]") {
  // q0 control, q1 control comm, q2 target comm, q3 target.
  Circuit c(4, 2);
  for (auto& g : lower_gate_teleport({gates::cx(0, 3), gates::cp(0.9, 0, 3)}, 1, 2, 0, 1)) c.add(g);
  Circuit ref(2);
  ref.add(gates::cx(0, 1)).add(gates::cp(0.9, 0, 1));
  CHECK(compare_embedded(ref, c, {0, 3}, {0, 3}, kTol, 10).equivalent);
  CHECK_THROWS_AS(lower_gate_teleport({gates::rzz(0.1, 0, 3)}, 1, 2, 0, 1), UnsupportedLowering);
  CHECK_THROWS_AS(lower_gate_teleport({gates::cx(0, 3), gates::cx(3, 0)}, 1, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("CZ keeps both qubits at home", "[dqc]") {
  Circuit c(2);
  c.add(gates::cz(0, 1));
  const auto d = distribute(c, small_chip(), TeleportMode::GateTeleport, LinkKind::DanglingLink, 0);
  for (std::size_t q = 0; q < 2; ++q) CHECK(d.topo.chip_of(d.final_layout.phys(q)) == d.qubit_chip[q]);
  CHECK(d.cross_group_swaps == 0);
}

TEST_CASE("strict gate teleport rejects RZZ cut gates", "[dqc]") {
  Circuit c(2);
  c.add(gates::rzz(0.3, 0, 1));
  CHECK_THROWS_AS(distribute(c, small_chip(), TeleportMode::GateTeleport, LinkKind::DanglingLink, 0),
                  UnsupportedLowering);
  CHECK_NOTHROW(distribute(c, small_chip(), TeleportMode::Auto, LinkKind::DanglingLink, 0));
}

TEST_CASE("distribution preserves semantics on small circuits", "[dqc]") {
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    const auto n = 2 + rng.below(5);
    Circuit c(n);
    for (int k = 0; k < 8; ++k) {
      const auto a = rng.below(n);
      auto b = rng.below(n - 1);
      if (b >= a) ++b;
      switch (rng.below(5)) {
        case 0: c.add(gates::h(a)); break;
        case 1: c.add(gates::cx(a, b)); break;
        case 2: c.add(gates::cp(0.7, a, b)); break;
        case 3: c.add(gates::rzz(0.3, a, b)); break;
        default: c.add(gates::rx(0.4, a)); break;
      }
    }
    for (auto mode : {TeleportMode::StateTeleport, TeleportMode::Auto}) {
      for (auto kind : {LinkKind::DanglingLink, LinkKind::RandomLink}) {
        const auto d = distribute(c, small_chip(), mode, kind, t);
        CHECK(preserves(c, d));
        CHECK(distributed_violations(d).empty());
        CHECK(d.ebits_consumed == d.circuit.count(GateKind::EPR_PREP));
        CHECK(d.cross_group_swaps <= d.swap_count);
      }
    }
  }
}

TEST_CASE("distribution keeps the chips untouched", "[dqc]") {
  const auto chip = to_lnn(heavy_hex(3));
  const auto d = distribute(qft(12), chip, TeleportMode::Auto, LinkKind::RandomLink, 3);
  CHECK(d.topo.chips[0] == chip);
  CHECK(d.topo.chips[1] == chip);
  CHECK(distributed_violations(d).empty());
  CHECK(d.final_layout.consistent());
}

TEST_CASE("dangling link beats a random link on qft(20)", "[dqc]") {
  const auto chip = to_lnn(heavy_hex(heavy_hex_distance_for(10)));
  const auto c = qft(20);
  CHECK(mean_cross(c, chip, LinkKind::DanglingLink, 10) < mean_cross(c, chip, LinkKind::RandomLink, 10));
}

TEST_CASE("teleport mode names", "[dqc]") {
  for (auto m : {TeleportMode::StateTeleport, TeleportMode::GateTeleport, TeleportMode::GateTeleportBatched,
                 TeleportMode::Auto}) {
    CHECK(parse_teleport_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_teleport_mode("bogus"), std::invalid_argument);
}
