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

// Brute-force minimum SWAP count for tiny circuits on tiny graphs. Used as
// an oracle by the router tests; shares no code with the routers.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lnndqc/circuit.hpp"

namespace lnndqc::testing {

struct ExhaustiveOptions {
  /// Allow any starting placement instead of logical i on node i.
  bool free_layout = true;
  /// Let diagonal gates on shared qubits run in either order.
  bool commute_diagonal = true;
};

/// Fewest SWAPs on `edges` (over `num_nodes` nodes) that execute every gate
/// of `c` with two-qubit gates on edges. 0-1 BFS over (placement, executed
/// gate set).
inline std::size_t exhaustive_min_swaps(const Circuit& c, std::size_t num_nodes,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                        ExhaustiveOptions opt = {}) {
  const std::size_t m = c.size();
  if (m > 16 || num_nodes > 8 || c.num_qubits() > num_nodes) {
    throw std::invalid_argument("instance too large for exhaustive search");
  }
  auto diag = [](GateKind k) {
    return k == GateKind::Z || k == GateKind::RZ || k == GateKind::CZ || k == GateKind::CP ||
           k == GateKind::RZZ;
  };
  std::vector<std::uint32_t> need(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      bool shared = false;
      for (auto a : c[i].qubits) {
        for (auto b : c[j].qubits) shared = shared || a == b;
      }
      if (c[i].cbit && c[j].cbit && *c[i].cbit == *c[j].cbit) shared = true;
      if (!shared) continue;
      if (opt.commute_diagonal && diag(c[i].kind) && diag(c[j].kind)) continue;
      need[j] |= 1u << i;
    }
  }
  std::vector<std::vector<bool>> adj(num_nodes, std::vector<bool>(num_nodes, false));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;

  // node_of[q] for logical q; nodes beyond the circuit width hold fillers.
  using State = std::pair<std::vector<std::size_t>, std::uint32_t>;
  std::map<State, std::size_t> best;
  std::deque<State> queue;
  const std::uint32_t all = m == 32 ? ~0u : (1u << m) - 1;

  auto push = [&](State s, std::size_t cost, bool front) {
    auto it = best.find(s);
    if (it != best.end() && it->second <= cost) return;
    best[s] = cost;
    if (front) {
      queue.push_front(std::move(s));
    } else {
      queue.push_back(std::move(s));
    }
  };

  std::vector<std::size_t> perm(num_nodes);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    push({perm, 0}, 0, false);
    if (!opt.free_layout) break;
  } while (std::next_permutation(perm.begin(), perm.end()));

  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    const auto cost = best[s];
    const auto& [node_of, doneset] = s;
    if (doneset == all) return cost;
    for (std::size_t g = 0; g < m; ++g) {
      if (doneset >> g & 1u) continue;
      if ((need[g] & doneset) != need[g]) continue;
      const auto& gt = c[g];
      if (gt.qubits.size() == 2 && !adj[node_of[gt.qubits[0]]][node_of[gt.qubits[1]]]) continue;
      push({node_of, doneset | (1u << g)}, cost, true);
    }
    for (auto [a, b] : edges) {
      auto next = node_of;
      for (auto& v : next) {
        if (v == a) {
          v = b;
        } else if (v == b) {
          v = a;
        }
      }
      push({std::move(next), doneset}, cost + 1, false);
    }
  }
  throw std::logic_error("exhaustive search exhausted without a solution");
}

}  // namespace lnndqc::testing
