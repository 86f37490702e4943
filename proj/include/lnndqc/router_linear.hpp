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

// Routing on an LNN backbone. Dangling qubits are never used here; they are
// reserved for inter-chip traffic.
//
// Greedy: walks the gate dependency graph (diagonal gates commute). Ready
// gates run as soon as their operands are adjacent. Otherwise the ready
// two-qubit gate with the shortest line distance Δ is made adjacent by
// walking one operand toward the other, stopping next to it (Δ-1 SWAPs) or
// passing it (Δ SWAPs). Each of the four moves is scored by its SWAPs plus
// the decayed excess line distance of the next kLookahead distinct pairs;
// the cheapest wins. Ties move the operand at the lower line position
// rightward.
//
// SwapNetwork: transposition layers that reverse the line. Two qubits with an
// interaction still pending are never swapped past each other, and a SWAP
// must bring one of them closer to a pending partner. Earlier movers get
// their SWAPs first so later qubits follow in a pipeline. A layer with no
// progress hands the remaining gates to the greedy router.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/dag.hpp"
#include "lnndqc/errors.hpp"
#include "lnndqc/layout.hpp"
#include "lnndqc/topology.hpp"

namespace lnndqc {

inline constexpr std::size_t kLookahead = 20;
inline constexpr double kLookaheadDecay = 0.9;

/// Identity line placement: logical i on the i-th backbone node.
inline Layout place(const Circuit& c, const LnnTopology& topo) {
  if (c.num_qubits() > topo.line.size()) {
    throw CapacityError("circuit has " + std::to_string(c.num_qubits()) +
                        " qubits but the backbone holds " + std::to_string(topo.line.size()));
  }
  Layout l(c.num_qubits(), topo.num_nodes());
  for (std::size_t i = 0; i < c.num_qubits(); ++i) l.assign(i, topo.line[i]);
  return l;
}

namespace detail {

/// Routing state shared by both line strategies.
class LineRouter {
 public:
  LineRouter(const Circuit& c, const LnnTopology& topo, const Layout& layout)
      : circ_(c), topo_(topo), layout_(layout), out_(topo.num_nodes(), c.num_cbits(), c.name()),
        pos_(topo.num_nodes(), SIZE_MAX) {
    for (std::size_t i = 0; i < topo.line.size(); ++i) pos_[topo.line[i]] = i;
    for (std::size_t q = 0; q < c.num_qubits(); ++q) {
      if (pos_.at(layout.phys(q)) == SIZE_MAX) {
        throw std::invalid_argument("layout places a qubit off the backbone");
      }
    }
  }

  std::size_t line_pos(std::size_t logical) const { return pos_[layout_.phys(logical)]; }

  void emit(const Gate& g) {
    Gate p = g;
    for (auto& q : p.qubits) q = layout_.phys(q);
    out_.add(std::move(p));
  }

  void swap_at(std::size_t line_index) {
    const auto a = topo_.line[line_index], b = topo_.line[line_index + 1];
    out_.add(gates::swap(a, b));
    layout_.swap_physical(a, b);
    ++swaps_;
  }

  /// Line position of every logical qubit after `mover` travels to line
  /// position `dest`, shifting the qubits it passes by one.
  std::size_t moved_pos(std::size_t q, std::size_t mover, std::size_t dest) const {
    const auto pm = line_pos(mover);
    if (q == mover) return dest;
    const auto p = line_pos(q);
    if (pm < dest && p > pm && p <= dest) return p - 1;
    if (pm > dest && p < pm && p >= dest) return p + 1;
    return p;
  }

  /// Summed excess line distance of the two-qubit gates in
  /// order[from, from+window) if `mover` travels to `dest`.
  double lookahead_cost(const std::vector<std::size_t>& order, std::size_t from,
                        std::size_t mover, std::size_t dest) const {
    double cost = 0, w = 1.0;
    for (std::size_t k = from; k < order.size() && k < from + kLookahead; ++k) {
      const auto& g = circ_[order[k]];
      if (!g.two_qubit()) continue;
      const auto a = moved_pos(g.qubits[0], mover, dest);
      const auto b = moved_pos(g.qubits[1], mover, dest);
      cost += w * (static_cast<double>(a > b ? a - b : b - a) - 1.0);
      w *= kLookaheadDecay;
    }
    return cost;
  }

  std::size_t line_distance(const Gate& g) const {
    const auto pa = line_pos(g.qubits[0]), pb = line_pos(g.qubits[1]);
    return pa > pb ? pa - pb : pb - pa;
  }

  /// Greedy routing of the gates in `subset` (program order, closed under
  /// predecessors). Runnable gates are emitted as soon as they are ready;
  /// when none is, the ready two-qubit gate with the shortest line distance
  /// is brought together.
  void greedy(const std::vector<std::size_t>& subset) {
    const auto dag = build_dag(circ_, /*commute_diagonal=*/true);
    std::vector<char> in(circ_.size(), 0), done(circ_.size(), 0);
    for (auto i : subset) in[i] = 1;
    std::vector<std::size_t> pending(circ_.size(), 0);
    for (auto i : subset) {
      for (auto s : dag.succ[i]) pending[s] += in[s];
    }
    std::set<std::size_t> front;
    for (auto i : subset) {
      if (pending[i] == 0) front.insert(i);
    }
    std::size_t cursor = 0;
    while (!front.empty()) {
      std::vector<std::size_t> fresh;
      for (auto it = front.begin(); it != front.end();) {
        const auto& g = circ_[*it];
        if (g.two_qubit() && line_distance(g) > 1) {
          ++it;
          continue;
        }
        emit(g);
        done[*it] = 1;
        for (auto s : dag.succ[*it]) {
          if (in[s] && --pending[s] == 0) fresh.push_back(s);
        }
        it = front.erase(it);
      }
      if (!fresh.empty()) {
        front.insert(fresh.begin(), fresh.end());
        continue;
      }
      if (front.empty()) break;
      std::size_t pick = *front.begin();
      for (auto i : front) {
        if (line_distance(circ_[i]) < line_distance(circ_[pick])) pick = i;
      }
      while (cursor < subset.size() && done[subset[cursor]]) ++cursor;
      std::vector<std::size_t> upcoming;
      std::vector<std::pair<std::size_t, std::size_t>> seen{
          std::minmax(circ_[pick].qubits[0], circ_[pick].qubits[1])};
      for (std::size_t k = cursor; k < subset.size() && upcoming.size() < kLookahead; ++k) {
        const auto i = subset[k];
        if (done[i] || i == pick || !circ_[i].two_qubit()) continue;
        // Repeats of a pair add nothing: one meeting serves them all.
        const std::pair<std::size_t, std::size_t> key = std::minmax(circ_[i].qubits[0], circ_[i].qubits[1]);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        upcoming.push_back(i);
      }
      bring_adjacent(circ_[pick].qubits[0], circ_[pick].qubits[1], upcoming, 0);
    }
  }

  void bring_adjacent(std::size_t a, std::size_t b, const std::vector<std::size_t>& order,
                      std::size_t next) {
    const auto pa = line_pos(a), pb = line_pos(b);
    if ((pa > pb ? pa - pb : pb - pa) <= 1) return;
    struct Move {
      std::size_t mover;
      std::size_t dest;
      double cost;
    };
    std::vector<Move> moves;
    for (auto [m, pm, pp] : {std::tuple{a, pa, pb}, std::tuple{b, pb, pa}}) {
      const std::size_t near = pm < pp ? pp - 1 : pp + 1;
      const std::size_t dist = pm < pp ? pp - pm : pm - pp;
      moves.push_back({m, near, static_cast<double>(dist - 1)});
      // Passing the partner costs one more SWAP and leaves the mover beyond it.
      moves.push_back({m, pp, static_cast<double>(dist)});
    }
    for (auto& mv : moves) mv.cost += lookahead_cost(order, next, mv.mover, mv.dest);
    // Ties: the lower-positioned operand moves rightward, near side first.
    const auto lower = pa < pb ? a : b;
    auto rank = [&](const Move& mv) { return mv.mover == lower ? 0 : 1; };
    std::stable_sort(moves.begin(), moves.end(), [&](const Move& x, const Move& y) {
      if (x.cost != y.cost) return x.cost < y.cost;
      return rank(x) < rank(y);
    });
    const auto& best = moves.front();
    auto p = line_pos(best.mover);
    while (p != best.dest) {
      if (p < best.dest) {
        swap_at(p);
        ++p;
      } else {
        swap_at(p - 1);
        --p;
      }
    }
  }

  CompiledCircuit finish(const Layout& initial, RoutingStrategy s, bool fell_back) {
    return CompiledCircuit{std::move(out_), initial, layout_, swaps_, s, fell_back};
  }

  const Circuit& circ_;
  const LnnTopology& topo_;
  Layout layout_;
  Circuit out_;
  std::vector<std::size_t> pos_;
  std::size_t swaps_ = 0;
};

}  // namespace detail

inline CompiledCircuit route_greedy(const Circuit& c, const LnnTopology& topo, const Layout& layout) {
  detail::LineRouter r(c, topo, layout);
  std::vector<std::size_t> all(c.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  r.greedy(all);
  return r.finish(layout, RoutingStrategy::Greedy, false);
}

namespace detail {

inline CompiledCircuit swap_network(const Circuit& c, const LnnTopology& topo, const Layout& layout,
                                    bool swaps_first) {
  LineRouter r(c, topo, layout);
  const std::size_t n = c.num_qubits();

  // The network sweeps the occupied segment; it must be contiguous.
  std::size_t lo = SIZE_MAX, hi = 0;
  for (std::size_t q = 0; q < n; ++q) {
    lo = std::min(lo, r.line_pos(q));
    hi = std::max(hi, r.line_pos(q));
  }
  if (n == 0 || hi - lo + 1 != n) {
    auto out = route_greedy(c, topo, layout);
    out.fell_back = n != 0;
    return out;
  }

  auto dag = build_dag(c, /*commute_diagonal=*/true);
  std::vector<bool> done(c.size(), false);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (dag.num_pred[i] == 0) ready.push_back(i);
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pending;
  std::size_t pending_2q = 0;
  for (const auto& g : c.gates()) {
    if (g.two_qubit()) {
      ++pending[std::minmax(g.qubits[0], g.qubits[1])];
      ++pending_2q;
    }
  }
  std::size_t remaining = c.size();

  auto adjacent = [&](const Gate& g) {
    auto pa = r.line_pos(g.qubits[0]), pb = r.line_pos(g.qubits[1]);
    return (pa > pb ? pa - pb : pb - pa) == 1;
  };

  std::vector<std::size_t> rank(n);
  auto start_pass = [&] {
    for (std::size_t q = 0; q < n; ++q) rank[q] = r.line_pos(q);
  };
  start_pass();

  // One round is one layer. With swaps_first, SWAPs claim their qubits
  // before ready gates fill the rest; otherwise gates go first.
  bool fell_back = false, pass_emitted = false;
  std::vector<bool> busy(n);
  while (remaining > 0) {
    std::fill(busy.begin(), busy.end(), false);
    std::size_t swaps = 0, emitted = 0;
    bool sorted = true;
    std::vector<std::size_t> later;
    auto place_swaps = [&] {
      if (pending_2q > 0) {
        std::vector<std::size_t> far_right(n, 0), near_left(n, SIZE_MAX);
        for (const auto& [pr, cnt] : pending) {
          if (cnt == 0) continue;
          const auto pa = r.line_pos(pr.first), pb = r.line_pos(pr.second);
          far_right[pr.first] = std::max(far_right[pr.first], pb);
          far_right[pr.second] = std::max(far_right[pr.second], pa);
          near_left[pr.first] = std::min(near_left[pr.first], pb);
          near_left[pr.second] = std::min(near_left[pr.second], pa);
        }
        std::vector<std::pair<std::size_t, std::size_t>> eligible;  // (rank of left, position)
        for (std::size_t p = lo; p + 1 <= hi; ++p) {
          const auto a = r.layout_.logical(r.topo_.line[p]);
          const auto b = r.layout_.logical(r.topo_.line[p + 1]);
          if (rank[a] < rank[b]) sorted = false;
          if (rank[a] > rank[b]) continue;
          auto it = pending.find(std::minmax(a, b));
          if (it != pending.end() && it->second > 0) continue;
          // Only worth it if a still has a partner beyond b or b one beyond a.
          if (far_right[a] <= p + 1 && near_left[b] >= p) continue;
          eligible.push_back({rank[a], p});
        }
        // Earlier movers first, so trailing qubits follow in a pipeline.
        std::sort(eligible.begin(), eligible.end());
        for (const auto& [rk, p] : eligible) {
          const auto a = r.layout_.logical(r.topo_.line[p]);
          const auto b = r.layout_.logical(r.topo_.line[p + 1]);
          if (busy[a] || busy[b]) continue;
          busy[a] = busy[b] = true;
          r.swap_at(p);
          ++swaps;
        }
      }
    };
    auto place_gates = [&] {
      std::sort(ready.begin(), ready.end());
      for (auto i : ready) {
        const auto& g = c[i];
        bool ok = !g.two_qubit() || adjacent(g);
        for (auto q : g.qubits) ok = ok && !busy[q];
        if (!ok) {
          later.push_back(i);
          continue;
        }
        for (auto q : g.qubits) busy[q] = true;
        r.emit(g);
        done[i] = true;
        --remaining;
        ++emitted;
        if (g.two_qubit()) {
          --pending[std::minmax(g.qubits[0], g.qubits[1])];
          --pending_2q;
        }
        for (auto s : dag.succ[i]) {
          if (--dag.num_pred[s] == 0) later.push_back(s);
        }
      }
    };
    if (swaps_first) {
      place_swaps();
      place_gates();
    } else {
      place_gates();
      place_swaps();
    }
    ready = std::move(later);
    pass_emitted = pass_emitted || emitted > 0;
    if (swaps > 0 || emitted > 0) continue;
    if (!sorted || !pass_emitted) {
      fell_back = true;
      break;
    }
    start_pass();
    pass_emitted = false;
  }
  if (fell_back) {
    // Finish the remaining gates in program order; the emitted set is
    // closed under dependencies, so this respects the original semantics.
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!done[i]) rest.push_back(i);
    }
    r.greedy(rest);
  }
  return r.finish(layout, RoutingStrategy::SwapNetwork, fell_back);
}

}  // namespace detail

/// Runs the network twice, once with SWAPs taking priority inside each layer
/// and once with gates first, and keeps the better by (depth, gate_count).
inline CompiledCircuit route_swap_network(const Circuit& c, const LnnTopology& topo,
                                          const Layout& layout) {
  auto a = detail::swap_network(c, topo, layout, true);
  auto b = detail::swap_network(c, topo, layout, false);
  const auto ka = std::pair{depth(a.circuit), gate_count(a.circuit)};
  const auto kb = std::pair{depth(b.circuit), gate_count(b.circuit)};
  return kb < ka ? b : a;
}

/// Swap network when the two-qubit gates form whole all-pairs layers (every
/// qubit pair interacts, and equally often), as in QFT and complete-graph
/// QAOA; greedy otherwise.
inline RoutingStrategy recommended_strategy(const Circuit& c) {
  const auto n = c.num_qubits();
  if (n < 3) return RoutingStrategy::Greedy;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mult;
  for (const auto& g : c.gates()) {
    if (g.two_qubit()) ++mult[std::minmax(g.qubits[0], g.qubits[1])];
  }
  if (mult.size() != n * (n - 1) / 2) return RoutingStrategy::Greedy;
  const auto layers = mult.begin()->second;
  for (const auto& [pair, k] : mult) {
    if (k != layers) return RoutingStrategy::Greedy;
  }
  return RoutingStrategy::SwapNetwork;
}

inline CompiledCircuit route_linear(const Circuit& c, const LnnTopology& topo,
                                    RoutingStrategy s) {
  const auto layout = place(c, topo);
  return s == RoutingStrategy::SwapNetwork ? route_swap_network(c, topo, layout)
                                           : route_greedy(c, topo, layout);
}

inline CompiledCircuit route_linear(const Circuit& c, const LnnTopology& topo) {
  return route_linear(c, topo, recommended_strategy(c));
}

}  // namespace lnndqc
