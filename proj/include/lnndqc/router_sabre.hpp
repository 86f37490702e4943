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

// Baseline SABRE-style router for arbitrary coupling graphs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/dag.hpp"
#include "lnndqc/errors.hpp"
#include "lnndqc/layout.hpp"
#include "lnndqc/rng.hpp"
#include "lnndqc/topology.hpp"

namespace lnndqc {

struct RouterConfig {
  std::size_t lookahead_size = 20;
  double decay_delta = 0.001;
  std::size_t decay_reset = 5;
  double extended_weight = 0.5;
  std::uint64_t seed = 0;
  std::size_t trials = 3;
  /// Fixed logical -> physical placement. When set, no layout search runs.
  std::optional<std::vector<std::size_t>> initial_layout;

  void validate() const {
    if (decay_delta < 0 || extended_weight < 0) {
      throw std::invalid_argument("router weights must be non-negative");
    }
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  }
};

namespace detail {

class SabrePass {
 public:
  SabrePass(const Circuit& c, const CouplingGraph& g,
            const std::vector<std::vector<std::size_t>>& dist, const RouterConfig& cfg,
            std::uint64_t seed)
      : circ_(c), graph_(g), dist_(dist), cfg_(cfg), rng_(seed) {}

  /// Routes circ_ starting from `layout`; `out` may be null when only the
  /// final layout is wanted.
  Layout run(Layout layout, Circuit* out, std::size_t& swaps) {
    const auto dag = build_dag(circ_, false);
    auto pending = dag.num_pred;
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < dag.size(); ++i) {
      if (pending[i] == 0) front.push_back(i);
    }
    std::vector<double> decay(graph_.num_nodes(), 1.0);
    std::size_t since_reset = 0, since_progress = 0;
    const std::size_t stall_limit = 10 * graph_.num_nodes();
    swaps = 0;

    auto do_swap = [&](std::size_t a, std::size_t b) {
      if (out) out->add(gates::swap(a, b));
      layout.swap_physical(a, b);
      ++swaps;
    };

    while (!front.empty()) {
      std::vector<std::size_t> next, done;
      for (auto i : front) {
        const auto& gt = circ_[i];
        if (!gt.two_qubit() || graph_.has_edge(layout.phys(gt.qubits[0]), layout.phys(gt.qubits[1]))) {
          done.push_back(i);
        } else {
          next.push_back(i);
        }
      }
      if (!done.empty()) {
        for (auto i : done) {
          if (out) {
            Gate p = circ_[i];
            for (auto& q : p.qubits) q = layout.phys(q);
            out->add(std::move(p));
          }
          for (auto s : dag.succ[i]) {
            if (--pending[s] == 0) next.push_back(s);
          }
        }
        std::sort(next.begin(), next.end());
        front = std::move(next);
        std::fill(decay.begin(), decay.end(), 1.0);
        since_reset = 0;
        since_progress = 0;
        continue;
      }

      if (since_progress >= stall_limit) {
        // Release valve: walk the closest front gate's operands together.
        std::size_t best = front.front();
        for (auto i : front) {
          if (gate_distance(circ_[i], layout) < gate_distance(circ_[best], layout)) best = i;
        }
        const auto path = graph_.shortest_path(layout.phys(circ_[best].qubits[0]),
                                               layout.phys(circ_[best].qubits[1]));
        for (std::size_t k = 0; k + 2 < path.size(); ++k) do_swap(path[k], path[k + 1]);
        since_progress = 0;
        continue;
      }

      const auto extended = extended_set(dag, pending, front);
      std::vector<std::pair<std::size_t, std::size_t>> candidates;
      for (auto i : front) {
        for (auto q : circ_[i].qubits) {
          const auto p = layout.phys(q);
          for (auto nb : graph_.neighbors(p)) candidates.push_back(std::minmax(p, nb));
        }
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

      double best_score = std::numeric_limits<double>::infinity();
      std::vector<std::pair<std::size_t, std::size_t>> best;
      for (const auto& [a, b] : candidates) {
        layout.swap_physical(a, b);
        double f = 0, e = 0;
        for (auto i : front) f += static_cast<double>(gate_distance(circ_[i], layout));
        for (auto i : extended) e += static_cast<double>(gate_distance(circ_[i], layout));
        layout.swap_physical(a, b);
        double score = f / static_cast<double>(front.size());
        if (!extended.empty()) {
          score += cfg_.extended_weight * e / static_cast<double>(extended.size());
        }
        score *= std::max(decay[a], decay[b]);
        if (score < best_score - 1e-12) {
          best_score = score;
          best.assign(1, {a, b});
        } else if (score <= best_score + 1e-12) {
          best.push_back({a, b});
        }
      }
      const auto [a, b] = best[rng_.below(best.size())];
      do_swap(a, b);
      decay[a] += cfg_.decay_delta;
      decay[b] += cfg_.decay_delta;
      if (++since_reset >= cfg_.decay_reset) {
        std::fill(decay.begin(), decay.end(), 1.0);
        since_reset = 0;
      }
      ++since_progress;
    }
    return layout;
  }

 private:
  std::size_t gate_distance(const Gate& g, const Layout& l) const {
    if (!g.two_qubit()) return 0;
    return dist_[l.phys(g.qubits[0])][l.phys(g.qubits[1])];
  }

  /// Up to lookahead_size two-qubit gates reachable from the front layer,
  /// nearest layers first.
  std::vector<std::size_t> extended_set(const GateDag& dag, std::vector<std::size_t> pending,
                                        const std::vector<std::size_t>& front) const {
    std::vector<std::size_t> result, layer = front;
    while (!layer.empty() && result.size() < cfg_.lookahead_size) {
      std::vector<std::size_t> next;
      for (auto i : layer) {
        for (auto s : dag.succ[i]) {
          if (--pending[s] != 0) continue;
          next.push_back(s);
          if (circ_[s].two_qubit() && result.size() < cfg_.lookahead_size) result.push_back(s);
        }
      }
      layer = std::move(next);
    }
    return result;
  }

  const Circuit& circ_;
  const CouplingGraph& graph_;
  const std::vector<std::vector<std::size_t>>& dist_;
  const RouterConfig& cfg_;
  Rng rng_;
};

inline Circuit reversed(const Circuit& c) {
  Circuit r(c.num_qubits(), c.num_cbits(), c.name());
  for (std::size_t i = c.size(); i-- > 0;) r.add(c[i]);
  return r;
}

/// n physical nodes grown by BFS from a random start, in random order.
inline Layout random_region_layout(std::size_t n, const CouplingGraph& g, Rng& rng) {
  const auto start = static_cast<std::size_t>(rng.below(g.num_nodes()));
  const auto d = g.bfs(start);
  std::vector<std::size_t> nodes(g.num_nodes());
  for (std::size_t v = 0; v < nodes.size(); ++v) nodes[v] = v;
  std::stable_sort(nodes.begin(), nodes.end(), [&](auto x, auto y) { return d[x] < d[y]; });
  nodes.resize(n);
  rng.shuffle(nodes.begin(), nodes.end());
  return Layout::from_positions(nodes, g.num_nodes());
}

}  // namespace detail

/// Front-layer / extended-set SWAP search with decay. Without a fixed
/// layout, each trial refines a random region layout with a forward and a
/// backward pass; the best trial by (gate_count, depth) is returned.
inline CompiledCircuit route_sabre(const Circuit& c, const CouplingGraph& g, const RouterConfig& cfg) {
  cfg.validate();
  if (c.num_qubits() > g.num_nodes()) {
    throw CapacityError("circuit has " + std::to_string(c.num_qubits()) +
                        " qubits but the graph has " + std::to_string(g.num_nodes()) + " nodes");
  }
  if (!g.connected()) throw UnsupportedTopology("coupling graph is disconnected");
  const auto dist = g.distance_matrix();

  auto route_from = [&](const Layout& initial, std::uint64_t seed) {
    CompiledCircuit r{Circuit(g.num_nodes(), c.num_cbits(), c.name()), initial, initial, 0,
                      RoutingStrategy::Sabre, false};
    detail::SabrePass pass(c, g, dist, cfg, seed);
    r.final_layout = pass.run(initial, &r.circuit, r.swap_count);
    return r;
  };

  if (cfg.initial_layout) {
    if (cfg.initial_layout->size() != c.num_qubits()) {
      throw std::invalid_argument("initial layout size does not match the circuit");
    }
    return route_from(Layout::from_positions(*cfg.initial_layout, g.num_nodes()), cfg.seed);
  }

  const auto rev = detail::reversed(c);
  std::optional<CompiledCircuit> best;
  std::size_t best_gates = 0, best_depth = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed * 1000003ULL + t;
    Rng rng(seed);
    auto layout = detail::random_region_layout(c.num_qubits(), g, rng);
    std::size_t unused = 0;
    layout = detail::SabrePass(c, g, dist, cfg, seed).run(layout, nullptr, unused);
    layout = detail::SabrePass(rev, g, dist, cfg, seed).run(layout, nullptr, unused);
    auto r = route_from(layout, seed);
    const auto gc = gate_count(r.circuit), dp = depth(r.circuit);
    if (!best || gc < best_gates || (gc == best_gates && dp < best_depth)) {
      best = std::move(r);
      best_gates = gc;
      best_depth = dp;
    }
  }
  return std::move(*best);
}

}  // namespace lnndqc
