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

// Two-chip distribution: contiguous partition, routing over both chips and
// the link, and lowering of link operations to teleportation.
//
// Every e-bit is prepared on the two communication qubits (one per chip,
// each attached to its chip's link endpoint). Data qubits sit on backbone
// nodes; with a dangling link the endpoints are dangling nodes and start
// empty.
//
// Cut gates are handled in one of two ways:
//  - gate teleport (controlled gates): both operands walk to their chip's
//    endpoint and the gate runs across the link. Nobody changes chip.
//  - migration (everything else, or all gates under StateTeleport): one
//    operand walks to the other over the link. Each SWAP on the link pair is
//    a cross-group SWAP. A link SWAP with one side empty lowers to one state
//    teleport; with both sides occupied it lowers to three teleported CXs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/dag.hpp"
#include "lnndqc/errors.hpp"
#include "lnndqc/layout.hpp"
#include "lnndqc/router_linear.hpp"
#include "lnndqc/topology.hpp"

namespace lnndqc {

/// `Auto` teleports controlled cut gates with batching and migrates the rest.
enum class TeleportMode { StateTeleport, GateTeleport, GateTeleportBatched, Auto };

inline std::string to_string(TeleportMode m) {
  switch (m) {
    case TeleportMode::StateTeleport: return "state";
    case TeleportMode::GateTeleport: return "gate";
    case TeleportMode::GateTeleportBatched: return "gate_batched";
    case TeleportMode::Auto: return "auto";
  }
  return "?";
}

inline TeleportMode parse_teleport_mode(const std::string& s) {
  if (s == "state") return TeleportMode::StateTeleport;
  if (s == "gate") return TeleportMode::GateTeleport;
  if (s == "gate_batched") return TeleportMode::GateTeleportBatched;
  if (s == "auto") return TeleportMode::Auto;
  throw std::invalid_argument("unknown teleport mode: " + s);
}

struct PartitionAssignment {
  std::vector<std::size_t> qubit_chip;
  std::vector<std::size_t> cut_gates;
};

/// Logical 0..ceil(n/2)-1 on chip 0, the rest on chip 1.
inline PartitionAssignment partition(const Circuit& c, const MultiChipTopology& topo) {
  const auto n = c.num_qubits();
  const auto first = (n + 1) / 2;
  if (first > topo.chips.at(0).capacity() || n - first > topo.chips.at(1).capacity()) {
    throw CapacityError("circuit with " + std::to_string(n) + " qubits does not fit two chips of " +
                        std::to_string(topo.chips[0].capacity()) + " backbone qubits");
  }
  PartitionAssignment p;
  p.qubit_chip.resize(n);
  for (std::size_t q = 0; q < n; ++q) p.qubit_chip[q] = q < first ? 0 : 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& g = c[i];
    if (g.two_qubit() && p.qubit_chip[g.qubits[0]] != p.qubit_chip[g.qubits[1]]) {
      p.cut_gates.push_back(i);
    }
  }
  return p;
}

/// Gate sequence teleporting the state on `sender` into `receiver_half`.
/// Bits: `bit_z` takes the sender measurement, `bit_x` the sender-half one.
/// The two measured qubits are reset to |0> at the end.
inline std::vector<Gate> lower_state_teleport(std::size_t sender, std::size_t sender_half,
                                              std::size_t receiver_half, std::size_t bit_z,
                                              std::size_t bit_x) {
  return {gates::epr(sender_half, receiver_half),
          gates::cx(sender, sender_half),
          gates::h(sender),
          gates::measure(sender, bit_z),
          gates::measure(sender_half, bit_x),
          gates::corr_x(receiver_half, bit_x),
          gates::corr_z(receiver_half, bit_z),
          gates::corr_x(sender, bit_z),
          gates::corr_x(sender_half, bit_x)};
}

/// Opening half of a gate teleport: after it, `target_comm` carries a copy
/// of `control` in the computational basis.
inline std::vector<Gate> gate_teleport_open(std::size_t control, std::size_t control_comm,
                                            std::size_t target_comm, std::size_t bit_x) {
  return {gates::epr(control_comm, target_comm), gates::cx(control, control_comm),
          gates::measure(control_comm, bit_x), gates::corr_x(target_comm, bit_x),
          gates::corr_x(control_comm, bit_x)};
}

/// Closing half: disentangles the copy and fixes the control's phase.
inline std::vector<Gate> gate_teleport_close(std::size_t control, std::size_t target_comm,
                                             std::size_t bit_z) {
  return {gates::h(target_comm), gates::measure(target_comm, bit_z), gates::corr_z(control, bit_z),
          gates::corr_x(target_comm, bit_z)};
}

/// `g` (CX, CZ or CP) with its control moved onto `copy`.
inline Gate remote_controlled(const Gate& g, std::size_t copy) {
  if (!is_controlled(g.kind)) {
    throw UnsupportedLowering(std::string("gate teleport needs a controlled gate, got ") +
                              std::string(gate_name(g.kind)));
  }
  Gate r = g;
  r.qubits[0] = copy;
  return r;
}

/// Full gate teleport of one or more controlled gates sharing the control
/// `control`; every gate in `ops` must have that control as qubits[0].
inline std::vector<Gate> lower_gate_teleport(const std::vector<Gate>& ops, std::size_t control_comm,
                                             std::size_t target_comm, std::size_t bit_x,
                                             std::size_t bit_z) {
  if (ops.empty()) return {};
  const auto control = ops.front().qubits.at(0);
  auto out = gate_teleport_open(control, control_comm, target_comm, bit_x);
  for (const auto& g : ops) {
    if (g.qubits.at(0) != control) throw std::invalid_argument("batched gates must share the control");
    out.push_back(remote_controlled(g, target_comm));
  }
  for (auto& g : gate_teleport_close(control, target_comm, bit_z)) out.push_back(std::move(g));
  return out;
}

struct NonlocalSite {
  std::size_t gate;  // index into the source circuit
  TeleportMode mode;
};

struct DistributedCircuit {
  /// Lowered circuit over global nodes; only intra-chip edges,
  /// endpoint-comm edges and the comm pair carry two-qubit gates.
  Circuit circuit;
  /// Routed circuit before lowering, with gates and SWAPs on the link pair.
  Circuit routed;
  MultiChipTopology topo;
  Layout initial_layout;
  Layout final_layout;
  std::vector<std::size_t> qubit_chip;
  std::vector<NonlocalSite> nonlocal_sites;
  std::size_t ebits_consumed = 0;
  std::size_t cross_group_swaps = 0;
  std::size_t swap_count = 0;
  TeleportMode mode = TeleportMode::Auto;
};

namespace detail {

/// Nodes data may use: every backbone node, plus a dangling endpoint.
inline CouplingGraph routing_graph(const MultiChipTopology& t) {
  std::vector<bool> usable(t.num_nodes(), false);
  for (std::size_t c = 0; c < t.chips.size(); ++c) {
    for (auto v : t.chips[c].line) usable[t.global(c, v)] = true;
    usable[t.endpoint(c)] = true;
  }
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < t.chips.size(); ++c) {
    for (const auto& [u, v] : t.chips[c].graph.edges()) {
      const auto a = t.global(c, u), b = t.global(c, v);
      if (usable[a] && usable[b]) edges.push_back(make_edge(a, b));
    }
  }
  edges.push_back(make_edge(t.link.first, t.link.second));
  return CouplingGraph(t.num_nodes(), std::move(edges));
}

class DistRouter {
 public:
  DistRouter(const Circuit& c, const MultiChipTopology& t, TeleportMode mode, const Layout& initial)
      : circ_(c), topo_(t), mode_(mode), graph_(routing_graph(t)), dist_(graph_.distance_matrix()),
        layout_(initial), out_(t.num_nodes(), c.num_cbits(), c.name()),
        link_(make_edge(t.link.first, t.link.second)) {}

  void run() {
    const auto dag = build_dag(circ_, /*commute_diagonal=*/true);
    auto pending = dag.num_pred;
    std::vector<char> done(circ_.size(), 0);
    std::set<std::size_t> front;
    for (std::size_t i = 0; i < circ_.size(); ++i) {
      if (pending[i] == 0) front.insert(i);
    }
    std::size_t cursor = 0;
    while (!front.empty()) {
      std::vector<std::size_t> fresh;
      for (auto it = front.begin(); it != front.end();) {
        if (!executable(circ_[*it])) {
          ++it;
          continue;
        }
        execute(*it);
        done[*it] = 1;
        for (auto s : dag.succ[*it]) {
          if (--pending[s] == 0) fresh.push_back(s);
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
        if (distance(circ_[i], layout_) < distance(circ_[pick], layout_)) pick = i;
      }
      while (cursor < circ_.size() && done[cursor]) ++cursor;
      std::vector<std::pair<std::size_t, std::size_t>> upcoming{
          std::minmax(circ_[pick].qubits[0], circ_[pick].qubits[1])};
      for (std::size_t k = cursor; k < circ_.size() && upcoming.size() <= kLookahead; ++k) {
        if (done[k] || !circ_[k].two_qubit()) continue;
        const std::pair<std::size_t, std::size_t> key =
            std::minmax(circ_[k].qubits[0], circ_[k].qubits[1]);
        if (std::find(upcoming.begin(), upcoming.end(), key) == upcoming.end()) {
          upcoming.push_back(key);
        }
      }
      upcoming.erase(upcoming.begin());
      bring_together(pick, upcoming);
    }
  }

  bool teleports(const Gate& g) const {
    return is_controlled(g.kind) && mode_ != TeleportMode::StateTeleport;
  }

  const Circuit& circ_;
  const MultiChipTopology& topo_;
  TeleportMode mode_;
  CouplingGraph graph_;
  std::vector<std::vector<std::size_t>> dist_;
  Layout layout_;
  Circuit out_;
  Edge link_;
  std::size_t swaps_ = 0, link_swaps_ = 0;
  std::vector<NonlocalSite> sites_;

 private:
  bool on_link(std::size_t a, std::size_t b) const { return make_edge(a, b) == link_; }

  bool executable(const Gate& g) const {
    if (!g.two_qubit()) return true;
    const auto a = layout_.phys(g.qubits[0]), b = layout_.phys(g.qubits[1]);
    if (!graph_.has_edge(a, b)) return false;
    return !on_link(a, b) || teleports(g);
  }

  std::size_t distance(const Gate& g, const Layout& l) const {
    if (!g.two_qubit()) return 0;
    return dist_[l.phys(g.qubits[0])][l.phys(g.qubits[1])];
  }

  void execute(std::size_t i) {
    const auto& g = circ_[i];
    if (g.two_qubit()) {
      const auto a = layout_.phys(g.qubits[0]), b = layout_.phys(g.qubits[1]);
      if (on_link(a, b)) sites_.push_back({i, mode_ == TeleportMode::GateTeleport
                                                  ? TeleportMode::GateTeleport
                                                  : TeleportMode::GateTeleportBatched});
    }
    Gate p = g;
    for (auto& q : p.qubits) q = layout_.phys(q);
    out_.add(std::move(p));
  }

  void swap_nodes(std::size_t a, std::size_t b) {
    out_.add(gates::swap(a, b));
    layout_.swap_physical(a, b);
    ++swaps_;
    if (on_link(a, b)) ++link_swaps_;
  }

  /// SWAPs that bring the operands of circ_[i] to where it can run.
  /// Teleported gates: each operand walks to its own chip's endpoint.
  /// Others: one operand walks to the other; if they would meet across the
  /// link, the partner first steps inward so the gate runs inside a chip.
  std::vector<std::vector<Edge>> plans(std::size_t i) const {
    const auto& g = circ_[i];
    const auto a = layout_.phys(g.qubits[0]), b = layout_.phys(g.qubits[1]);
    const auto ca = topo_.chip_of(a), cb = topo_.chip_of(b);
    auto walk = [&](std::size_t from, std::size_t to, std::vector<Edge>& seq) {
      const auto path = graph_.shortest_path(from, to);
      for (std::size_t k = 0; k + 1 < path.size(); ++k) seq.push_back({path[k], path[k + 1]});
    };
    if (ca != cb && teleports(g)) {
      std::vector<Edge> seq;
      walk(a, topo_.endpoint(ca), seq);
      walk(b, topo_.endpoint(cb), seq);
      return {seq};
    }
    std::vector<std::vector<Edge>> out;
    for (auto [m, p] : {std::pair{a, b}, std::pair{b, a}}) {
      const auto path = graph_.shortest_path(m, p);
      std::vector<Edge> seq;
      const auto last = path[path.size() - 2];
      if (on_link(last, p)) {
        // Partner steps off the endpoint into its own chip.
        std::size_t inward = SIZE_MAX;
        for (auto nb : graph_.neighbors(p)) {
          if (!on_link(p, nb)) {
            inward = nb;
            break;
          }
        }
        seq.push_back({p, inward});
        for (std::size_t k = 0; k + 1 < path.size(); ++k) seq.push_back({path[k], path[k + 1]});
      } else {
        for (std::size_t k = 0; k + 2 < path.size(); ++k) seq.push_back({path[k], path[k + 1]});
      }
      out.push_back(std::move(seq));
    }
    return out;
  }

  void bring_together(std::size_t i, const std::vector<std::pair<std::size_t, std::size_t>>& upcoming) {
    const auto& g = circ_[i];
    if (!teleports(g) &&
        topo_.chip_of(layout_.phys(g.qubits[0])) != topo_.chip_of(layout_.phys(g.qubits[1]))) {
      sites_.push_back({i, TeleportMode::StateTeleport});
    }
    const auto options = plans(i);
    std::size_t best = 0;
    double best_cost = 0;
    for (std::size_t k = 0; k < options.size(); ++k) {
      Layout trial = layout_;
      for (const auto& [u, v] : options[k]) trial.swap_physical(u, v);
      double cost = static_cast<double>(options[k].size()), w = 1.0;
      for (const auto& [x, y] : upcoming) {
        cost += w * (static_cast<double>(dist_[trial.phys(x)][trial.phys(y)]) - 1.0);
        w *= kLookaheadDecay;
      }
      if (k == 0 || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    for (const auto& [u, v] : options[best]) swap_nodes(u, v);
    if (!executable(g)) throw std::logic_error("distribution router failed to co-locate a gate");
  }
};

/// Rewrites link operations of a routed circuit into teleportation. Returns
/// the lowered circuit; e-bits = EPR_PREP count.
inline Circuit lower_links(const Circuit& routed, const MultiChipTopology& t, const Layout& initial,
                           bool batched) {
  Circuit out(routed.num_qubits(), routed.num_cbits(), routed.name());
  std::vector<bool> occupied(t.num_nodes(), false);
  for (std::size_t q = 0; q < initial.num_logical(); ++q) occupied[initial.phys(q)] = true;
  const auto link = make_edge(t.link.first, t.link.second);
  auto comm_of = [&](std::size_t node) { return t.comm(t.chip_of(node)); };
  auto add_all = [&](const std::vector<Gate>& seq) {
    for (const auto& g : seq) out.add(g);
  };

  // Open batch: control node, the far comm qubit holding the copy.
  std::optional<std::pair<std::size_t, std::size_t>> open;
  auto close = [&] {
    if (!open) return;
    const auto bz = out.add_cbit();
    add_all(gate_teleport_close(open->first, open->second, bz));
    open.reset();
  };
  auto teleport_gate = [&](const Gate& g) {
    const auto control = g.qubits[0];
    const auto far = comm_of(g.qubits[1]);
    if (!batched || !open || open->first != control || open->second != far) {
      close();
      const auto bx = out.add_cbit();
      add_all(gate_teleport_open(control, comm_of(control), far, bx));
      open = {control, far};
    }
    out.add(remote_controlled(g, far));
    if (!batched) close();
  };

  for (const auto& g : routed.gates()) {
    const bool link_op = g.two_qubit() && make_edge(g.qubits[0], g.qubits[1]) == link;
    if (open) {
      bool touches = false;
      for (auto q : g.qubits) {
        touches = touches || q == open->first || q == t.comm(0) || q == t.comm(1);
      }
      if (touches && !(link_op && g.kind != GateKind::SWAP)) close();
    }
    if (!link_op) {
      out.add(g);
      if (g.kind == GateKind::SWAP) {
        const bool x = occupied[g.qubits[0]];
        occupied[g.qubits[0]] = occupied[g.qubits[1]];
        occupied[g.qubits[1]] = x;
      }
      continue;
    }
    if (g.kind != GateKind::SWAP) {
      teleport_gate(g);
      continue;
    }
    close();
    const auto a = g.qubits[0], b = g.qubits[1];
    if (occupied[a] && occupied[b]) {
      for (const auto& cx : {gates::cx(a, b), gates::cx(b, a), gates::cx(a, b)}) {
        teleport_gate(cx);
        close();
      }
    } else if (occupied[a] || occupied[b]) {
      const auto s = occupied[a] ? a : b, r = occupied[a] ? b : a;
      const auto bz = out.add_cbit(), bx = out.add_cbit();
      add_all(lower_state_teleport(s, comm_of(s), comm_of(r), bz, bx));
      out.add(gates::swap(comm_of(r), r));
      occupied[s] = false;
      occupied[r] = true;
    }
  }
  close();
  return out;
}

}  // namespace detail

/// Distributes `c` over the two chips of `topo`. Strict GateTeleport modes
/// reject cut gates that are not controlled (CX, CZ, CP).
inline DistributedCircuit distribute(const Circuit& c, const MultiChipTopology& topo,
                                     TeleportMode mode) {
  const auto part = partition(c, topo);
  if (mode == TeleportMode::GateTeleport || mode == TeleportMode::GateTeleportBatched) {
    for (auto i : part.cut_gates) {
      if (!is_controlled(c[i].kind)) {
        throw UnsupportedLowering("cut gate " + std::to_string(i) + " (" +
                                  std::string(gate_name(c[i].kind)) +
                                  ") cannot be gate-teleported");
      }
    }
  }
  Layout initial(c.num_qubits(), topo.num_nodes());
  // Each chip's qubits fill the backbone window centred on its link anchor,
  // in line order, oriented so the qubits next to the split sit nearest it.
  std::vector<std::size_t> slots[2];
  for (std::size_t chip = 0; chip < 2; ++chip) {
    const auto& lnn = topo.chips[chip];
    const auto k = static_cast<std::size_t>(
        std::count(part.qubit_chip.begin(), part.qubit_chip.end(), chip));
    if (k == 0) continue;
    const auto local = topo.endpoint(chip) - topo.offset(chip);
    const auto pos = lnn.position(lnn.is_dangling(local) ? lnn.anchor_of(local) : local);
    const auto start = std::min(pos > k / 2 ? pos - k / 2 : 0, lnn.capacity() - k);
    for (std::size_t i = 0; i < k; ++i) slots[chip].push_back(topo.global(chip, lnn.line[start + i]));
    // Chip 0's last qubit and chip 1's first qubit face the link.
    const bool near_front = pos - start < start + k - 1 - pos;
    if (near_front == (chip == 0)) std::reverse(slots[chip].begin(), slots[chip].end());
  }
  std::size_t next[2] = {0, 0};
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    const auto chip = part.qubit_chip[q];
    initial.assign(q, slots[chip][next[chip]++]);
  }

  detail::DistRouter r(c, topo, mode, initial);
  r.run();

  DistributedCircuit d;
  d.routed = std::move(r.out_);
  d.circuit = detail::lower_links(d.routed, topo, initial, mode != TeleportMode::GateTeleport);
  d.topo = topo;
  d.initial_layout = initial;
  d.final_layout = r.layout_;
  d.qubit_chip = part.qubit_chip;
  d.nonlocal_sites = std::move(r.sites_);
  d.ebits_consumed = d.circuit.count(GateKind::EPR_PREP);
  d.cross_group_swaps = r.link_swaps_;
  d.swap_count = r.swaps_;
  d.mode = mode;
  return d;
}

/// Convenience: two copies of `chip` joined by `kind` (seeded for RandomLink).
inline DistributedCircuit distribute(const Circuit& c, const LnnTopology& chip, TeleportMode mode,
                                     LinkKind kind, std::uint64_t seed) {
  return distribute(c, link_chips(chip, chip, kind, seed), mode);
}

/// Two-qubit gates of a lowered circuit that use neither an intra-chip
/// edge, an endpoint-comm edge, nor the comm pair.
inline std::vector<std::size_t> distributed_violations(const DistributedCircuit& d) {
  const auto local = d.topo.local_graph();
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < d.circuit.size(); ++i) {
    const auto& g = d.circuit[i];
    if (g.two_qubit() && !d.topo.allows(g.qubits[0], g.qubits[1], local)) bad.push_back(i);
  }
  return bad;
}

}  // namespace lnndqc
