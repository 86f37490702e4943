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

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/topology.hpp"

namespace lnndqc {

inline constexpr std::size_t kNoQubit = SIZE_MAX;

/// Logical -> physical assignment with its inverse. Physical nodes that
/// hold no logical qubit map to kNoQubit.
class Layout {
 public:
  Layout() = default;
  Layout(std::size_t num_logical, std::size_t num_physical)
      : l2p_(num_logical, kNoQubit), p2l_(num_physical, kNoQubit) {}

  static Layout from_positions(const std::vector<std::size_t>& l2p, std::size_t num_physical) {
    Layout l(l2p.size(), num_physical);
    for (std::size_t i = 0; i < l2p.size(); ++i) l.assign(i, l2p[i]);
    return l;
  }

  std::size_t num_logical() const noexcept { return l2p_.size(); }
  std::size_t num_physical() const noexcept { return p2l_.size(); }

  std::size_t phys(std::size_t logical) const { return l2p_.at(logical); }
  std::size_t logical(std::size_t physical) const { return p2l_.at(physical); }
  bool occupied(std::size_t physical) const { return p2l_.at(physical) != kNoQubit; }

  const std::vector<std::size_t>& log2phys() const noexcept { return l2p_; }
  const std::vector<std::size_t>& phys2log() const noexcept { return p2l_; }

  void assign(std::size_t logical, std::size_t physical) {
    if (p2l_.at(physical) != kNoQubit) throw std::invalid_argument("physical node already assigned");
    if (l2p_.at(logical) != kNoQubit) p2l_[l2p_[logical]] = kNoQubit;
    l2p_[logical] = physical;
    p2l_[physical] = logical;
  }

  /// Exchanges the contents of two physical nodes (either may be empty).
  void swap_physical(std::size_t a, std::size_t b) {
    std::swap(p2l_.at(a), p2l_.at(b));
    if (p2l_[a] != kNoQubit) l2p_[p2l_[a]] = a;
    if (p2l_[b] != kNoQubit) l2p_[p2l_[b]] = b;
  }

  bool consistent() const {
    for (std::size_t l = 0; l < l2p_.size(); ++l) {
      if (l2p_[l] == kNoQubit || p2l_.at(l2p_[l]) != l) return false;
    }
    std::size_t occ = 0;
    for (auto l : p2l_) occ += (l != kNoQubit);
    return occ == l2p_.size();
  }

  bool operator==(const Layout&) const = default;

 private:
  std::vector<std::size_t> l2p_;
  std::vector<std::size_t> p2l_;
};

enum class RoutingStrategy { Greedy, SwapNetwork, Sabre };

inline std::string to_string(RoutingStrategy s) {
  switch (s) {
    case RoutingStrategy::Greedy: return "greedy";
    case RoutingStrategy::SwapNetwork: return "swap_network";
    case RoutingStrategy::Sabre: return "sabre";
  }
  return "?";
}

inline RoutingStrategy parse_strategy(const std::string& s) {
  if (s == "greedy") return RoutingStrategy::Greedy;
  if (s == "swap_network") return RoutingStrategy::SwapNetwork;
  if (s == "sabre") return RoutingStrategy::Sabre;
  throw std::invalid_argument("unknown routing strategy: " + s);
}

/// A routed circuit over physical node ids.
struct CompiledCircuit {
  Circuit circuit;
  Layout initial_layout;
  Layout final_layout;
  std::size_t swap_count = 0;
  RoutingStrategy strategy = RoutingStrategy::Greedy;
  /// Set when the swap network could not schedule the circuit and greedy
  /// routing finished the job.
  bool fell_back = false;
};

/// Two-qubit gates of `c` that do not act on an edge of `g`.
inline std::vector<std::size_t> conformance_violations(const Circuit& c, const CouplingGraph& g) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& gt = c[i];
    if (gt.two_qubit() && !g.has_edge(gt.qubits[0], gt.qubits[1])) bad.push_back(i);
  }
  return bad;
}

}  // namespace lnndqc
