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

// JSON exchange for topologies and the sidecars written next to routed and
// distributed QASM.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lnndqc/dqc.hpp"
#include "lnndqc/errors.hpp"
#include "lnndqc/layout.hpp"
#include "lnndqc/topology.hpp"

namespace lnndqc {

using json = nlohmann::ordered_json;

namespace detail {

inline json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const auto& [u, v] : edges) a.push_back({u, v});
  return a;
}

inline std::vector<Edge> edges_from(const json& a) {
  std::vector<Edge> out;
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be [u, v]");
    out.push_back(make_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>()));
  }
  return out;
}

}  // namespace detail

inline json to_json(const CouplingGraph& g) {
  json j;
  j["num_nodes"] = g.num_nodes();
  j["edges"] = detail::edges_json(g.edges());
  if (g.heavy_hex_distance()) j["heavy_hex_d"] = *g.heavy_hex_distance();
  return j;
}

inline json to_json(const LnnTopology& t) {
  json j = to_json(t.graph);
  j["line"] = t.line;
  json d = json::object();
  for (const auto& [anchor, node] : t.dangling) d[std::to_string(anchor)] = node;
  j["dangling"] = d;
  j["removed_edges"] = detail::edges_json(t.removed_edges);
  return j;
}

inline json to_json(const MultiChipTopology& t) {
  json j;
  j["num_nodes"] = t.num_nodes();
  j["chips"] = json::array();
  for (const auto& c : t.chips) j["chips"].push_back(to_json(c));
  j["link"] = {t.link.first, t.link.second};
  j["link_kind"] = to_string(t.link_kind);
  j["comm"] = {t.comm(0), t.comm(1)};
  return j;
}

/// Accepts any object with num_nodes and edges. Throws std::invalid_argument
/// on malformed input.
inline CouplingGraph coupling_from_json(const json& j) {
  try {
    CouplingGraph g(j.at("num_nodes").get<std::size_t>(), detail::edges_from(j.at("edges")));
    if (j.contains("heavy_hex_d")) g.set_heavy_hex_distance(j["heavy_hex_d"].get<std::size_t>());
    return g;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad graph JSON: ") + e.what());
  }
}

inline LnnTopology lnn_from_json(const json& j) {
  try {
    std::map<std::size_t, std::size_t> dangling;
    for (const auto& [k, v] : j.at("dangling").items()) dangling[std::stoul(k)] = v.get<std::size_t>();
    auto t = make_lnn(j.at("num_nodes").get<std::size_t>(),
                      j.at("line").get<std::vector<std::size_t>>(), std::move(dangling));
    if (j.contains("removed_edges")) t.removed_edges = detail::edges_from(j["removed_edges"]);
    if (j.contains("heavy_hex_d")) t.graph.set_heavy_hex_distance(j["heavy_hex_d"].get<std::size_t>());
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad LNN topology JSON: ") + e.what());
  }
}

inline MultiChipTopology multichip_from_json(const json& j) {
  try {
    MultiChipTopology t;
    for (const auto& c : j.at("chips")) t.chips.push_back(lnn_from_json(c));
    if (t.chips.size() != 2) throw std::invalid_argument("expected exactly two chips");
    t.link = {j.at("link").at(0).get<std::size_t>(), j.at("link").at(1).get<std::size_t>()};
    t.link_kind = parse_link_kind(j.at("link_kind").get<std::string>());
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad two-chip topology JSON: ") + e.what());
  }
}

inline json to_json(const CompiledCircuit& c) {
  json j;
  j["num_physical"] = c.circuit.num_qubits();
  j["initial_layout"] = c.initial_layout.log2phys();
  j["final_layout"] = c.final_layout.log2phys();
  j["swap_count"] = c.swap_count;
  j["strategy"] = to_string(c.strategy);
  j["fell_back"] = c.fell_back;
  return j;
}

inline json to_json(const DistributedCircuit& d) {
  json j;
  j["topology"] = to_json(d.topo);
  j["mode"] = to_string(d.mode);
  j["qubit_chip"] = d.qubit_chip;
  j["initial_layout"] = d.initial_layout.log2phys();
  j["final_layout"] = d.final_layout.log2phys();
  json sites = json::array();
  for (const auto& s : d.nonlocal_sites) sites.push_back({{"gate", s.gate}, {"mode", to_string(s.mode)}});
  j["nonlocal_sites"] = sites;
  j["ebits_consumed"] = d.ebits_consumed;
  j["cross_group_swaps"] = d.cross_group_swaps;
  j["swap_count"] = d.swap_count;
  return j;
}

}  // namespace lnndqc
