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

// Coupling graphs: the heavy-hex lattice family, its serpentine LNN
// reduction with dangling qubits, and the two-chip composition linked
// through a single teleportation pair.
//
// Heavy-hex of distance d (odd, >= 3): d rows of W = 2d + 1 qubits; row r
// node at column c has id r*W + c. Between rows j and j+1 sits junction j
// with one bridge qubit per bridge column: columns = 2 (mod 4) for even j,
// 0 (mod 4) for odd j. Bridge ids follow the row qubits, ordered by
// junction then column. Every bridge joins the row node above and below.
//
// With this parity the rightmost column of even junctions and the leftmost
// column of odd junctions carry a bridge, so a serpentine covers every row:
// row 0 left to right, down the right-end bridge, row 1 right to left, down
// the left-end bridge, and so on. The remaining bridges lose their lower
// edge and hang off the row above as dangling qubits.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lnndqc/errors.hpp"
#include "lnndqc/rng.hpp"

namespace lnndqc {

using Edge = std::pair<std::size_t, std::size_t>;

inline Edge make_edge(std::size_t a, std::size_t b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

class CouplingGraph {
 public:
  CouplingGraph() = default;

  CouplingGraph(std::size_t num_nodes, std::vector<Edge> edges)
      : num_nodes_(num_nodes), adj_(num_nodes) {
    for (auto& e : edges) {
      e = make_edge(e.first, e.second);
      if (e.first == e.second) throw std::invalid_argument("self-loop in coupling graph");
      if (e.second >= num_nodes) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      throw std::invalid_argument("duplicate edge in coupling graph");
    }
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }

  bool has_edge(std::size_t a, std::size_t b) const {
    if (a >= num_nodes_ || b >= num_nodes_) return false;
    const auto& n = adj_[a];
    return std::binary_search(n.begin(), n.end(), b);
  }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m = std::max(m, a.size());
    return m;
  }

  /// Heavy-hex distance when this graph came from heavy_hex() or a
  /// reduction of it.
  std::optional<std::size_t> heavy_hex_distance() const noexcept { return hh_distance_; }
  void set_heavy_hex_distance(std::optional<std::size_t> d) { hh_distance_ = d; }

  std::vector<std::string>& labels() noexcept { return labels_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// BFS hop counts from `src`; SIZE_MAX for unreachable nodes.
  std::vector<std::size_t> bfs(std::size_t src) const {
    std::vector<std::size_t> dist(num_nodes_, SIZE_MAX);
    std::queue<std::size_t> q;
    dist.at(src) = 0;
    q.push(src);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj_[u]) {
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    return dist;
  }

  bool connected() const {
    if (num_nodes_ == 0) return true;
    auto d = bfs(0);
    return std::find(d.begin(), d.end(), SIZE_MAX) == d.end();
  }

  std::vector<std::vector<std::size_t>> distance_matrix() const {
    std::vector<std::vector<std::size_t>> m;
    m.reserve(num_nodes_);
    for (std::size_t v = 0; v < num_nodes_; ++v) m.push_back(bfs(v));
    return m;
  }

  /// Shortest path a -> b (inclusive), lowest-id neighbor first on ties.
  std::vector<std::size_t> shortest_path(std::size_t a, std::size_t b) const {
    auto dist = bfs(b);
    if (dist.at(a) == SIZE_MAX) throw std::invalid_argument("nodes are disconnected");
    std::vector<std::size_t> path{a};
    while (path.back() != b) {
      for (auto v : adj_[path.back()]) {
        if (dist[v] + 1 == dist[path.back()]) {
          path.push_back(v);
          break;
        }
      }
    }
    return path;
  }

  bool operator==(const CouplingGraph& o) const {
    return num_nodes_ == o.num_nodes_ && edges_ == o.edges_;
  }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::optional<std::size_t> hh_distance_;
  std::vector<std::string> labels_;
};

struct HeavyHexGeometry {
  struct Bridge {
    std::size_t junction;
    std::size_t column;
    std::size_t id;
  };

  std::size_t d = 0;
  std::size_t width = 0;
  std::vector<Bridge> bridges;

  explicit HeavyHexGeometry(std::size_t distance) : d(distance), width(2 * distance + 1) {
    if (distance < 3 || distance % 2 == 0) {
      throw std::invalid_argument("heavy-hex distance must be odd and >= 3, got " +
                                  std::to_string(distance));
    }
    std::size_t id = d * width;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      for (std::size_t c = (j % 2 == 0) ? 2 : 0; c < width; c += 4) {
        bridges.push_back({j, c, id++});
      }
    }
  }

  std::size_t row_node(std::size_t r, std::size_t c) const { return r * width + c; }
  std::size_t num_nodes() const { return d * width + bridges.size(); }

  /// The bridge a serpentine uses to leave row j.
  bool is_connector(const Bridge& b) const {
    return b.column == ((b.junction % 2 == 0) ? width - 1 : 0);
  }
};

inline CouplingGraph heavy_hex(std::size_t d) {
  HeavyHexGeometry geo(d);
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c + 1 < geo.width; ++c) {
      edges.emplace_back(geo.row_node(r, c), geo.row_node(r, c + 1));
    }
  }
  for (const auto& b : geo.bridges) {
    edges.push_back(make_edge(geo.row_node(b.junction, b.column), b.id));
    edges.push_back(make_edge(b.id, geo.row_node(b.junction + 1, b.column)));
  }
  CouplingGraph g(geo.num_nodes(), std::move(edges));
  g.set_heavy_hex_distance(d);
  auto& labels = g.labels();
  labels.resize(g.num_nodes());
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < geo.width; ++c) {
      labels[geo.row_node(r, c)] = "r" + std::to_string(r) + "c" + std::to_string(c);
    }
  }
  for (const auto& b : geo.bridges) {
    labels[b.id] = "b" + std::to_string(b.junction) + "c" + std::to_string(b.column);
  }
  return g;
}

/// A line backbone plus pendant (dangling) qubits hanging off it.
struct LnnTopology {
  std::vector<std::size_t> line;
  /// backbone anchor -> dangling node
  std::map<std::size_t, std::size_t> dangling;
  std::vector<Edge> removed_edges;
  /// The reduced graph: backbone path plus one edge per dangling node.
  CouplingGraph graph;

  std::size_t num_nodes() const { return graph.num_nodes(); }
  std::size_t capacity() const { return line.size(); }

  /// Backbone position of `node`, or SIZE_MAX if it is not on the line.
  std::size_t position(std::size_t node) const {
    auto it = std::find(line.begin(), line.end(), node);
    return it == line.end() ? SIZE_MAX : static_cast<std::size_t>(it - line.begin());
  }

  bool is_dangling(std::size_t node) const {
    for (const auto& [a, d] : dangling) {
      if (d == node) return true;
    }
    return false;
  }

  std::size_t anchor_of(std::size_t dangling_node) const {
    for (const auto& [a, d] : dangling) {
      if (d == dangling_node) return a;
    }
    throw std::invalid_argument("node is not dangling");
  }

  /// Dangling nodes ordered by their anchor's position along the line.
  std::vector<std::size_t> dangling_in_line_order() const {
    std::vector<std::size_t> out;
    for (auto v : line) {
      if (auto it = dangling.find(v); it != dangling.end()) out.push_back(it->second);
    }
    return out;
  }

  bool operator==(const LnnTopology& o) const {
    return line == o.line && dangling == o.dangling && removed_edges == o.removed_edges &&
           graph == o.graph;
  }
};

/// Builds an LnnTopology from an explicit line and pendant map. Mostly for
/// tests and small hand-made devices.
inline LnnTopology make_lnn(std::size_t num_nodes, std::vector<std::size_t> line,
                            std::map<std::size_t, std::size_t> dangling = {}) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) edges.push_back(make_edge(line[i], line[i + 1]));
  for (const auto& [a, d] : dangling) edges.push_back(make_edge(a, d));
  LnnTopology t{std::move(line), std::move(dangling), {}, CouplingGraph(num_nodes, std::move(edges))};
  return t;
}

/// Serpentine reduction of a heavy-hex graph (or of an already reduced
/// one; the result is the same). Never adds edges.
inline LnnTopology to_lnn(const CouplingGraph& g) {
  auto d = g.heavy_hex_distance();
  if (!d) throw UnsupportedTopology("to_lnn: graph is not a heavy-hex lattice");
  HeavyHexGeometry geo(*d);
  const auto full = heavy_hex(*d);
  if (g.num_nodes() != full.num_nodes()) {
    throw UnsupportedTopology("to_lnn: node count does not match heavy-hex distance");
  }

  LnnTopology t;
  std::vector<Edge> kept;
  for (std::size_t r = 0; r < geo.d; ++r) {
    for (std::size_t k = 0; k < geo.width; ++k) {
      const std::size_t c = (r % 2 == 0) ? k : geo.width - 1 - k;
      t.line.push_back(geo.row_node(r, c));
    }
    if (r + 1 == geo.d) break;
    for (const auto& b : geo.bridges) {
      if (b.junction == r && geo.is_connector(b)) t.line.push_back(b.id);
    }
  }
  for (std::size_t i = 0; i + 1 < t.line.size(); ++i) kept.push_back(make_edge(t.line[i], t.line[i + 1]));
  for (const auto& b : geo.bridges) {
    if (geo.is_connector(b)) continue;
    const auto upper = geo.row_node(b.junction, b.column);
    t.dangling[upper] = b.id;
    kept.push_back(make_edge(upper, b.id));
    t.removed_edges.push_back(make_edge(b.id, geo.row_node(b.junction + 1, b.column)));
  }
  std::sort(t.removed_edges.begin(), t.removed_edges.end());

  // The input must lie between the reduced graph and the full lattice.
  for (const auto& e : kept) {
    if (!g.has_edge(e.first, e.second)) {
      throw UnsupportedTopology("to_lnn: graph lacks a heavy-hex edge the line needs");
    }
  }
  for (const auto& e : g.edges()) {
    if (!full.has_edge(e.first, e.second)) {
      throw UnsupportedTopology("to_lnn: graph has an edge outside the heavy-hex lattice");
    }
  }

  t.graph = CouplingGraph(g.num_nodes(), std::move(kept));
  t.graph.set_heavy_hex_distance(*d);
  t.graph.labels() = full.labels();
  return t;
}

/// Smallest valid heavy-hex distance whose LNN backbone holds `qubits`.
inline std::size_t heavy_hex_distance_for(std::size_t qubits) {
  for (std::size_t d = 3;; d += 2) {
    if (2 * d * d + 2 * d - 1 >= qubits) return d;
  }
}

enum class LinkKind { DanglingLink, RandomLink };

inline std::string to_string(LinkKind k) {
  return k == LinkKind::DanglingLink ? "dangling" : "random";
}

inline LinkKind parse_link_kind(const std::string& s) {
  if (s == "dangling") return LinkKind::DanglingLink;
  if (s == "random") return LinkKind::RandomLink;
  throw std::invalid_argument("unknown link kind: " + s);
}

/// Two chips with disjoint global node ids (chip 1 offset by chip 0's node
/// count) joined by one teleportation link. Each link endpoint is served by
/// a communication qubit that holds the local half of every e-bit; those
/// two qubits take the ids right after both chips.
struct MultiChipTopology {
  std::vector<LnnTopology> chips;
  /// Global ids of the link endpoints on chip 0 and chip 1.
  Edge link{0, 0};
  LinkKind link_kind = LinkKind::DanglingLink;

  std::size_t offset(std::size_t chip) const {
    std::size_t off = 0;
    for (std::size_t c = 0; c < chip; ++c) off += chips[c].num_nodes();
    return off;
  }
  std::size_t chip_nodes() const { return offset(chips.size()); }
  /// Chip nodes plus the two communication qubits.
  std::size_t num_nodes() const { return chip_nodes() + 2; }
  std::size_t comm(std::size_t chip) const { return chip_nodes() + chip; }
  std::size_t endpoint(std::size_t chip) const { return chip == 0 ? link.first : link.second; }

  /// Chip owning a global node; communication qubits belong to their side.
  std::size_t chip_of(std::size_t node) const {
    if (node >= chip_nodes()) return node - chip_nodes();
    return node < chips[0].num_nodes() ? 0 : 1;
  }

  /// Local-to-global id on `chip`.
  std::size_t global(std::size_t chip, std::size_t local) const { return offset(chip) + local; }

  /// Intra-chip edges in global ids, including endpoint-to-comm edges.
  CouplingGraph local_graph() const {
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < chips.size(); ++c) {
      for (const auto& [u, v] : chips[c].graph.edges()) edges.push_back(make_edge(global(c, u), global(c, v)));
      edges.push_back(make_edge(endpoint(c), comm(c)));
    }
    return CouplingGraph(num_nodes(), std::move(edges));
  }

  /// True when a two-qubit gate on (a, b) is physically allowed: an
  /// intra-chip edge, an endpoint-comm edge, or the comm pair (e-bit
  /// channel).
  bool allows(std::size_t a, std::size_t b, const CouplingGraph& local) const {
    if (local.has_edge(a, b)) return true;
    return make_edge(a, b) == make_edge(comm(0), comm(1));
  }
};

/// Joins two chips from the same heavy-hex family. DanglingLink uses the
/// first dangling node in line order on each chip; RandomLink draws a
/// uniform backbone node per chip from `seed`. No edge is added inside
/// either chip.
inline MultiChipTopology link_chips(const LnnTopology& a, const LnnTopology& b, LinkKind kind,
                                    std::uint64_t seed) {
  if (a.line.size() != b.line.size() || a.dangling.size() != b.dangling.size() ||
      a.num_nodes() != b.num_nodes()) {
    throw std::invalid_argument("link_chips: chips must share the same LNN structure");
  }
  MultiChipTopology m{{a, b}, {0, 0}, kind};
  std::size_t end0, end1;
  if (kind == LinkKind::DanglingLink) {
    auto da = a.dangling_in_line_order(), db = b.dangling_in_line_order();
    if (da.empty() || db.empty()) {
      throw std::invalid_argument("link_chips: dangling link requested but a chip has no dangling node");
    }
    end0 = da.front();
    end1 = db.front();
  } else {
    Rng rng(seed);
    end0 = a.line[rng.below(a.line.size())];
    end1 = b.line[rng.below(b.line.size())];
  }
  m.link = {m.global(0, end0), m.global(1, end1)};
  return m;
}

/// Text rendering of a heavy-hex-derived LnnTopology: rows of backbone
/// qubits, with '|' bridges on the line, 'D' dangling qubits and ':' the
/// edges removed beneath them.
inline std::string render_ascii(const LnnTopology& t) {
  auto d = t.graph.heavy_hex_distance();
  if (!d) throw UnsupportedTopology("render_ascii: only heavy-hex-derived topologies");
  HeavyHexGeometry geo(*d);
  std::ostringstream os;
  for (std::size_t r = 0; r < geo.d; ++r) {
    for (std::size_t c = 0; c < geo.width; ++c) {
      os << (c ? "-o" : "o");
    }
    os << '\n';
    if (r + 1 == geo.d) break;
    std::string bridge_row(2 * geo.width - 1, ' '), lower_row(2 * geo.width - 1, ' ');
    for (const auto& b : geo.bridges) {
      if (b.junction != r) continue;
      bridge_row[2 * b.column] = geo.is_connector(b) ? '|' : 'D';
      lower_row[2 * b.column] = geo.is_connector(b) ? '|' : ':';
    }
    os << bridge_row << '\n' << lower_row << '\n';
  }
  return os.str();
}

}  // namespace lnndqc
