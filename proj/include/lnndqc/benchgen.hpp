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

// QFT and QAOA benchmark generators plus the problem graphs QAOA runs on.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/rng.hpp"

namespace lnndqc {

enum class GraphFamily { Ring, ThreeRegular, ErdosRenyi };

struct ProblemGraph {
  std::size_t num_vertices = 0;
  /// Sorted, each pair (u, v) with u < v.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  GraphFamily family = GraphFamily::Ring;
  double p = 0;  // ErdosRenyi only
  std::uint64_t seed = 0;

  bool operator==(const ProblemGraph&) const = default;

  bool is_complete() const {
    return edges.size() == num_vertices * (num_vertices - 1) / 2;
  }
};

namespace detail {

inline void normalize_edges(ProblemGraph& g) {
  for (auto& [u, v] : g.edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

}  // namespace detail

inline ProblemGraph ring_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("ring needs at least 3 vertices");
  ProblemGraph g{n, {}, GraphFamily::Ring, 0, 0};
  for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  detail::normalize_edges(g);
  return g;
}

/// Random simple 3-regular graph by the pairing model with restarts.
inline ProblemGraph three_regular_graph(std::size_t n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("3-regular graph needs an even vertex count >= 4");
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), 3, v);
    rng.shuffle(stubs.begin(), stubs.end());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      auto u = std::min(stubs[i], stubs[i + 1]), v = std::max(stubs[i], stubs[i + 1]);
      if (u == v || !seen.emplace(u, v).second) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ProblemGraph g{n, {seen.begin(), seen.end()}, GraphFamily::ThreeRegular, 0, seed};
      return g;
    }
  }
  throw std::runtime_error("failed to sample a 3-regular graph");
}

/// G(n, p). With p = 1 this is the complete graph.
inline ProblemGraph erdos_renyi_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability out of [0,1]");
  Rng rng(seed);
  ProblemGraph g{n, {}, GraphFamily::ErdosRenyi, p, seed};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (p >= 1.0 || rng.open01() < p) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

/// Edge-list text: one "u v" per line, '#' comments. A "# vertices: N"
/// comment fixes the vertex count; otherwise it is max index + 1.
inline ProblemGraph read_edge_list(std::istream& in) {
  ProblemGraph g;
  std::size_t declared = 0;
  bool have_declared = false;
  std::size_t max_v = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) {
      std::istringstream cs(line.substr(h + 1));
      std::string key;
      if (cs >> key && key == "vertices:" && cs >> declared) have_declared = true;
      line.resize(h);
    }
    std::istringstream ls(line);
    std::size_t u, v;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected two vertices");
    }
    if (u == v) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": self-loop");
    }
    g.edges.emplace_back(u, v);
    max_v = std::max({max_v, u, v});
    any = true;
  }
  g.num_vertices = have_declared ? declared : (any ? max_v + 1 : 0);
  if (any && max_v >= g.num_vertices) {
    throw std::invalid_argument("edge references vertex beyond declared count");
  }
  g.family = GraphFamily::ErdosRenyi;
  g.p = g.num_vertices > 1
            ? static_cast<double>(g.edges.size()) /
                  static_cast<double>(g.num_vertices * (g.num_vertices - 1) / 2)
            : 0.0;
  detail::normalize_edges(g);
  return g;
}

inline void write_edge_list(std::ostream& out, const ProblemGraph& g) {
  out << "# vertices: " << g.num_vertices << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

/// Textbook QFT: H on i, then CP(pi/2^(j-i)) on (j, i) for j > i. The
/// output register is bit-reversed unless `with_reversal` appends the swap
/// layer.
inline Circuit qft(std::size_t n, bool with_reversal = false) {
  if (n == 0) throw std::invalid_argument("qft needs at least one qubit");
  Circuit c(n, 0, "qft_" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    c.add(gates::h(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      c.add(gates::cp(std::numbers::pi / std::ldexp(1.0, static_cast<int>(j - i)), j, i));
    }
  }
  if (with_reversal) {
    for (std::size_t i = 0; i < n / 2; ++i) c.add(gates::swap(i, n - 1 - i));
  }
  return c;
}

/// Layered QAOA ansatz. Angles are drawn from `seed` in (0, pi): per layer
/// one gamma for every RZZ and one beta for every RX.
inline Circuit qaoa(const ProblemGraph& g, std::size_t layers, std::uint64_t seed) {
  if (layers == 0) throw std::invalid_argument("qaoa needs at least one layer");
  if (g.num_vertices == 0) throw std::invalid_argument("qaoa needs a non-empty graph");
  Circuit c(g.num_vertices, 0, "qaoa_" + std::to_string(g.num_vertices));
  Rng rng(seed);
  for (std::size_t q = 0; q < g.num_vertices; ++q) c.add(gates::h(q));
  for (std::size_t l = 0; l < layers; ++l) {
    const double gamma = std::numbers::pi * rng.open01();
    const double beta = std::numbers::pi * rng.open01();
    for (const auto& [u, v] : g.edges) c.add(gates::rzz(gamma, u, v));
    for (std::size_t q = 0; q < g.num_vertices; ++q) c.add(gates::rx(beta, q));
  }
  return c;
}

}  // namespace lnndqc
