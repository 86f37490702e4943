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

#include <algorithm>
#include <cstddef>
#include <vector>

#include "lnndqc/circuit.hpp"

namespace lnndqc {

/// Gate dependency graph. Gate g depends on an earlier gate h when they
/// share a qubit or classical bit, except (optionally) when both are
/// diagonal and therefore commute.
struct GateDag {
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::size_t> num_pred;

  std::size_t size() const noexcept { return succ.size(); }
};

inline GateDag build_dag(const Circuit& c, bool commute_diagonal) {
  GateDag dag;
  const auto n = c.size();
  dag.succ.resize(n);
  dag.num_pred.assign(n, 0);
  // Per wire: last non-commuting gate, and the diagonal run after it.
  std::vector<std::size_t> last(c.num_qubits(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> run(c.num_qubits());
  std::vector<std::size_t> last_c(c.num_cbits(), SIZE_MAX);

  auto link = [&](std::size_t from, std::size_t to, std::vector<std::size_t>& preds) {
    if (from == SIZE_MAX) return;
    if (std::find(preds.begin(), preds.end(), from) != preds.end()) return;
    preds.push_back(from);
    dag.succ[from].push_back(to);
    ++dag.num_pred[to];
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = c[i];
    const bool diag = commute_diagonal && is_diagonal(g.kind);
    std::vector<std::size_t> preds;
    for (auto q : g.qubits) {
      link(last[q], i, preds);
      if (!diag) {
        for (auto r : run[q]) link(r, i, preds);
      }
    }
    if (g.cbit) link(last_c[*g.cbit], i, preds);
    for (auto q : g.qubits) {
      if (diag) {
        run[q].push_back(i);
      } else {
        last[q] = i;
        run[q].clear();
      }
    }
    if (g.cbit) last_c[*g.cbit] = i;
  }
  return dag;
}

}  // namespace lnndqc
