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

// Dense statevector simulator used as a correctness oracle. Qubit k is bit
// k of the amplitude index. Measurements are never sampled: the caller
// fixes every outcome (a branch) and gets back the post-measurement state
// together with the probability of that branch.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/rng.hpp"

namespace lnndqc {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxSimQubits = 14;

class StateVector {
 public:
  StateVector() = default;

  static StateVector zero(std::size_t n) {
    check_width(n);
    StateVector s;
    s.n_ = n;
    s.amps_.assign(std::size_t{1} << n, cplx{0, 0});
    s.amps_[0] = 1.0;
    return s;
  }

  static StateVector basis(std::size_t n, std::size_t index) {
    auto s = zero(n);
    s.amps_[0] = 0.0;
    s.amps_.at(index) = 1.0;
    return s;
  }

  /// Haar-ish random state: i.i.d. complex Gaussians, normalized.
  static StateVector random(std::size_t n, Rng& rng) {
    auto s = zero(n);
    for (auto& a : s.amps_) a = cplx{rng.normal(), rng.normal()};
    s.normalize();
    return s;
  }

  static StateVector from_amplitudes(std::vector<cplx> amps) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if ((std::size_t{1} << n) != amps.size()) {
      throw std::invalid_argument("amplitude count must be a power of two");
    }
    check_width(n);
    StateVector s;
    s.n_ = n;
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void normalize() {
    const double nrm = std::sqrt(norm_squared());
    if (nrm > 0) {
      for (auto& a : amps_) a /= nrm;
    }
  }

  void apply_1q(std::size_t q, const std::array<cplx, 4>& m) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const cplx a0 = amps_[i], a1 = amps_[i | bit];
      amps_[i] = m[0] * a0 + m[1] * a1;
      amps_[i | bit] = m[2] * a0 + m[3] * a1;
    }
  }

  /// Multiplies amplitudes by phase[b_a + 2 b_b] where b_a, b_b are the
  /// values of qubits a and b.
  void apply_diag_2q(std::size_t a, std::size_t b, const std::array<cplx, 4>& phase) {
    const std::size_t ba = std::size_t{1} << a, bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      amps_[i] *= phase[((i & ba) ? 1 : 0) + ((i & bb) ? 2 : 0)];
    }
  }

  void apply_cx(std::size_t c, std::size_t t) {
    const std::size_t bc = std::size_t{1} << c, bt = std::size_t{1} << t;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & bc) && !(i & bt)) std::swap(amps_[i], amps_[i | bt]);
    }
  }

  void apply_swap(std::size_t a, std::size_t b) {
    const std::size_t ba = std::size_t{1} << a, bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & ba) && !(i & bb)) std::swap(amps_[i], amps_[(i & ~ba) | bb]);
    }
  }

  /// Projects qubit q onto `outcome`; returns the outcome probability and
  /// renormalizes when it is nonzero.
  double project(std::size_t q, int outcome) {
    const std::size_t bit = std::size_t{1} << q;
    double p = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const bool one = (i & bit) != 0;
      if (one == (outcome == 1)) {
        p += std::norm(amps_[i]);
      } else {
        amps_[i] = 0;
      }
    }
    if (p > 0) {
      const double s = 1.0 / std::sqrt(p);
      for (auto& a : amps_) a *= s;
    }
    return p;
  }

 private:
  static void check_width(std::size_t n) {
    if (n > kMaxSimQubits) {
      throw std::length_error("simulator limited to " + std::to_string(kMaxSimQubits) +
                              " qubits, got " + std::to_string(n));
    }
  }

  std::size_t n_ = 0;
  std::vector<cplx> amps_{cplx{1, 0}};
};

namespace detail {

inline std::array<cplx, 4> matrix_1q(const Gate& g) {
  constexpr double r = 0.70710678118654752440084436210485;
  const cplx i{0, 1};
  switch (g.kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X:
    case GateKind::CORR_X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -i, i, 0};
    case GateKind::Z:
    case GateKind::CORR_Z: return {1, 0, 0, -1};
    case GateKind::RX: {
      const double c = std::cos(*g.param / 2), s = std::sin(*g.param / 2);
      return {c, -i * s, -i * s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(*g.param / 2), s = std::sin(*g.param / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ: {
      const cplx m = std::polar(1.0, -*g.param / 2);
      return {m, 0, 0, std::conj(m)};
    }
    default:
      throw std::logic_error("not a single-qubit unitary");
  }
}

}  // namespace detail

/// One outcome (0/1) per MEASURE gate, in circuit order.
using Branch = std::vector<int>;

struct SimResult {
  StateVector state;
  double probability = 1.0;
  /// True when the branch has probability zero; `state` is then meaningless.
  bool impossible = false;
};

inline std::size_t measurement_count(const Circuit& c) { return c.count(GateKind::MEASURE); }

inline std::vector<Branch> all_branches(std::size_t num_measurements) {
  if (num_measurements > 20) throw std::length_error("too many measurements to enumerate");
  std::vector<Branch> out;
  for (std::size_t m = 0; m < (std::size_t{1} << num_measurements); ++m) {
    Branch b(num_measurements);
    for (std::size_t k = 0; k < num_measurements; ++k) b[k] = static_cast<int>((m >> k) & 1);
    out.push_back(std::move(b));
  }
  return out;
}

inline void apply_gate(StateVector& s, const Gate& g) {
  switch (g.kind) {
    case GateKind::CX:
      s.apply_cx(g.qubits[0], g.qubits[1]);
      return;
    case GateKind::CZ:
      s.apply_diag_2q(g.qubits[0], g.qubits[1], {1, 1, 1, -1});
      return;
    case GateKind::CP:
      s.apply_diag_2q(g.qubits[0], g.qubits[1], {1, 1, 1, std::polar(1.0, *g.param)});
      return;
    case GateKind::RZZ: {
      const cplx m = std::polar(1.0, -*g.param / 2);
      s.apply_diag_2q(g.qubits[0], g.qubits[1], {m, std::conj(m), std::conj(m), m});
      return;
    }
    case GateKind::SWAP:
      s.apply_swap(g.qubits[0], g.qubits[1]);
      return;
    case GateKind::EPR_PREP:
      s.apply_1q(g.qubits[0], detail::matrix_1q(gates::h(0)));
      s.apply_cx(g.qubits[0], g.qubits[1]);
      return;
    case GateKind::MEASURE:
    case GateKind::CORR_X:
    case GateKind::CORR_Z:
      throw std::logic_error("classical gates need a branch");
    default:
      s.apply_1q(g.qubits[0], detail::matrix_1q(g));
  }
}

/// Runs `c` on `input` along `branch`. CORR_* gates fire when their
/// classical bit is 1; classical bits start at 0.
namespace detail {

/// Runs `c`; `choose(state, qubit, index)` picks each measurement outcome.
template <class Choose>
SimResult run_circuit(const Circuit& c, StateVector input, Choose&& choose) {
  if (input.num_qubits() != c.num_qubits()) {
    throw std::invalid_argument("state width does not match circuit width");
  }
  SimResult r{std::move(input), 1.0, false};
  std::vector<int> bits(c.num_cbits(), 0);
  std::size_t m = 0;
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::MEASURE: {
        const int outcome = choose(r.state, g.qubits[0], m++);
        r.probability *= r.state.project(g.qubits[0], outcome);
        bits[*g.cbit] = outcome;
        if (r.probability <= 1e-15) {
          r.probability = 0;
          r.impossible = true;
          return r;
        }
        break;
      }
      case GateKind::CORR_X:
      case GateKind::CORR_Z:
        if (bits[*g.cbit] == 1) r.state.apply_1q(g.qubits[0], detail::matrix_1q(g));
        break;
      default:
        apply_gate(r.state, g);
    }
  }
  return r;
}

}  // namespace detail

inline SimResult simulate(const Circuit& c, StateVector input, const Branch& branch = {}) {
  if (branch.size() < measurement_count(c)) {
    throw std::invalid_argument("branch does not cover every measurement");
  }
  return detail::run_circuit(c, std::move(input),
                             [&](const StateVector&, std::size_t, std::size_t k) { return branch[k]; });
}

/// Moves the content of qubit i to qubit perm[i].
inline StateVector permute_qubits(const StateVector& s, const std::vector<std::size_t>& perm) {
  if (perm.size() != s.num_qubits()) throw std::invalid_argument("permutation width mismatch");
  std::vector<cplx> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t q = 0; q < perm.size(); ++q) {
      if (i >> q & 1) j |= std::size_t{1} << perm[q];
    }
    out[j] = s[i];
  }
  return StateVector::from_amplitudes(std::move(out));
}

/// Places an n-qubit state into a wider register: qubit i goes to
/// positions[i], every other qubit is |0>.
inline StateVector embed(const StateVector& s, const std::vector<std::size_t>& positions,
                         std::size_t width) {
  if (positions.size() != s.num_qubits()) throw std::invalid_argument("position count mismatch");
  auto out = StateVector::zero(width);
  out[0] = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t q = 0; q < positions.size(); ++q) {
      if (i >> q & 1) j |= std::size_t{1} << positions[q];
    }
    out[j] = s[i];
  }
  return out;
}

/// max_k |a_k - e^{i phi} b_k| with phi fitted on the largest-magnitude
/// amplitude of b.
inline double phase_aligned_distance(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("state size mismatch");
  std::size_t ref = 0;
  for (std::size_t k = 1; k < b.size(); ++k) {
    if (std::abs(b[k]) > std::abs(b[ref])) ref = k;
  }
  cplx phase{1, 0};
  if (std::abs(b[ref]) > 0 && std::abs(a[ref]) > 0) {
    phase = a[ref] / b[ref];
    phase /= std::abs(phase);
  }
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - phase * b[k]));
  return d;
}

/// One distinct end state of a measured circuit.
struct BranchOutcome {
  StateVector state;
  double probability = 0;
  /// Number of measurement assignments that end in this state.
  std::uint64_t branches = 0;
};

/// Runs every measurement branch of `c` on `input`. Branches are carried
/// side by side; before each measurement, branches whose states agree up to
/// global phase (within `merge_tol`) and whose still-to-be-read classical
/// bits agree are merged, since they evolve identically from there on.
/// Zero-probability branches are dropped. Without merging this is the plain
/// enumeration of all 2^m assignments.
inline std::vector<BranchOutcome> all_outcomes(const Circuit& c, const StateVector& input,
                                               double merge_tol = 1e-12) {
  if (input.num_qubits() != c.num_qubits()) {
    throw std::invalid_argument("state width does not match circuit width");
  }
  std::vector<std::size_t> last_read(c.num_cbits(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto k = c[i].kind;
    if (k == GateKind::CORR_X || k == GateKind::CORR_Z) last_read[*c[i].cbit] = i + 1;
  }
  struct Live {
    BranchOutcome out;
    std::vector<int> bits;
  };
  std::vector<Live> live;
  live.push_back({{input, 1.0, 1}, std::vector<int>(c.num_cbits(), 0)});
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& g = c[i];
    if (g.kind != GateKind::MEASURE) {
      for (auto& l : live) {
        if (g.kind == GateKind::CORR_X || g.kind == GateKind::CORR_Z) {
          if (l.bits[*g.cbit] == 1) l.out.state.apply_1q(g.qubits[0], detail::matrix_1q(g));
        } else {
          apply_gate(l.out.state, g);
        }
      }
      continue;
    }
    std::vector<Live> merged;
    for (auto& l : live) {
      for (std::size_t k = 0; k < l.bits.size(); ++k) {
        if (last_read[k] <= i) l.bits[k] = 0;
      }
      bool absorbed = false;
      for (auto& m : merged) {
        if (m.bits == l.bits && phase_aligned_distance(m.out.state, l.out.state) < merge_tol) {
          m.out.probability += l.out.probability;
          m.out.branches += l.out.branches;
          absorbed = true;
          break;
        }
      }
      if (!absorbed) merged.push_back(std::move(l));
    }
    live.clear();
    for (auto& l : merged) {
      for (int outcome : {0, 1}) {
        Live next = l;
        const double p = next.out.state.project(g.qubits[0], outcome);
        if (p * l.out.probability <= 1e-15) continue;
        next.out.probability *= p;
        next.bits[*g.cbit] = outcome;
        live.push_back(std::move(next));
      }
    }
  }
  std::vector<BranchOutcome> out;
  for (auto& l : live) out.push_back(std::move(l.out));
  return out;
}

struct EquivalenceReport {
  bool equivalent = true;
  double max_deviation = 0;
  std::uint64_t branches_checked = 0;
};

/// Compares `target` (may contain measurements and corrections) against the
/// measurement-free `reference`. For each seeded random input psi on
/// `reference`'s qubits, the expected output reference(psi) is embedded at
/// `out_pos`, the input is embedded at `in_pos`, and every possible branch of
/// `target` must reproduce the expectation up to one global phase.
inline EquivalenceReport compare_embedded(const Circuit& reference, const Circuit& target,
                                          const std::vector<std::size_t>& in_pos,
                                          const std::vector<std::size_t>& out_pos,
                                          double tol, std::size_t trials = 20,
                                          std::uint64_t seed = 2024) {
  if (measurement_count(reference) != 0) {
    throw std::invalid_argument("reference circuit must be measurement-free");
  }
  EquivalenceReport rep;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto psi = StateVector::random(reference.num_qubits(), rng);
    const auto want = embed(simulate(reference, psi).state, out_pos, target.num_qubits());
    const auto start = embed(psi, in_pos, target.num_qubits());
    double total_p = 0;
    for (const auto& o : all_outcomes(target, start)) {
      total_p += o.probability;
      rep.branches_checked += o.branches;
      rep.max_deviation = std::max(rep.max_deviation, phase_aligned_distance(o.state, want));
    }
    rep.max_deviation = std::max(rep.max_deviation, std::abs(total_p - 1.0));
  }
  rep.equivalent = rep.max_deviation < tol;
  return rep;
}

/// True iff c2 reproduces c1 with logical qubit i of c1 ending on qubit
/// perm[i] of c2, up to global phase, on `trials` random inputs.
inline bool equivalent_up_to(const Circuit& c1, const Circuit& c2,
                             const std::vector<std::size_t>& perm, double tol,
                             std::size_t trials = 20, std::uint64_t seed = 2024) {
  if (c1.num_qubits() != c2.num_qubits() || perm.size() != c1.num_qubits()) {
    throw std::invalid_argument("width mismatch");
  }
  std::vector<std::size_t> identity(c1.num_qubits());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  return compare_embedded(c1, c2, identity, perm, tol, trials, seed).equivalent;
}

/// Restricts a wide physical circuit to the qubits it touches plus
/// `keep`, so it can be simulated. Returns the compacted circuit and the
/// old->new index map (SIZE_MAX for dropped qubits).
struct Compacted {
  Circuit circuit;
  std::vector<std::size_t> index;
};

inline Compacted compact(const Circuit& c, const std::vector<std::size_t>& keep) {
  std::set<std::size_t> used(keep.begin(), keep.end());
  for (const auto& g : c.gates()) used.insert(g.qubits.begin(), g.qubits.end());
  std::vector<std::size_t> index(c.num_qubits(), SIZE_MAX);
  std::size_t k = 0;
  for (auto q : used) index.at(q) = k++;
  return {relabel(c, index, k), std::move(index)};
}

/// Equivalence of a routed circuit over physical qubits with its logical
/// source: logical i starts at initial[i] and must end at final[i].
inline EquivalenceReport routed_equivalent(const Circuit& logical, const Circuit& physical,
                                           const std::vector<std::size_t>& initial,
                                           const std::vector<std::size_t>& final_pos,
                                           double tol, std::size_t trials = 20,
                                           std::uint64_t seed = 2024) {
  std::vector<std::size_t> keep(initial);
  keep.insert(keep.end(), final_pos.begin(), final_pos.end());
  auto cc = compact(physical, keep);
  std::vector<std::size_t> in(initial.size()), out(final_pos.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    in[i] = cc.index[initial[i]];
    out[i] = cc.index[final_pos[i]];
  }
  return compare_embedded(logical, cc.circuit, in, out, tol, trials, seed);
}

}  // namespace lnndqc
