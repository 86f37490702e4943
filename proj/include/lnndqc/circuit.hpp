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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lnndqc {

enum class GateKind : std::uint8_t {
  H,
  X,
  Y,
  Z,
  RX,
  RY,
  RZ,
  CX,
  CZ,
  CP,
  RZZ,
  SWAP,
  MEASURE,
  CORR_X,
  CORR_Z,
  EPR_PREP,
};

inline constexpr std::size_t arity(GateKind k) noexcept {
  switch (k) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::CP:
    case GateKind::RZZ:
    case GateKind::SWAP:
    case GateKind::EPR_PREP:
      return 2;
    default:
      return 1;
  }
}

inline constexpr bool has_param(GateKind k) noexcept {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ ||
         k == GateKind::CP || k == GateKind::RZZ;
}

inline constexpr bool has_cbit(GateKind k) noexcept {
  return k == GateKind::MEASURE || k == GateKind::CORR_X ||
         k == GateKind::CORR_Z;
}

/// Teleportation plumbing rather than program gates.
inline constexpr bool is_bookkeeping(GateKind k) noexcept {
  return k == GateKind::EPR_PREP || k == GateKind::MEASURE ||
         k == GateKind::CORR_X || k == GateKind::CORR_Z;
}

/// Diagonal in the computational basis; any two of these commute.
inline constexpr bool is_diagonal(GateKind k) noexcept {
  return k == GateKind::Z || k == GateKind::RZ || k == GateKind::CZ ||
         k == GateKind::CP || k == GateKind::RZZ;
}

/// Two-qubit gates that act as a controlled unitary from qubits[0].
/// CZ and CP are symmetric, so either operand may play the control.
inline constexpr bool is_controlled(GateKind k) noexcept {
  return k == GateKind::CX || k == GateKind::CZ || k == GateKind::CP;
}

inline constexpr bool is_symmetric(GateKind k) noexcept {
  return k == GateKind::CZ || k == GateKind::CP || k == GateKind::RZZ ||
         k == GateKind::SWAP;
}

inline std::string_view gate_name(GateKind k) noexcept {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::CP: return "cp";
    case GateKind::RZZ: return "rzz";
    case GateKind::SWAP: return "swap";
    case GateKind::MEASURE: return "measure";
    case GateKind::CORR_X: return "corr_x";
    case GateKind::CORR_Z: return "corr_z";
    case GateKind::EPR_PREP: return "epr";
  }
  return "?";
}

struct Gate {
  GateKind kind{GateKind::H};
  std::vector<std::size_t> qubits;
  std::optional<double> param;
  std::optional<std::size_t> cbit;

  bool operator==(const Gate&) const = default;

  bool two_qubit() const noexcept { return qubits.size() == 2; }
  bool touches(std::size_t q) const noexcept {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
  }
};

namespace gates {

inline Gate one(GateKind k, std::size_t q) { return Gate{k, {q}, {}, {}}; }
inline Gate two(GateKind k, std::size_t a, std::size_t b) {
  return Gate{k, {a, b}, {}, {}};
}

inline Gate h(std::size_t q) { return one(GateKind::H, q); }
inline Gate x(std::size_t q) { return one(GateKind::X, q); }
inline Gate y(std::size_t q) { return one(GateKind::Y, q); }
inline Gate z(std::size_t q) { return one(GateKind::Z, q); }
inline Gate rx(double t, std::size_t q) { return Gate{GateKind::RX, {q}, t, {}}; }
inline Gate ry(double t, std::size_t q) { return Gate{GateKind::RY, {q}, t, {}}; }
inline Gate rz(double t, std::size_t q) { return Gate{GateKind::RZ, {q}, t, {}}; }
inline Gate cx(std::size_t c, std::size_t t) { return two(GateKind::CX, c, t); }
inline Gate cz(std::size_t a, std::size_t b) { return two(GateKind::CZ, a, b); }
inline Gate cp(double t, std::size_t a, std::size_t b) {
  return Gate{GateKind::CP, {a, b}, t, {}};
}
inline Gate rzz(double t, std::size_t a, std::size_t b) {
  return Gate{GateKind::RZZ, {a, b}, t, {}};
}
inline Gate swap(std::size_t a, std::size_t b) { return two(GateKind::SWAP, a, b); }
inline Gate epr(std::size_t a, std::size_t b) { return two(GateKind::EPR_PREP, a, b); }
inline Gate measure(std::size_t q, std::size_t c) {
  return Gate{GateKind::MEASURE, {q}, {}, c};
}
inline Gate corr_x(std::size_t q, std::size_t c) {
  return Gate{GateKind::CORR_X, {q}, {}, c};
}
inline Gate corr_z(std::size_t q, std::size_t c) {
  return Gate{GateKind::CORR_Z, {q}, {}, c};
}

}  // namespace gates

/// Throws std::invalid_argument if `g` is malformed for a circuit of the
/// given width.
inline void validate_gate(const Gate& g, std::size_t num_qubits,
                          std::size_t num_cbits) {
  if (g.qubits.size() != arity(g.kind)) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                ": wrong number of qubits");
  }
  for (auto q : g.qubits) {
    if (q >= num_qubits) {
      throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                  ": qubit index " + std::to_string(q) +
                                  " out of range");
    }
  }
  if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                ": operands must be distinct");
  }
  if (has_param(g.kind) != g.param.has_value()) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                ": parameter mismatch");
  }
  if (g.param && !std::isfinite(*g.param)) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                ": angle must be finite");
  }
  if (has_cbit(g.kind) != g.cbit.has_value()) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                ": classical bit mismatch");
  }
  if (g.cbit && *g.cbit >= num_cbits) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                ": classical bit out of range");
  }
}

/// An ordered gate list over `num_qubits` qubits and `num_cbits` classical
/// bits. Gate order is program order.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits, std::size_t num_cbits = 0,
                   std::string name = {})
      : num_qubits_(num_qubits), num_cbits_(num_cbits), name_(std::move(name)) {}

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t num_cbits() const noexcept { return num_cbits_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  void set_name(std::string name) { name_ = std::move(name); }

  /// Allocates a fresh classical bit and returns its index.
  std::size_t add_cbit() { return num_cbits_++; }

  Circuit& add(Gate g) {
    validate_gate(g, num_qubits_, num_cbits_);
    gates_.push_back(std::move(g));
    return *this;
  }

  std::size_t count(GateKind k) const {
    return static_cast<std::size_t>(std::count_if(
        gates_.begin(), gates_.end(), [k](const Gate& g) { return g.kind == k; }));
  }

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t num_qubits_ = 0;
  std::size_t num_cbits_ = 0;
  std::string name_;
  std::vector<Gate> gates_;
};

enum class SwapAccounting { SwapAsOne, SwapAsThreeCX };

inline std::string_view to_string(SwapAccounting a) noexcept {
  return a == SwapAccounting::SwapAsOne ? "swap_as_one" : "swap_as_three_cx";
}

inline SwapAccounting parse_accounting(std::string_view s) {
  if (s == "swap_as_one" || s == "one" || s == "1") return SwapAccounting::SwapAsOne;
  if (s == "swap_as_three_cx" || s == "three_cx" || s == "3") {
    return SwapAccounting::SwapAsThreeCX;
  }
  throw std::invalid_argument("unknown accounting: " + std::string(s));
}

/// Number of gates. SWAPs count 3 under SwapAsThreeCX. Teleport
/// bookkeeping (EPR_PREP, MEASURE, CORR_*) is counted unless
/// `include_bookkeeping` is false.
inline std::size_t gate_count(const Circuit& c,
                              SwapAccounting accounting = SwapAccounting::SwapAsOne,
                              bool include_bookkeeping = true) {
  std::size_t n = 0;
  for (const auto& g : c.gates()) {
    if (!include_bookkeeping && is_bookkeeping(g.kind)) continue;
    n += (g.kind == GateKind::SWAP && accounting == SwapAccounting::SwapAsThreeCX)
             ? 3
             : 1;
  }
  return n;
}

/// ASAP layer index (1-based) of every gate. A gate waits for every earlier
/// gate on a shared qubit, and for every earlier gate on its classical bit.
inline std::vector<std::size_t> asap_layers(const Circuit& c) {
  std::vector<std::size_t> qlevel(c.num_qubits(), 0);
  std::vector<std::size_t> clevel(c.num_cbits(), 0);
  std::vector<std::size_t> out;
  out.reserve(c.size());
  for (const auto& g : c.gates()) {
    std::size_t lvl = 0;
    for (auto q : g.qubits) lvl = std::max(lvl, qlevel[q]);
    if (g.cbit) lvl = std::max(lvl, clevel[*g.cbit]);
    ++lvl;
    for (auto q : g.qubits) qlevel[q] = lvl;
    if (g.cbit) clevel[*g.cbit] = lvl;
    out.push_back(lvl);
  }
  return out;
}

inline std::size_t depth(const Circuit& c) {
  const auto layers = asap_layers(c);
  return layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end());
}

/// Returns a copy of `c` with every qubit index q replaced by map[q].
inline Circuit relabel(const Circuit& c, const std::vector<std::size_t>& map,
                       std::size_t new_width) {
  Circuit out(new_width, c.num_cbits(), c.name());
  for (auto g : c.gates()) {
    for (auto& q : g.qubits) q = map.at(q);
    out.add(std::move(g));
  }
  return out;
}

}  // namespace lnndqc
