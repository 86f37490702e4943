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

// Reader and writer for the line-oriented QASM subset:
//
//   qreg q[N]; creg c[M];
//   h|x|y|z q[i];            rx|ry|rz(FLOAT) q[i];
//   cx|cz|swap q[i],q[j];    cp|rzz(FLOAT) q[i],q[j];
//   measure q[i] -> c[k];    if(c[k]==1) x|z q[i];
//   epr q[i],q[j];
//
// `//` starts a comment. A leading `// name: <label>` comment carries the
// circuit name. OPENQASM and include lines are accepted and ignored.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lnndqc/circuit.hpp"
#include "lnndqc/errors.hpp"

namespace lnndqc {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class StatementCursor {
 public:
  StatementCursor(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  std::size_t index() {
    skip_ws();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  double real() {
    skip_ws();
    double v = 0;
    const char* first = s_.data() + pos_;
    if (pos_ < s_.size() && s_[pos_] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  /// `reg[i]`, checking the register name.
  std::size_t ref(std::string_view reg) {
    auto name = ident();
    if (name != reg) fail("unknown register '" + name + "'");
    expect("[");
    auto i = index();
    expect("]");
    return i;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::optional<GateKind> kind_from_name(std::string_view n) {
  static constexpr GateKind kinds[] = {
      GateKind::H,  GateKind::X,  GateKind::Y,   GateKind::Z,   GateKind::RX,
      GateKind::RY, GateKind::RZ, GateKind::CX,  GateKind::CZ,  GateKind::CP,
      GateKind::RZZ, GateKind::SWAP, GateKind::EPR_PREP};
  for (auto k : kinds) {
    if (gate_name(k) == n) return k;
  }
  return std::nullopt;
}

inline std::string format_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline Circuit parse_qasm(std::string_view text) {
  std::optional<Circuit> circ;
  std::string name;
  std::size_t ncbits = 0;
  std::size_t line_no = 0;

  auto require = [&](std::size_t line) -> Circuit& {
    if (!circ) throw ParseError(line, "gate before qreg declaration");
    return *circ;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto c = line.find("//"); c != std::string_view::npos) {
      auto comment = detail::trim(line.substr(c + 2));
      if (comment.rfind("name:", 0) == 0 && !circ) {
        name = std::string(detail::trim(comment.substr(5)));
      }
      line = line.substr(0, c);
    }

    // Several statements may share a line; each ends with ';'.
    std::size_t s = 0;
    while (true) {
      auto semi = line.find(';', s);
      std::string_view stmt = detail::trim(
          line.substr(s, semi == std::string_view::npos ? line.size() - s : semi - s));
      if (semi == std::string_view::npos) {
        if (!stmt.empty()) throw ParseError(line_no, "missing ';'");
        break;
      }
      s = semi + 1;
      if (stmt.empty()) continue;

      detail::StatementCursor cur(stmt, line_no);
      if (stmt.rfind("OPENQASM", 0) == 0 || stmt.rfind("include", 0) == 0) continue;

      if (cur.accept("qreg")) {
        if (circ) cur.fail("duplicate qreg");
        auto n = cur.ref("q");
        if (!cur.done()) cur.fail("trailing tokens");
        circ.emplace(n, ncbits, name);
        continue;
      }
      if (cur.accept("creg")) {
        auto m = cur.ref("c");
        if (!cur.done()) cur.fail("trailing tokens");
        if (circ) {
          if (circ->num_cbits() != 0 || !circ->empty()) cur.fail("creg after gates");
          Circuit fresh(circ->num_qubits(), m, name);
          circ = std::move(fresh);
        }
        ncbits = m;
        continue;
      }

      auto checked_add = [&](Gate g) {
        auto& c = require(line_no);
        for (auto q : g.qubits) {
          if (q >= c.num_qubits()) {
            cur.fail("qubit index " + std::to_string(q) + " out of range (qreg size " +
                     std::to_string(c.num_qubits()) + ")");
          }
        }
        if (g.cbit && *g.cbit >= c.num_cbits()) {
          cur.fail("classical bit " + std::to_string(*g.cbit) + " out of range");
        }
        try {
          c.add(std::move(g));
        } catch (const std::invalid_argument& e) {
          cur.fail(e.what());
        }
      };

      if (cur.accept("if")) {
        cur.expect("(");
        auto k = cur.ref("c");
        cur.expect("==");
        if (cur.index() != 1) cur.fail("only ==1 conditions are supported");
        cur.expect(")");
        auto op = cur.ident();
        auto q = cur.ref("q");
        if (!cur.done()) cur.fail("trailing tokens");
        if (op == "x") {
          checked_add(gates::corr_x(q, k));
        } else if (op == "z") {
          checked_add(gates::corr_z(q, k));
        } else {
          cur.fail("unsupported conditional gate '" + op + "'");
        }
        continue;
      }

      auto op = cur.ident();
      if (op == "measure") {
        auto q = cur.ref("q");
        cur.expect("->");
        auto k = cur.ref("c");
        if (!cur.done()) cur.fail("trailing tokens");
        checked_add(gates::measure(q, k));
        continue;
      }
      auto kind = detail::kind_from_name(op);
      if (!kind) cur.fail("unknown gate '" + op + "'");
      Gate g{*kind, {}, {}, {}};
      if (has_param(*kind)) {
        cur.expect("(");
        g.param = cur.real();
        cur.expect(")");
      }
      g.qubits.push_back(cur.ref("q"));
      if (arity(*kind) == 2) {
        cur.expect(",");
        g.qubits.push_back(cur.ref("q"));
      }
      if (!cur.done()) cur.fail("trailing tokens");
      checked_add(std::move(g));
    }
    if (end == text.size()) break;
  }
  if (!circ) throw ParseError(line_no, "missing qreg declaration");
  return std::move(*circ);
}

inline std::string emit_qasm(const Circuit& c) {
  std::ostringstream os;
  if (!c.name().empty()) os << "// name: " << c.name() << '\n';
  os << "qreg q[" << c.num_qubits() << "];\n";
  if (c.num_cbits() > 0) os << "creg c[" << c.num_cbits() << "];\n";
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::MEASURE:
        os << "measure q[" << g.qubits[0] << "] -> c[" << *g.cbit << "];\n";
        continue;
      case GateKind::CORR_X:
      case GateKind::CORR_Z:
        os << "if(c[" << *g.cbit << "]==1) " << (g.kind == GateKind::CORR_X ? 'x' : 'z')
           << " q[" << g.qubits[0] << "];\n";
        continue;
      default:
        break;
    }
    os << gate_name(g.kind);
    if (g.param) os << '(' << detail::format_angle(*g.param) << ')';
    os << " q[" << g.qubits[0] << ']';
    if (g.qubits.size() == 2) os << ",q[" << g.qubits[1] << ']';
    os << ";\n";
  }
  return os.str();
}

}  // namespace lnndqc
