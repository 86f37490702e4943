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

#include <catch_amalgamated.hpp>

#include <limits>
#include <numbers>
#include <string>

#include "lnndqc/benchgen.hpp"
#include "lnndqc/circuit.hpp"
#include "lnndqc/errors.hpp"
#include "lnndqc/qasm.hpp"
#include "lnndqc/rng.hpp"

using namespace lnndqc;

TEST_CASE("parse empty program", "[qasm]") {
  const auto c = parse_qasm("qreg q[1];");
  CHECK(c.num_qubits() == 1);
  CHECK(c.empty());
}

TEST_CASE("parse Bell preparation", "[qasm]") {
  const auto c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];");
  REQUIRE(c.size() == 2);
  CHECK(c[0].kind == GateKind::H);
  CHECK(c[1].kind == GateKind::CX);
  CHECK(c[1].qubits == std::vector<std::size_t>{0, 1});
}

TEST_CASE("parse errors carry line numbers", "[qasm]") {
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\ncx q[0],q[5];\n"), ParseError);
  try {
    parse_qasm("qreg q[2];\nh q[0];\nfoo q[1];\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_qasm("h q[0];"), ParseError);
}

TEST_CASE("emit single H", "[qasm]") {
  Circuit c(1);
  c.add(gates::h(0));
  const auto text = emit_qasm(c);
  std::size_t hits = 0;
  for (auto pos = text.find("h q[0];"); pos != std::string::npos; pos = text.find("h q[0];", pos + 1)) ++hits;
  CHECK(hits == 1);
}

TEST_CASE("emit empty circuit is header only", "[qasm]") {
  const auto text = emit_qasm(Circuit(3));
  CHECK(text == "qreg q[3];\n");
}

TEST_CASE("angles survive a round trip", "[qasm]") {
  Circuit c(2);
  c.add(gates::cp(std::numbers::pi / 4, 0, 1));
  c.add(gates::rz(0.1234567890123456, 1));
  const auto back = parse_qasm(emit_qasm(c));
  CHECK(back == c);
}

TEST_CASE("teleport gates round trip", "[qasm]") {
  Circuit c(3, 2, "tp");
  c.add(gates::epr(1, 2)).add(gates::cx(0, 1)).add(gates::h(0));
  c.add(gates::measure(0, 0)).add(gates::measure(1, 1));
  c.add(gates::corr_x(2, 1)).add(gates::corr_z(2, 0));
  CHECK(parse_qasm(emit_qasm(c)) == c);
}

TEST_CASE("generated benchmarks round trip", "[qasm]") {
  for (std::size_t n : {1, 5, 12}) CHECK(parse_qasm(emit_qasm(qft(n))) == qft(n));
  CHECK(parse_qasm(emit_qasm(qft(6, true))) == qft(6, true));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto c = qaoa(three_regular_graph(10, s), 2, s);
    CHECK(parse_qasm(emit_qasm(c)) == c);
  }
}

TEST_CASE("gate validation", "[circuit]") {
  Circuit c(2, 1);
  CHECK_THROWS_AS(c.add(gates::cx(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(gates::h(2)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(gates::corr_x(0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(gates::rz(std::numeric_limits<double>::infinity(), 0)), std::invalid_argument);
}

TEST_CASE("depth examples", "[circuit]") {
  CHECK(depth(Circuit(2)) == 0);
  Circuit a(2);
  a.add(gates::h(0)).add(gates::h(1));
  CHECK(depth(a) == 1);
  Circuit b(2);
  b.add(gates::h(0)).add(gates::cx(0, 1)).add(gates::h(1));
  CHECK(depth(b) == 3);
}

TEST_CASE("corrections wait for their measurement", "[circuit]") {
  Circuit c(3, 1);
  c.add(gates::h(0)).add(gates::measure(0, 0)).add(gates::corr_x(2, 0));
  CHECK(depth(c) == 3);
}

TEST_CASE("gate count accounting", "[circuit]") {
  Circuit a(2);
  a.add(gates::h(0)).add(gates::cx(0, 1));
  CHECK(gate_count(a, SwapAccounting::SwapAsOne) == 2);
  CHECK(gate_count(a, SwapAccounting::SwapAsThreeCX) == 2);
  Circuit s(2);
  s.add(gates::swap(0, 1));
  CHECK(gate_count(s, SwapAccounting::SwapAsOne) == 1);
  CHECK(gate_count(s, SwapAccounting::SwapAsThreeCX) == 3);
  CHECK(gate_count(qft(10)) == 55);

  Circuit t(2, 1);
  t.add(gates::epr(0, 1)).add(gates::measure(0, 0)).add(gates::corr_x(1, 0)).add(gates::x(1));
  CHECK(gate_count(t) == 4);
  CHECK(gate_count(t, SwapAccounting::SwapAsOne, false) == 1);
}

TEST_CASE("depth properties on random circuits", "[circuit]") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    Circuit c(n);
    for (std::size_t k = 0; k < 20; ++k) {
      const auto a = rng.below(n);
      auto b = rng.below(n - 1);
      if (b >= a) ++b;
      if (rng.below(2)) {
        c.add(gates::h(a));
      } else {
        c.add(gates::cz(a, b));
      }
      CHECK(depth(c) <= gate_count(c));
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm.begin(), perm.end());
    CHECK(depth(relabel(c, perm, n)) == depth(c));
    const auto before = depth(c);
    c.add(gates::x(0));
    CHECK(depth(c) >= before);
  }
}
