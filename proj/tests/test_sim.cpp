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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lnndqc/benchgen.hpp"
#include "lnndqc/dqc.hpp"
#include "lnndqc/router_linear.hpp"
#include "lnndqc/sim.hpp"

using namespace lnndqc;
using cplx = std::complex<double>;

namespace {

constexpr double kTol = 1e-9;

std::size_t bit_reverse(std::size_t x, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < n; ++k) r |= ((x >> k) & 1) << (n - 1 - k);
  return r;
}

/// Two-qubit state on qubits (0, 1) of a 3-qubit register, projected with
/// `bra` and leaving qubit 2: v[b] = sum_a conj(bra[a]) amp[a + 4b].
std::array<cplx, 2> residual(const StateVector& s, const std::array<cplx, 4>& bra) {
  std::array<cplx, 2> v{};
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t a = 0; a < 4; ++a) v[b] += std::conj(bra[a]) * s[a + 4 * b];
  }
  return v;
}

}  // namespace

TEST_CASE("Bell preparation amplitudes", "[sim]") {
  Circuit c(2);
  c.add(gates::h(0)).add(gates::cx(0, 1));
  const auto r = simulate(c, StateVector::zero(2));
  const double h = 1 / std::sqrt(2.0);
  CHECK(std::abs(r.state[0] - h) < kTol);
  CHECK(std::abs(r.state[1]) < kTol);
  CHECK(std::abs(r.state[2]) < kTol);
  CHECK(std::abs(r.state[3] - h) < kTol);
}

TEST_CASE("empty circuit is the identity", "[sim]") {
  Rng rng(1);
  const auto psi = StateVector::random(3, rng);
  const auto r = simulate(Circuit(3), psi);
  CHECK(phase_aligned_distance(r.state, psi) < kTol);
  CHECK(r.probability == 1.0);
}

TEST_CASE("qft(3) on |000> is uniform", "[sim]") {
  const auto r = simulate(qft(3), StateVector::zero(3));
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(r.state[k] - cplx(1 / std::sqrt(8.0), 0)) < kTol);
}

TEST_CASE("qft matches the DFT matrix with bit-reversed input", "[sim]") {
  for (std::size_t n : {3, 4, 5}) {
    const std::size_t dim = std::size_t{1} << n;
    double worst = 0;
    for (std::size_t x = 0; x < dim; ++x) {
      const auto out = simulate(qft(n), StateVector::basis(n, x)).state;
      const auto rx = static_cast<double>(bit_reverse(x, n));
      for (std::size_t y = 0; y < dim; ++y) {
        const auto want = std::polar(1 / std::sqrt(static_cast<double>(dim)),
                                     2 * std::numbers::pi * rx * static_cast<double>(y) / static_cast<double>(dim));
        worst = std::max(worst, std::abs(out[y] - want));
      }
    }
    INFO("n = " << n);
    CHECK(worst < kTol);
  }
}

TEST_CASE("width limit", "[sim]") {
  CHECK_THROWS_AS(StateVector::zero(kMaxSimQubits + 1), std::length_error);
  CHECK_NOTHROW(StateVector::zero(kMaxSimQubits));
}

TEST_CASE("unitary gates keep the norm", "[sim]") {
  Rng rng(2);
  auto s = StateVector::random(4, rng);
  const std::vector<Gate> gs{gates::h(0),       gates::rx(0.3, 1),    gates::ry(1.1, 2), gates::rz(2.0, 3),
                             gates::cx(0, 2),   gates::cz(1, 3),      gates::cp(0.7, 3, 0),
                             gates::rzz(0.4, 1, 2), gates::swap(0, 3), gates::y(2), gates::x(1), gates::z(0)};
  for (const auto& g : gs) {
    apply_gate(s, g);
    CHECK(std::abs(s.norm_squared() - 1) < kTol);
  }
}

TEST_CASE("simulation is linear", "[sim]") {
  Rng rng(3);
  const auto c = qaoa(ring_graph(4), 2, 9);
  for (int t = 0; t < 5; ++t) {
    const auto u = StateVector::random(4, rng), v = StateVector::random(4, rng);
    const cplx a(0.6, 0.2), b(-0.3, 0.7);
    std::vector<cplx> mix(16);
    for (std::size_t k = 0; k < 16; ++k) mix[k] = a * u[k] + b * v[k];
    const auto lhs = simulate(c, StateVector::from_amplitudes(mix)).state;
    const auto su = simulate(c, u).state, sv = simulate(c, v).state;
    double worst = 0;
    for (std::size_t k = 0; k < 16; ++k) worst = std::max(worst, std::abs(lhs[k] - (a * su[k] + b * sv[k])));
    CHECK(worst < kTol);
  }
}

TEST_CASE("branch probabilities sum to one", "[sim]") {
  Rng rng(4);
  Circuit c(3, 3);
  c.add(gates::h(0)).add(gates::cx(0, 1)).add(gates::ry(0.8, 2));
  c.add(gates::measure(0, 0)).add(gates::measure(1, 1)).add(gates::measure(2, 2));
  const auto psi = StateVector::random(3, rng);
  double total = 0;
  std::size_t impossible = 0;
  for (const auto& br : all_branches(3)) {
    const auto r = simulate(c, psi, br);
    total += r.probability;
    impossible += r.impossible ? 1 : 0;
  }
  CHECK(std::abs(total - 1) < kTol);

  // A |0> measured as 1 is flagged.
  Circuit z(1, 1);
  z.add(gates::measure(0, 0));
  const auto r = simulate(z, StateVector::zero(1), {1});
  CHECK(r.impossible);
  CHECK(r.probability == 0);
}

TEST_CASE("merged branch outcomes cover every assignment", "[sim]") {
  Rng rng(6);
  const auto tp = lower_state_teleport(0, 1, 2, 0, 1);
  Circuit c(3, 2);
  for (const auto& g : tp) c.add(g);
  const auto outs = all_outcomes(c, embed(StateVector::random(1, rng), {0}, 3));
  std::uint64_t branches = 0;
  double p = 0;
  for (const auto& o : outs) {
    branches += o.branches;
    p += o.probability;
  }
  CHECK(branches == 4);
  CHECK(std::abs(p - 1) < kTol);
}

TEST_CASE("equivalence checks", "[sim]") {
  const auto c = qft(3);
  CHECK(equivalent_up_to(c, c, {0, 1, 2}, kTol));
  Circuit a(2), b(2);
  a.add(gates::cx(0, 1));
  b.add(gates::cx(1, 0));
  CHECK_FALSE(equivalent_up_to(a, b, {0, 1}, kTol));
  CHECK_THROWS_AS(equivalent_up_to(a, Circuit(3), {0, 1}, kTol), std::invalid_argument);

  Circuit s(2);
  s.add(gates::swap(0, 1));
  CHECK(equivalent_up_to(Circuit(2), s, {1, 0}, kTol));
  CHECK_FALSE(equivalent_up_to(Circuit(2), s, {0, 1}, kTol));
}

TEST_CASE("qft(4) against its greedy routing", "[sim]") {
  const auto line = make_lnn(4, {0, 1, 2, 3});
  const auto c = qft(4);
  const auto r = route_greedy(c, line, place(c, line));
  CHECK(routed_equivalent(c, r.circuit, r.initial_layout.log2phys(), r.final_layout.log2phys(), kTol).equivalent);
}

TEST_CASE("pre-measurement teleport state has the four Bell terms", "[sim][teleport]") {
  // psi on q0, e-bit on (q1, q2). Projecting (q0, q1) onto each Bell state
  // leaves q2 holding psi up to a Pauli, with weight 1/2.
  Rng rng(7);
  const double h = 1 / std::sqrt(2.0);
  const std::array<cplx, 4> phi_p{h, 0, 0, h}, phi_m{h, 0, 0, -h}, psi_p{0, h, h, 0}, psi_m{0, -h, h, 0};
  for (int t = 0; t < 20; ++t) {
    const auto in = StateVector::random(1, rng);
    const cplx al = in[0], be = in[1];
    Circuit c(3);
    c.add(gates::epr(1, 2));
    const auto s = simulate(c, embed(in, {0}, 3)).state;
    // Index a = q0 + 2 q1; |Psi-> = (|q0=0,q1=1> - |q0=1,q1=0>)/sqrt2.
    const auto v1 = residual(s, phi_p), v2 = residual(s, phi_m), v3 = residual(s, psi_p), v4 = residual(s, psi_m);
    CHECK(std::abs(v1[0] - 0.5 * al) < kTol);
    CHECK(std::abs(v1[1] - 0.5 * be) < kTol);
    CHECK(std::abs(v2[0] - 0.5 * al) < kTol);
    CHECK(std::abs(v2[1] + 0.5 * be) < kTol);
    CHECK(std::abs(v3[0] - 0.5 * be) < kTol);
    CHECK(std::abs(v3[1] - 0.5 * al) < kTol);
    CHECK(std::abs(v4[0] + 0.5 * be) < kTol);
    CHECK(std::abs(v4[1] - 0.5 * al) < kTol);
  }
}
