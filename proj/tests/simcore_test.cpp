// Copyright 2026 The qsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qsprep/circuit.hpp"
#include "qsprep/circuit_io.hpp"
#include "qsprep/gates.hpp"
#include "qsprep/simulator.hpp"
#include "qsprep/state_vector.hpp"
#include "test_util.hpp"

namespace {

using qsprep::BitPattern;
using qsprep::cdouble;
using qsprep::Circuit;
using qsprep::Gate;
using qsprep::GateCounts;
using qsprep::StateVector;
using testutil::DenseMatrix;

constexpr double kInvSqrt2 = 0.7071067811865475244;

TEST(StateVectorTest, BasisStateIndexingIsBigEndian) {
  // Qubit 0 is the most significant index bit: "10" -> index 2.
  StateVector s = qsprep::basis_state(2, "10");
  ASSERT_EQ(s.dim(), 4u);
  EXPECT_EQ(s.amps[2], cdouble(1.0, 0.0));
  EXPECT_EQ(s.amps[0], cdouble(0.0, 0.0));
  EXPECT_EQ(s.amps[1], cdouble(0.0, 0.0));
  EXPECT_EQ(s.amps[3], cdouble(0.0, 0.0));

  StateVector t = qsprep::basis_state(4, "1100");
  EXPECT_EQ(t.amps[12], cdouble(1.0, 0.0));
  EXPECT_DOUBLE_EQ(qsprep::norm_squared(t), 1.0);
}

TEST(StateVectorTest, PatternHelpersRoundTrip) {
  EXPECT_EQ(qsprep::pattern_to_index("0101"), 5u);
  EXPECT_EQ(qsprep::index_to_pattern(5, 4), "0101");
  EXPECT_EQ(qsprep::hamming_weight("0101"), 2);
  EXPECT_EQ(qsprep::one_positions("0101"), (std::vector<int>{1, 3}));
  EXPECT_THROW(qsprep::basis_state(3, "01"), qsprep::input_error);
  EXPECT_THROW(qsprep::basis_state(2, "02"), qsprep::input_error);
  EXPECT_THROW(qsprep::basis_state(0, ""), qsprep::input_error);
}

TEST(StateVectorTest, OverlapAndFidelity) {
  StateVector zero = qsprep::basis_state(1, "0");
  StateVector plus(1);
  plus.amps = {cdouble{kInvSqrt2, 0}, cdouble{kInvSqrt2, 0}};

  EXPECT_NEAR(std::abs(qsprep::overlap(zero, zero) - cdouble(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(qsprep::fidelity(zero, plus), 0.5, 1e-15);
  // overlap is conjugate-linear in its first argument.
  StateVector phased(1);
  phased.amps = {cdouble{0, 1}, cdouble{0, 0}};
  cdouble o = qsprep::overlap(phased, zero);
  EXPECT_NEAR(std::abs(o - cdouble(0.0, -1.0)), 0.0, 1e-15);

  StateVector wider = qsprep::basis_state(2, "00");
  EXPECT_THROW(qsprep::overlap(zero, wider), qsprep::input_error);
}

TEST(SimulatorTest, HadamardOnZero) {
  StateVector s = qsprep::apply_gate(qsprep::basis_state(1, "0"), qsprep::gate::h(0));
  EXPECT_NEAR(s.amps[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(s.amps[1].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(s.amps[0].imag(), 0.0, 1e-15);
  EXPECT_NEAR(s.amps[1].imag(), 0.0, 1e-15);
}

TEST(SimulatorTest, CnotMapsTenToEleven) {
  StateVector s = qsprep::apply_gate(qsprep::basis_state(2, "10"), qsprep::gate::cnot(0, 1));
  EXPECT_NEAR(std::abs(s.amps[3] - cdouble(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amps[2]), 0.0, 1e-15);
}

TEST(SimulatorTest, RyHalfPiOnZero) {
  StateVector s =
      qsprep::apply_gate(qsprep::basis_state(1, "0"), qsprep::gate::ry(0, std::numbers::pi / 2));
  EXPECT_NEAR(s.amps[0].real(), std::cos(std::numbers::pi / 4), 1e-15);
  EXPECT_NEAR(s.amps[1].real(), std::sin(std::numbers::pi / 4), 1e-15);
}

TEST(SimulatorTest, ToffoliStyleMcuFlipsOnlyWhenControlsAreOne) {
  const std::array<cdouble, 4> pauli_x{cdouble{0, 0}, cdouble{1, 0}, cdouble{1, 0},
                                       cdouble{0, 0}};
  Gate toffoli = qsprep::gate::mcu({0, 1}, 2, pauli_x);

  StateVector s = qsprep::apply_gate(qsprep::basis_state(3, "110"), toffoli);
  EXPECT_NEAR(std::abs(s.amps[qsprep::pattern_to_index("111")] - cdouble(1.0, 0.0)), 0.0, 1e-15);

  StateVector t = qsprep::apply_gate(qsprep::basis_state(3, "010"), toffoli);
  EXPECT_NEAR(std::abs(t.amps[qsprep::pattern_to_index("010")] - cdouble(1.0, 0.0)), 0.0, 1e-15);
}

TEST(SimulatorTest, RejectsNonUnitaryExplicitMatrices) {
  const std::array<cdouble, 4> non_unitary{cdouble{1, 0}, cdouble{1, 0}, cdouble{0, 0},
                                           cdouble{1, 0}};
  EXPECT_THROW(qsprep::gate::mcu({0}, 1, non_unitary), qsprep::input_error);
  EXPECT_THROW(qsprep::gate::local_unitary({0, 1}, std::vector<cdouble>(16, cdouble{0.5, 0})),
               qsprep::input_error);
}

TEST(SimulatorTest, RejectsDuplicateOrOutOfRangeQubits) {
  Circuit c(2);
  EXPECT_THROW(c.append(qsprep::gate::cnot(0, 0)), qsprep::input_error);
  EXPECT_THROW(c.append(qsprep::gate::x(2)), qsprep::input_error);
  EXPECT_THROW(c.append(qsprep::gate::x(-1)), qsprep::input_error);

  Circuit ok(2);
  ok.append(qsprep::gate::h(0));
  StateVector wrong_width = qsprep::basis_state(3, "000");
  EXPECT_THROW(qsprep::simulate(ok, wrong_width), qsprep::input_error);
}

// Every fast path must agree with a brute-force full-matrix embedding.
TEST(SimulatorTest, FastPathsMatchFullMatrixOracle) {
  std::mt19937_64 rng(20260814);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);

  for (int n = 2; n <= 6; ++n) {
    StateVector state = testutil::random_state(n, 1000 + static_cast<std::uint64_t>(n));

    // Named single-qubit gates on every qubit.
    for (int q = 0; q < n; ++q) {
      for (Gate g : {qsprep::gate::x(q), qsprep::gate::h(q), qsprep::gate::rx(q, angle(rng)),
                     qsprep::gate::ry(q, angle(rng)), qsprep::gate::rz(q, angle(rng))}) {
        DenseMatrix local(2);
        auto m = qsprep::single_qubit_matrix(g);
        local.m.assign(m.begin(), m.end());
        StateVector expected = testutil::matvec(testutil::embed_full(n, {q}, local), state);
        StateVector actual = qsprep::apply_gate(state, g);
        EXPECT_LT(qsprep::max_abs_diff(actual, expected), 1e-13);
      }
    }

    // CNOT on a random ordered pair.
    int c = static_cast<int>(rng() % n);
    int t = (c + 1 + static_cast<int>(rng() % (n - 1))) % n;
    DenseMatrix cnot_local(4);
    cnot_local.at(0, 0) = cnot_local.at(1, 1) = 1.0;
    cnot_local.at(2, 3) = cnot_local.at(3, 2) = 1.0;
    {
      StateVector expected =
          testutil::matvec(testutil::embed_full(n, {c, t}, cnot_local), state);
      StateVector actual = qsprep::apply_gate(state, qsprep::gate::cnot(c, t));
      EXPECT_LT(qsprep::max_abs_diff(actual, expected), 1e-13);
    }

    // MCU with two controls and a random phase matrix.
    if (n >= 3) {
      double th = angle(rng);
      std::array<cdouble, 4> u{cdouble{std::cos(th), -std::sin(th)}, cdouble{0, 0}, cdouble{0, 0},
                               cdouble{std::cos(th), std::sin(th)}};
      DenseMatrix local(8);
      for (int i = 0; i < 6; ++i) local.at(i, i) = 1.0;
      local.at(6, 6) = u[0];
      local.at(6, 7) = u[1];
      local.at(7, 6) = u[2];
      local.at(7, 7) = u[3];
      StateVector expected =
          testutil::matvec(testutil::embed_full(n, {0, 1, 2}, local), state);
      StateVector actual = qsprep::apply_gate(state, qsprep::gate::mcu({0, 1}, 2, u));
      EXPECT_LT(qsprep::max_abs_diff(actual, expected), 1e-13);
    }
  }
}

// LocalUnitary with permuted, non-adjacent supports up to four qubits.
TEST(SimulatorTest, LocalUnitaryMatchesOracleOnPermutedSupports) {
  std::mt19937_64 rng(7);
  for (int n = 4; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      // Random unitary: exp(i * H) for random Hermitian H via the spectral oracle.
      const int dim = 1 << k;
      DenseMatrix herm(dim);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int r = 0; r < dim; ++r) {
        herm.at(r, r) = gauss(rng);
        for (int c = r + 1; c < dim; ++c) {
          herm.at(r, c) = cdouble{gauss(rng), gauss(rng)};
          herm.at(c, r) = std::conj(herm.at(r, c));
        }
      }
      DenseMatrix u = testutil::expm_i_hermitian(herm, 0.7);

      // Random permuted support.
      std::vector<int> qubits(n);
      for (int i = 0; i < n; ++i) qubits[i] = i;
      std::shuffle(qubits.begin(), qubits.end(), rng);
      std::vector<int> support(qubits.begin(), qubits.begin() + k);

      StateVector state = testutil::random_state(n, rng());
      StateVector expected = testutil::matvec(testutil::embed_full(n, support, u), state);
      StateVector actual =
          qsprep::apply_gate(state, qsprep::gate::local_unitary(support, u.m));
      EXPECT_LT(qsprep::max_abs_diff(actual, expected), 1e-12)
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(SimulatorTest, UnitaryGatesPreserveNormAndLinearity) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Circuit circuit(n);
    for (int i = 0; i < 12; ++i) {
      int q = static_cast<int>(rng() % n);
      int r = (q + 1 + static_cast<int>(rng() % (n - 1))) % n;
      switch (rng() % 4) {
        case 0: circuit.append(qsprep::gate::h(q)); break;
        case 1: circuit.append(qsprep::gate::ry(q, angle(rng))); break;
        case 2: circuit.append(qsprep::gate::rz(q, angle(rng))); break;
        default: circuit.append(qsprep::gate::cnot(q, r)); break;
      }
    }
    StateVector a = testutil::random_state(n, rng());
    StateVector b = testutil::random_state(n, rng());
    cdouble alpha{0.3, -0.4}, beta{-0.7, 0.2};

    StateVector ua = qsprep::simulate(circuit, a);
    StateVector ub = qsprep::simulate(circuit, b);
    EXPECT_NEAR(qsprep::norm_squared(ua), 1.0, 1e-12);

    StateVector combo(n);
    for (std::uint64_t i = 0; i < combo.dim(); ++i) {
      combo.amps[i] = alpha * a.amps[i] + beta * b.amps[i];
    }
    StateVector u_combo = qsprep::simulate(circuit, combo);
    for (std::uint64_t i = 0; i < combo.dim(); ++i) {
      EXPECT_LT(std::abs(u_combo.amps[i] - (alpha * ua.amps[i] + beta * ub.amps[i])), 1e-12);
    }
  }
}

TEST(CircuitTest, GateCountsFollowTheCountingRules) {
  const std::array<cdouble, 4> pauli_x{cdouble{0, 0}, cdouble{1, 0}, cdouble{1, 0}, cdouble{0, 0}};
  const std::array<cdouble, 4> phase{cdouble{1, 0}, cdouble{0, 0}, cdouble{0, 0}, cdouble{0, 1}};

  Circuit c(4);
  c.append(qsprep::gate::h(0));
  c.append(qsprep::gate::ry(1, 0.3));
  c.append(qsprep::gate::cnot(0, 1));
  c.append(qsprep::gate::mcu({2}, 3, pauli_x));      // single-controlled X counts as CNOT
  c.append(qsprep::gate::mcu({2}, 3, phase));        // single-controlled non-X stays unexpanded
  c.append(qsprep::gate::mcu({0, 1, 2}, 3, phase));  // >= 2 controls stays unexpanded
  c.append(qsprep::gate::mcu({}, 3, phase));         // control-free MCU is a single-qubit gate

  GateCounts counts = qsprep::count_gates(c);
  EXPECT_EQ(counts.single_qubit, 3);
  EXPECT_EQ(counts.cnot, 2);
  EXPECT_EQ(counts.mcu_unexpanded, 2);
  EXPECT_EQ(counts.local_unitary, 0);
  EXPECT_EQ(counts.total(), 7);
}

TEST(CircuitTest, CountsAreAdditiveOverConcatenation) {
  std::mt19937_64 rng(5);
  Circuit a(3), b(3);
  for (int i = 0; i < 8; ++i) {
    a.append(qsprep::gate::ry(static_cast<int>(rng() % 3), 0.1 * i));
    int c = static_cast<int>(rng() % 3);
    b.append(qsprep::gate::cnot(c, (c + 1 + static_cast<int>(rng() % 2)) % 3));
  }
  Circuit ab = a;
  ab.append_all(b);
  GateCounts ca = qsprep::count_gates(a);
  GateCounts cb = qsprep::count_gates(b);
  GateCounts expected = ca;
  expected += cb;
  EXPECT_EQ(qsprep::count_gates(ab), expected);
}

TEST(CircuitIoTest, JsonRoundTripPreservesSemantics) {
  const std::array<cdouble, 4> u{cdouble{kInvSqrt2, 0}, cdouble{kInvSqrt2, 0},
                                 cdouble{-kInvSqrt2, 0}, cdouble{kInvSqrt2, 0}};
  Circuit c(3);
  c.append(qsprep::gate::x(2));
  c.append(qsprep::gate::ry(0, 0.123456789012345));
  c.append(qsprep::gate::cnot(2, 0));
  c.append(qsprep::gate::mcu({0, 1}, 2, u));

  std::string encoded = qsprep::circuit_to_json_string(c);
  Circuit back = qsprep::circuit_from_json(nlohmann::json::parse(encoded));

  ASSERT_EQ(back.gates.size(), c.gates.size());
  StateVector in = testutil::random_state(3, 42);
  EXPECT_LT(qsprep::max_abs_diff(qsprep::simulate(c, in), qsprep::simulate(back, in)), 1e-15);

  // Serialization is deterministic: encode(decode(encode(x))) == encode(x).
  EXPECT_EQ(qsprep::circuit_to_json_string(back), encoded);
}

TEST(CircuitIoTest, MalformedJsonIsAnInputError) {
  EXPECT_THROW(qsprep::circuit_from_json(nlohmann::json::parse(R"({"gates": []})")),
               qsprep::input_error);
  EXPECT_THROW(
      qsprep::circuit_from_json(nlohmann::json::parse(
          R"({"n_qubits": 2, "gates": [{"kind": "WIBBLE", "qubits": [0]}]})")),
      qsprep::input_error);
  // Non-unitary explicit matrix must be rejected at load time.
  EXPECT_THROW(
      qsprep::circuit_from_json(nlohmann::json::parse(
          R"({"n_qubits": 2, "gates": [{"kind": "MCU", "qubits": [0, 1],
              "matrix": [[1,0],[1,0],[0,0],[1,0]]}]})")),
      qsprep::input_error);
}

}  // namespace
