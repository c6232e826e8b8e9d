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

#include "qsprep/pools.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qsprep/simulator.hpp"
#include "test_util.hpp"

namespace qsprep {
namespace {

using pools::OperatorKind;
using pools::Pool;
using pools::PoolOperator;

std::vector<cdouble> full_unitary(const Circuit &c) {
  const size_t dim = size_t{1} << c.n_qubits;
  std::vector<cdouble> u(dim * dim);
  for (size_t col = 0; col < dim; ++col) {
    StateVector psi(c.n_qubits);
    psi.amps.assign(dim, cdouble{0, 0});
    psi.amps[col] = 1.0;
    psi = simulate(c, psi);
    for (size_t row = 0; row < dim; ++row) u[row * dim + col] = psi.amps[row];
  }
  return u;
}

std::vector<cdouble> embedded_exponential(int n_qubits, const PoolOperator &op, double theta) {
  testutil::DenseMatrix local(1 << op.support.size());
  local.m = pools::exponential_matrix(op, theta);
  return testutil::embed_full(n_qubits, op.support, local).m;
}

int alpha_popcount(size_t index, int n_qubits) {
  int count = 0;
  for (int q = 0; q < n_qubits; q += 2) {
    if (index >> (n_qubits - 1 - q) & 1) ++count;
  }
  return count;
}

TEST(PoolBuildTest, SizesMatchTheCombinatorics) {
  EXPECT_EQ(pools::build_qeb_pool(2).ops.size(), 1u);
  EXPECT_EQ(pools::build_qeb_pool(4).ops.size(), 9u);   // 6 singles + 3 pairings
  EXPECT_EQ(pools::build_qubit_pool(2).ops.size(), 2u);
  EXPECT_EQ(pools::build_qubit_pool(4).ops.size(), 20u);  // 12 strings + 8 words

  // n = 6: C(6,2) singles; doubles = 3 pairings per 4-set.
  EXPECT_EQ(pools::build_qeb_pool(6).ops.size(), 15u + 3u * 15u);
  EXPECT_EQ(pools::build_qubit_pool(6).ops.size(), 2u * 15u + 8u * 15u);
}

TEST(PoolBuildTest, SzRestrictionKeepsOnlySameSectorMoves) {
  Pool pool = pools::build_qeb_pool(4, true);
  ASSERT_EQ(pool.ops.size(), 4u);
  EXPECT_EQ(pool.symmetry_tag, "particle_and_sz_preserving");
  std::set<std::string> ids;
  for (const auto &op : pool.ops) ids.insert(op.id);
  EXPECT_TRUE(ids.count("qeb_s:0,2"));
  EXPECT_TRUE(ids.count("qeb_s:1,3"));
  EXPECT_TRUE(ids.count("qeb_d:0,1|2,3"));
  EXPECT_TRUE(ids.count("qeb_d:0,3|1,2"));
}

TEST(PoolBuildTest, OrderingIsDeterministicAndIdsAreUnique) {
  for (const Pool &pool : {pools::build_qeb_pool(5), pools::build_qubit_pool(5)}) {
    std::set<std::string> ids;
    for (const auto &op : pool.ops) ids.insert(op.id);
    EXPECT_EQ(ids.size(), pool.ops.size());
    auto sorted = std::is_sorted(pool.ops.begin(), pool.ops.end(),
                                 [](const PoolOperator &a, const PoolOperator &b) {
                                   return std::tie(a.support, a.kind, a.id) <
                                          std::tie(b.support, b.kind, b.id);
                                 });
    EXPECT_TRUE(sorted);
  }
}

TEST(GeneratorTest, ExcitationGeneratorsAreTripotent) {
  // G^3 = G distinguishes the excitation generators (eigenvalues -1, 0, +1).
  for (const auto &op : pools::build_qeb_pool(4).ops) {
    const int dim = 1 << op.support.size();
    auto g_cubed = pools::detail::matmul(op.generator_sq, op.generator, dim);
    double diff = 0;
    for (size_t i = 0; i < g_cubed.size(); ++i) {
      diff = std::max(diff, std::abs(g_cubed[i] - op.generator[i]));
    }
    EXPECT_LE(diff, 1e-14) << op.id;
  }
}

TEST(GeneratorTest, QubitStringsAreInvolutory) {
  for (const auto &op : pools::build_qubit_pool(4).ops) {
    ASSERT_TRUE(op.involutory) << op.id;
    const int dim = 1 << op.support.size();
    auto sq = pools::detail::matmul(op.generator, op.generator, dim);
    auto id = pools::detail::identity_matrix(dim);
    double diff = 0;
    for (size_t i = 0; i < sq.size(); ++i) diff = std::max(diff, std::abs(sq[i] - id[i]));
    EXPECT_LE(diff, 1e-14) << op.id;
  }
}

TEST(GeneratorTest, SingleRotatesTheOneExcitationPair) {
  auto op = pools::detail::make_qeb_single(0, 1);
  const double theta = 0.6283;
  Circuit c(2);
  c.append(pools::exponential(op, theta));
  // exp(i theta G)|01> = cos(theta)|01> - sin(theta)|10>; |00>, |11> fixed.
  StateVector out = simulate(c, basis_state(2, "01"));
  EXPECT_NEAR(out.amps[1].real(), std::cos(theta), 1e-12);
  EXPECT_NEAR(out.amps[2].real(), -std::sin(theta), 1e-12);
  out = simulate(c, basis_state(2, "00"));
  EXPECT_NEAR(std::abs(out.amps[0]), 1.0, 1e-12);
  out = simulate(c, basis_state(2, "11"));
  EXPECT_NEAR(std::abs(out.amps[3]), 1.0, 1e-12);
}

TEST(GeneratorTest, DoubleTransfersBetweenThePairsCompletelyAtHalfPi) {
  auto op = pools::detail::make_qeb_double(0, 1, 2, 3);
  Circuit c(4);
  c.append(pools::exponential(op, std::numbers::pi / 2));
  // |0011> (pair (r,s) occupied) maps onto |1100> up to sign at theta = pi/2.
  StateVector out = simulate(c, basis_state(4, "0011"));
  EXPECT_NEAR(std::abs(out.amps[12]), 1.0, 1e-12);
  EXPECT_LE(std::abs(out.amps[3]), 1e-12);
  // Everything outside the pair subspace is untouched.
  out = simulate(c, basis_state(4, "0101"));
  EXPECT_NEAR(std::abs(out.amps[5]), 1.0, 1e-12);
}

TEST(GeneratorTest, ClosedFormExponentialMatchesSpectralOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  auto check_pool = [&](const Pool &pool) {
    for (const auto &op : pool.ops) {
      const int dim = 1 << op.support.size();
      const double theta = ang(rng);
      testutil::DenseMatrix g(dim);
      g.m = op.generator;
      auto oracle = testutil::expm_i_hermitian(g, theta);
      auto closed = pools::exponential_matrix(op, theta);
      double diff = 0;
      for (size_t i = 0; i < closed.size(); ++i) {
        diff = std::max(diff, std::abs(closed[i] - oracle.m[i]));
      }
      EXPECT_LE(diff, 1e-12) << op.id << " theta=" << theta;
    }
  };
  check_pool(pools::build_qeb_pool(4));
  check_pool(pools::build_qubit_pool(4));
}

TEST(GeneratorTest, PoolExponentialsAreRealMatrices) {
  // Both families exponentiate to real orthogonal matrices, which is why
  // target states with non-trivial complex phases are out of reach.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (const Pool &pool : {pools::build_qeb_pool(4), pools::build_qubit_pool(4)}) {
    for (const auto &op : pool.ops) {
      auto m = pools::exponential_matrix(op, ang(rng));
      for (const auto &v : m) EXPECT_LE(std::abs(v.imag()), 1e-15) << op.id;
    }
  }
}

TEST(TemplateTest, SingleExcitationCircuitEqualsTheExponential) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      int p = static_cast<int>(rng() % n);
      int q = static_cast<int>(rng() % n);
      if (p == q) continue;
      if (p > q) std::swap(p, q);
      auto op = pools::detail::make_qeb_single(p, q);
      const double theta = ang(rng);
      Circuit tpl = pools::qeb_single_template(n, p, q, theta);
      GateCounts counts = count_gates(tpl);
      EXPECT_EQ(counts.cnot, 3);
      EXPECT_EQ(counts.single_qubit, 7);
      EXPECT_EQ(counts.cnot, op.template_cnots);
      EXPECT_EQ(counts.single_qubit, op.template_single_qubit);
      double diff = testutil::phase_aligned_max_diff(full_unitary(tpl),
                                                     embedded_exponential(n, op, theta));
      EXPECT_LE(diff, 1e-10) << op.id << " n=" << n << " theta=" << theta;
    }
  }
}

TEST(TemplateTest, DoubleExcitationCircuitEqualsTheExponential) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  for (int n = 4; n <= 6; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<int> qubits(n);
      std::iota(qubits.begin(), qubits.end(), 0);
      std::shuffle(qubits.begin(), qubits.end(), rng);
      int p = qubits[0], q = qubits[1], r = qubits[2], s = qubits[3];
      if (p > q) std::swap(p, q);
      if (r > s) std::swap(r, s);
      if (p > r) {
        std::swap(p, r);
        std::swap(q, s);
      }
      auto op = pools::detail::make_qeb_double(p, q, r, s);
      const double theta = ang(rng);
      Circuit tpl = pools::qeb_double_template(n, p, q, r, s, theta);
      GateCounts counts = count_gates(tpl);
      EXPECT_EQ(counts.cnot, 13);
      EXPECT_EQ(counts.single_qubit, 21);
      EXPECT_EQ(counts.cnot, op.template_cnots);
      EXPECT_EQ(counts.single_qubit, op.template_single_qubit);
      double diff = testutil::phase_aligned_max_diff(full_unitary(tpl),
                                                     embedded_exponential(n, op, theta));
      EXPECT_LE(diff, 1e-10) << op.id << " n=" << n << " theta=" << theta;
    }
  }
}

TEST(TemplateTest, PauliWordCircuitEqualsTheExponential) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  const std::vector<std::pair<std::vector<int>, std::string>> cases = {
      {{0, 1}, "YX"},       {{1, 3}, "XY"},           {{0, 2, 3}, "XZY"},
      {{0, 1, 2, 3}, "XXXY"}, {{1, 2, 3, 4}, "YYYX"},  {{0, 4}, "ZZ"},
  };
  for (const auto &[support, word] : cases) {
    const int n = 5;
    const double theta = ang(rng);
    Circuit tpl = pools::pauli_string_template(n, support, word, theta);
    GateCounts counts = count_gates(tpl);
    EXPECT_EQ(counts.cnot, 2 * (static_cast<int>(word.size()) - 1));
    int basis_gates = 0;
    for (char l : word) basis_gates += (l == 'X' || l == 'Y') ? 2 : 0;
    EXPECT_EQ(counts.single_qubit, basis_gates + 1);

    PoolOperator op;
    op.support = support;
    op.generator = pools::detail::word_matrix(word);
    op.involutory = true;
    double diff = testutil::phase_aligned_max_diff(full_unitary(tpl),
                                                   embedded_exponential(n, op, theta));
    EXPECT_LE(diff, 1e-10) << word << " theta=" << theta;
  }
}

TEST(TemplateTest, TemplateCostFieldsMatchEmittedGatesAcrossWholePools) {
  for (const Pool &pool : {pools::build_qeb_pool(5), pools::build_qubit_pool(5)}) {
    for (const auto &op : pool.ops) {
      GateCounts counts = count_gates(pools::operator_template(5, op, 0.37));
      EXPECT_EQ(counts.cnot, op.template_cnots) << op.id;
      EXPECT_EQ(counts.single_qubit, op.template_single_qubit) << op.id;
      EXPECT_EQ(counts.mcu_unexpanded, 0) << op.id;
    }
  }
}

TEST(TemplateTest, OperatorTemplateAgreesWithExponentialGate) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  const int n = 5;
  for (const Pool &pool : {pools::build_qeb_pool(n), pools::build_qubit_pool(n)}) {
    for (size_t i = 0; i < pool.ops.size(); i += 7) {
      const auto &op = pool.ops[i];
      const double theta = ang(rng);
      StateVector probe = testutil::random_state(n, 31 + i);
      StateVector via_template = simulate(pools::operator_template(n, op, theta), probe);
      StateVector via_gate = apply_gate(probe, pools::exponential(op, theta));
      EXPECT_LE(testutil::phase_aligned_max_diff(via_template, via_gate), 1e-10) << op.id;
    }
  }
}

TEST(TemplateTest, RejectsMalformedWords) {
  EXPECT_THROW(pools::pauli_string_template(3, {}, "", 0.1), input_error);
  EXPECT_THROW(pools::pauli_string_template(3, {0, 1}, "X", 0.1), input_error);
  EXPECT_THROW(pools::pauli_string_template(3, {0, 1}, "XI", 0.1), input_error);
}

TEST(SymmetryTest, QebExponentialsConserveParticleNumber) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  const int n = 6;
  for (const auto &op : pools::build_qeb_pool(n).ops) {
    Gate g = pools::exponential(op, ang(rng));
    for (size_t b : {size_t{5}, size_t{12}, size_t{33}, size_t{60}}) {
      StateVector psi(n);
      psi.amps.assign(psi.dim(), cdouble{0, 0});
      psi.amps[b] = 1.0;
      psi = apply_gate(psi, g);
      const int weight = std::popcount(b);
      for (size_t idx = 0; idx < psi.dim(); ++idx) {
        if (std::abs(psi.amps[idx]) > 1e-12) {
          EXPECT_EQ(std::popcount(idx), weight) << op.id << " leaks from " << b << " to " << idx;
        }
      }
    }
  }
}

TEST(SymmetryTest, RestrictedQebExponentialsConserveSzToo) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  const int n = 6;
  for (const auto &op : pools::build_qeb_pool(n, true).ops) {
    Gate g = pools::exponential(op, ang(rng));
    for (size_t b = 0; b < (size_t{1} << n); b += 5) {
      StateVector psi(n);
      psi.amps.assign(psi.dim(), cdouble{0, 0});
      psi.amps[b] = 1.0;
      psi = apply_gate(psi, g);
      for (size_t idx = 0; idx < psi.dim(); ++idx) {
        if (std::abs(psi.amps[idx]) > 1e-12) {
          EXPECT_EQ(std::popcount(idx), std::popcount(b)) << op.id;
          EXPECT_EQ(alpha_popcount(idx, n), alpha_popcount(b, n)) << op.id;
        }
      }
    }
  }
}

TEST(SymmetryTest, QubitPoolBreaksParticleNumber) {
  // Witness: the weight-two string moves |00> toward |11> and |01>/|10>.
  auto pool = pools::build_qubit_pool(2);
  bool found_leak = false;
  for (const auto &op : pool.ops) {
    StateVector psi = apply_gate(basis_state(2, "00"), pools::exponential(op, 0.7));
    for (size_t idx = 0; idx < psi.dim(); ++idx) {
      if (std::abs(psi.amps[idx]) > 1e-9 && std::popcount(idx) != 0) found_leak = true;
    }
  }
  EXPECT_TRUE(found_leak);
}

}  // namespace
}  // namespace qsprep
