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

#ifndef QSPREP_POOLS_HPP_
#define QSPREP_POOLS_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qsprep/circuit.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/gates.hpp"
#include "qsprep/state_vector.hpp"

// Operator pools for adaptive ansatz growth, their closed-form exponentials,
// and the CNOT-optimized circuit realizations of those exponentials.
//
// Two families:
//   - qubit-excitation pool ("qeb"): Hermitian generators G with G^3 = G that
//     rotate amplitude between |01>/|10> pairs (singles) or |1100>/|0011>
//     pairs (doubles); particle-number conserving, optionally restricted to
//     S_z-conserving supports under the interleaved alpha/beta layout.
//   - hardware-efficient qubit pool ("qubit"): bare X/Y Pauli words (weight
//     two, plus the eight odd-Y-count weight-four words per 4-qubit support);
//     involutory generators, cheaper circuits, no conserved symmetries.
namespace qsprep::pools {

enum class OperatorKind { QebSingle, QebDouble, QubitString };

inline const char *to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::QebSingle: return "qeb_single";
    case OperatorKind::QebDouble: return "qeb_double";
    case OperatorKind::QubitString: return "qubit_string";
  }
  return "?";
}

/// One pool element: a Hermitian generator G on a small ordered support,
/// its cached square, and the gate cost of its circuit template.
struct PoolOperator {
  std::string id;
  OperatorKind kind = OperatorKind::QebSingle;
  std::vector<int> support;       // local matrix is big-endian over this order
  std::string pauli_label;        // letters aligned with support (qubit strings)
  std::vector<cdouble> generator; // row-major 2^k x 2^k, Hermitian
  std::vector<cdouble> generator_sq;
  bool involutory = false;        // G^2 = I (qubit strings)
  int template_cnots = 0;
  int template_single_qubit = 0;
};

struct Pool {
  int n_qubits = 0;
  std::string kind;          // "qeb" or "qubit"
  std::string symmetry_tag;  // "particle_and_sz_preserving" or "none"
  std::vector<PoolOperator> ops;
};

namespace detail {

inline const std::array<cdouble, 4> kPauliX{cdouble{0, 0}, cdouble{1, 0}, cdouble{1, 0},
                                            cdouble{0, 0}};
inline const std::array<cdouble, 4> kPauliY{cdouble{0, 0}, cdouble{0, -1}, cdouble{0, 1},
                                            cdouble{0, 0}};
inline const std::array<cdouble, 4> kPauliZ{cdouble{1, 0}, cdouble{0, 0}, cdouble{0, 0},
                                            cdouble{-1, 0}};

inline std::vector<cdouble> identity_matrix(int dim) {
  std::vector<cdouble> m(static_cast<size_t>(dim) * dim, cdouble{0, 0});
  for (int i = 0; i < dim; ++i) m[static_cast<size_t>(i) * dim + i] = cdouble{1, 0};
  return m;
}

inline std::vector<cdouble> matmul(const std::vector<cdouble> &a, const std::vector<cdouble> &b,
                                   int dim) {
  std::vector<cdouble> out(static_cast<size_t>(dim) * dim, cdouble{0, 0});
  for (int r = 0; r < dim; ++r) {
    for (int k = 0; k < dim; ++k) {
      const cdouble v = a[static_cast<size_t>(r) * dim + k];
      if (v == cdouble{0, 0}) continue;
      for (int c = 0; c < dim; ++c) {
        out[static_cast<size_t>(r) * dim + c] += v * b[static_cast<size_t>(k) * dim + c];
      }
    }
  }
  return out;
}

/// Matrix of an X/Y/Z word over `k` qubits; letter j acts on local bit j
/// (big-endian).  One nonzero per row, so it is built directly.
inline std::vector<cdouble> word_matrix(const std::string &word) {
  const int k = static_cast<int>(word.size());
  const int dim = 1 << k;
  std::vector<cdouble> m(static_cast<size_t>(dim) * dim, cdouble{0, 0});
  for (int col = 0; col < dim; ++col) {
    int row = col;
    cdouble value{1, 0};
    for (int j = 0; j < k; ++j) {
      const int bit = (col >> (k - 1 - j)) & 1;
      switch (word[static_cast<size_t>(j)]) {
        case 'X':
          row ^= 1 << (k - 1 - j);
          break;
        case 'Y':
          row ^= 1 << (k - 1 - j);
          value *= bit ? cdouble{0, -1} : cdouble{0, 1};
          break;
        case 'Z':
          value *= bit ? cdouble{-1, 0} : cdouble{1, 0};
          break;
        default:
          throw input_error("Pauli word may contain only X, Y, Z");
      }
    }
    m[static_cast<size_t>(row) * dim + col] += value;
  }
  return m;
}

inline void add_scaled(std::vector<cdouble> &acc, const std::vector<cdouble> &m, double s) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += s * m[i];
}

}  // namespace detail

/// Single qubit-excitation generator on support (p, q):
///   G = (X_q Y_p - X_p Y_q) / 2,
/// which annihilates |00> and |11> and acts as -i|01><10| + i|10><01|
/// (local order p, q).  Satisfies G^3 = G.
inline std::vector<cdouble> qeb_single_generator() {
  std::vector<cdouble> g(16, cdouble{0, 0});
  auto yx = detail::word_matrix("YX");  // Y on p, X on q
  auto xy = detail::word_matrix("XY");
  detail::add_scaled(g, yx, 0.5);
  detail::add_scaled(g, xy, -0.5);
  return g;
}

/// Double qubit-excitation generator on support (p, q, r, s): the standard
/// eight-term X/Y combination that transfers occupation between the qubit
/// pairs (p, q) and (r, s); G^3 = G.
inline std::vector<cdouble> qeb_double_generator() {
  // Letters listed in support order (p, q, r, s) with the signs of the
  // defining combination  (1/8) * [ XXXY + XXYX + YXYY + XYYY
  //                               - YXXX - XYXX - YYYX - YYXY ].
  static const std::array<std::pair<const char *, double>, 8> kTerms{{
      {"XXXY", 1.0},
      {"XXYX", 1.0},
      {"YXYY", 1.0},
      {"XYYY", 1.0},
      {"YXXX", -1.0},
      {"XYXX", -1.0},
      {"YYYX", -1.0},
      {"YYXY", -1.0},
  }};
  std::vector<cdouble> g(256, cdouble{0, 0});
  for (const auto &[word, sign] : kTerms) {
    detail::add_scaled(g, detail::word_matrix(word), sign / 8.0);
  }
  return g;
}

/// exp(i theta G) in closed form.  Qubit strings square to the identity, so
/// exp(i theta G) = cos(theta) I + i sin(theta) G; excitation generators
/// satisfy G^3 = G, so exp(i theta G) = I + i sin(theta) G + (cos(theta)-1) G^2.
inline std::vector<cdouble> exponential_matrix(const PoolOperator &op, double theta) {
  const int dim = 1 << op.support.size();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<cdouble> out = detail::identity_matrix(dim);
  if (op.involutory) {
    for (auto &v : out) v *= c;
    for (size_t i = 0; i < out.size(); ++i) out[i] += cdouble{0, s} * op.generator[i];
    return out;
  }
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] += cdouble{0, s} * op.generator[i] + (c - 1.0) * op.generator_sq[i];
  }
  return out;
}

/// exp(i theta G) as a circuit gate (support order preserved).
inline Gate exponential(const PoolOperator &op, double theta) {
  return gate::local_unitary(op.support, exponential_matrix(op, theta));
}

namespace detail {

/// Single-excitation core on (rot, lad): `rot` carries the RY ladder, `lad`
/// is CNOT-ed three times.  Realizes exp(i (theta/2) G_{rot,lad}); callers
/// pass the doubled angle.  3 CNOTs, 7 single-qubit gates.
inline void qeb_single_sequence(Circuit &c, int rot, int lad, double theta) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  c.append(gate::rz(rot, kHalfPi));
  c.append(gate::ry(lad, -kHalfPi));
  c.append(gate::rz(lad, -kHalfPi));
  c.append(gate::cnot(rot, lad));
  c.append(gate::ry(rot, theta / 2));
  c.append(gate::rz(lad, -kHalfPi));
  c.append(gate::cnot(rot, lad));
  c.append(gate::ry(rot, -theta / 2));
  c.append(gate::h(lad));
  c.append(gate::cnot(rot, lad));
}

/// Double-excitation core on (rot, lad, phz, mir): `rot` carries the eight
/// RY(theta/8) segments, `lad` is the segment CNOT partner, `phz` collects
/// the phase-fixing tail, `mir` mirrors `phz` in the outer CNOT pair.
/// Realizes exp(i (theta/2) G) for the pairing ((rot, lad), (phz, mir));
/// callers pass the doubled angle.  13 CNOTs, 21 single-qubit gates.
inline void qeb_double_sequence(Circuit &c, int rot, int lad, int phz, int mir, double theta) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  const double t8 = theta / 8;
  c.append(gate::cnot(rot, lad));
  c.append(gate::cnot(phz, mir));
  c.append(gate::x(lad));
  c.append(gate::x(mir));
  c.append(gate::cnot(rot, phz));
  c.append(gate::ry(rot, t8));
  c.append(gate::h(lad));
  c.append(gate::cnot(rot, lad));
  c.append(gate::ry(rot, -t8));
  c.append(gate::h(mir));
  c.append(gate::cnot(rot, mir));
  c.append(gate::ry(rot, t8));
  c.append(gate::cnot(rot, lad));
  c.append(gate::ry(rot, -t8));
  c.append(gate::h(phz));
  c.append(gate::cnot(rot, phz));
  c.append(gate::ry(rot, t8));
  c.append(gate::cnot(rot, lad));
  c.append(gate::ry(rot, -t8));
  c.append(gate::cnot(rot, mir));
  c.append(gate::ry(rot, t8));
  c.append(gate::h(mir));
  c.append(gate::cnot(rot, lad));
  c.append(gate::ry(rot, -t8));
  c.append(gate::h(lad));
  c.append(gate::rz(phz, -kHalfPi));
  c.append(gate::cnot(rot, phz));
  c.append(gate::rz(rot, kHalfPi));
  c.append(gate::rz(phz, -kHalfPi));
  c.append(gate::x(lad));
  c.append(gate::x(mir));
  c.append(gate::ry(phz, kHalfPi));
  c.append(gate::cnot(rot, lad));
  c.append(gate::cnot(phz, mir));
}

}  // namespace detail

/// Circuit realization of exp(i theta G_pq) on an n-qubit register:
/// 3 CNOTs + 7 single-qubit gates.  Wire roles and the half-angle convention
/// were fixed once by direct unitary comparison with exponential_matrix.
inline Circuit qeb_single_template(int n_qubits, int p, int q, double theta) {
  Circuit c(n_qubits);
  detail::qeb_single_sequence(c, p, q, 2.0 * theta);
  return c;
}

/// Circuit realization of exp(i theta G_pqrs): 13 CNOTs + 21 single-qubit
/// gates.  Wire roles and the half-angle convention fixed by the same
/// calibration.
inline Circuit qeb_double_template(int n_qubits, int p, int q, int r, int s, double theta) {
  Circuit c(n_qubits);
  detail::qeb_double_sequence(c, p, q, r, s, 2.0 * theta);
  return c;
}

/// Circuit realization of exp(i theta W) for an X/Y/Z word W on `support`:
/// per-letter basis changes, a CNOT parity ladder, RZ(-2 theta), and the
/// mirror unladder: 2(w-1) CNOTs.
inline Circuit pauli_string_template(int n_qubits, const std::vector<int> &support,
                                     const std::string &word, double theta) {
  if (support.empty() || support.size() != word.size()) {
    throw input_error("Pauli word and support must be non-empty and the same length");
  }
  constexpr double kHalfPi = std::numbers::pi / 2;
  Circuit c(n_qubits);
  for (size_t j = 0; j < support.size(); ++j) {
    switch (word[j]) {
      case 'X': c.append(gate::h(support[j])); break;
      case 'Y': c.append(gate::rx(support[j], kHalfPi)); break;
      case 'Z': break;
      default: throw input_error("Pauli word may contain only X, Y, Z");
    }
  }
  for (size_t j = 0; j + 1 < support.size(); ++j) {
    c.append(gate::cnot(support[j], support[j + 1]));
  }
  c.append(gate::rz(support.back(), -2.0 * theta));
  for (size_t j = support.size() - 1; j-- > 0;) {
    c.append(gate::cnot(support[j], support[j + 1]));
  }
  for (size_t j = 0; j < support.size(); ++j) {
    switch (word[j]) {
      case 'X': c.append(gate::h(support[j])); break;
      case 'Y': c.append(gate::rx(support[j], -kHalfPi)); break;
      default: break;
    }
  }
  return c;
}

/// Circuit template for any pool element.
inline Circuit operator_template(int n_qubits, const PoolOperator &op, double theta) {
  switch (op.kind) {
    case OperatorKind::QebSingle:
      return qeb_single_template(n_qubits, op.support[0], op.support[1], theta);
    case OperatorKind::QebDouble:
      return qeb_double_template(n_qubits, op.support[0], op.support[1], op.support[2],
                                 op.support[3], theta);
    case OperatorKind::QubitString:
      return pauli_string_template(n_qubits, op.support, op.pauli_label, theta);
  }
  throw internal_error("unknown operator kind");
}

namespace detail {

inline bool is_alpha_qubit(int q) { return q % 2 == 0; }  // interleaved layout

inline PoolOperator make_qeb_single(int p, int q) {
  PoolOperator op;
  op.kind = OperatorKind::QebSingle;
  op.support = {p, q};
  op.id = "qeb_s:" + std::to_string(p) + "," + std::to_string(q);
  op.generator = qeb_single_generator();
  op.generator_sq = matmul(op.generator, op.generator, 4);
  op.template_cnots = 3;
  op.template_single_qubit = 7;
  return op;
}

inline PoolOperator make_qeb_double(int p, int q, int r, int s) {
  PoolOperator op;
  op.kind = OperatorKind::QebDouble;
  op.support = {p, q, r, s};
  op.id = "qeb_d:" + std::to_string(p) + "," + std::to_string(q) + "|" + std::to_string(r) +
          "," + std::to_string(s);
  op.generator = qeb_double_generator();
  op.generator_sq = matmul(op.generator, op.generator, 16);
  op.template_cnots = 13;
  op.template_single_qubit = 21;
  return op;
}

inline PoolOperator make_qubit_string(std::vector<int> support, std::string word) {
  PoolOperator op;
  op.kind = OperatorKind::QubitString;
  op.id = "qs:" + word + "@";
  for (size_t j = 0; j < support.size(); ++j) {
    if (j) op.id += ",";
    op.id += std::to_string(support[j]);
  }
  op.support = std::move(support);
  op.pauli_label = std::move(word);
  op.generator = word_matrix(op.pauli_label);
  op.involutory = true;
  const int w = static_cast<int>(op.pauli_label.size());
  int basis_changes = 0;
  for (char l : op.pauli_label) basis_changes += (l == 'X' || l == 'Y') ? 2 : 0;
  op.template_cnots = 2 * (w - 1);
  op.template_single_qubit = basis_changes + 1;
  return op;
}

inline void sort_pool(std::vector<PoolOperator> &ops) {
  std::sort(ops.begin(), ops.end(), [](const PoolOperator &a, const PoolOperator &b) {
    if (a.support != b.support) return a.support < b.support;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.id < b.id;
  });
}

}  // namespace detail

/// Qubit-excitation pool: singles G_pq for p < q and doubles G_pqrs over all
/// pairings of disjoint ordered pairs ((p<q), (r<s), p < r), deduplicated.
/// With `restrict_to_sz` only supports conserving S_z under the interleaved
/// alpha/beta layout are kept (same-parity singles; doubles moving equal
/// alpha counts).  All qubit-excitation operators conserve particle number
/// regardless of the restriction.
inline Pool build_qeb_pool(int n_qubits, bool restrict_to_sz = false) {
  StateVector::check_width(n_qubits);
  if (n_qubits < 2) {
    throw input_error("qubit-excitation pool needs at least 2 qubits");
  }
  Pool pool;
  pool.n_qubits = n_qubits;
  pool.kind = "qeb";
  pool.symmetry_tag = restrict_to_sz ? "particle_and_sz_preserving" : "none";
  for (int p = 0; p < n_qubits; ++p) {
    for (int q = p + 1; q < n_qubits; ++q) {
      if (restrict_to_sz && detail::is_alpha_qubit(p) != detail::is_alpha_qubit(q)) continue;
      pool.ops.push_back(detail::make_qeb_single(p, q));
    }
  }
  for (int p = 0; p < n_qubits; ++p) {
    for (int q = p + 1; q < n_qubits; ++q) {
      for (int r = p + 1; r < n_qubits; ++r) {
        if (r == q) continue;
        for (int s = r + 1; s < n_qubits; ++s) {
          if (s == q) continue;
          if (restrict_to_sz) {
            int alpha_pq = detail::is_alpha_qubit(p) + detail::is_alpha_qubit(q);
            int alpha_rs = detail::is_alpha_qubit(r) + detail::is_alpha_qubit(s);
            if (alpha_pq != alpha_rs) continue;
          }
          pool.ops.push_back(detail::make_qeb_double(p, q, r, s));
        }
      }
    }
  }
  detail::sort_pool(pool.ops);
  return pool;
}

/// Hardware-efficient qubit pool: the weight-two strings X_q Y_p over all
/// ordered pairs, plus the eight odd-Y-count X/Y words on every 4-qubit
/// support (the three pairings of a support give the same eight strings, so
/// they are enumerated once).  No conserved symmetries.
inline Pool build_qubit_pool(int n_qubits) {
  StateVector::check_width(n_qubits);
  if (n_qubits < 2) {
    throw input_error("qubit pool needs at least 2 qubits");
  }
  Pool pool;
  pool.n_qubits = n_qubits;
  pool.kind = "qubit";
  pool.symmetry_tag = "none";
  for (int p = 0; p < n_qubits; ++p) {
    for (int q = p + 1; q < n_qubits; ++q) {
      // X_q Y_p and X_p Y_q, letters aligned with the sorted support (p, q).
      pool.ops.push_back(detail::make_qubit_string({p, q}, "YX"));
      pool.ops.push_back(detail::make_qubit_string({p, q}, "XY"));
    }
  }
  for (int a = 0; a < n_qubits; ++a) {
    for (int b = a + 1; b < n_qubits; ++b) {
      for (int c = b + 1; c < n_qubits; ++c) {
        for (int d = c + 1; d < n_qubits; ++d) {
          for (int word_bits = 0; word_bits < 16; ++word_bits) {
            int y_count = std::popcount(static_cast<unsigned>(word_bits));
            if (y_count % 2 == 0) continue;
            std::string word(4, 'X');
            for (int j = 0; j < 4; ++j) {
              if ((word_bits >> (3 - j)) & 1) word[static_cast<size_t>(j)] = 'Y';
            }
            pool.ops.push_back(detail::make_qubit_string({a, b, c, d}, word));
          }
        }
      }
    }
  }
  detail::sort_pool(pool.ops);
  return pool;
}

}  // namespace qsprep::pools

#endif  // QSPREP_POOLS_HPP_
