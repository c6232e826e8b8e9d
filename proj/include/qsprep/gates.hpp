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

#ifndef QSPREP_GATES_HPP_
#define QSPREP_GATES_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qsprep/errors.hpp"
#include "qsprep/state_vector.hpp"

namespace qsprep {

enum class GateKind { X, H, RX, RY, RZ, CNOT, MCU, LocalUnitary };

inline const char *to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::MCU: return "MCU";
    case GateKind::LocalUnitary: return "LocalUnitary";
  }
  return "?";
}

inline GateKind gate_kind_from_string(const std::string &name) {
  if (name == "X") return GateKind::X;
  if (name == "H") return GateKind::H;
  if (name == "RX") return GateKind::RX;
  if (name == "RY") return GateKind::RY;
  if (name == "RZ") return GateKind::RZ;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "MCU") return GateKind::MCU;
  if (name == "LocalUnitary") return GateKind::LocalUnitary;
  throw input_error("unknown gate kind \"" + name + "\"");
}

/// True when the row-major `dim` x `dim` matrix satisfies U U^dagger = I
/// entrywise within `tol`.
inline bool is_unitary(const std::vector<cdouble> &m, int dim, double tol = 1e-12) {
  if (static_cast<int>(m.size()) != dim * dim) return false;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      cdouble acc{0.0, 0.0};
      for (int k = 0; k < dim; ++k) {
        acc += m[static_cast<size_t>(r * dim + k)] * std::conj(m[static_cast<size_t>(c * dim + k)]);
      }
      cdouble expected = (r == c) ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
      if (std::abs(acc - expected) > tol) return false;
    }
  }
  return true;
}

/// One circuit element.
///
/// `qubits` carries the full ordered support:
///   - X/H/RX/RY/RZ: one target;
///   - CNOT: {control, target};
///   - MCU: zero or more controls followed by the target, with an explicit
///     2x2 `matrix` applied to the target when every control reads 1;
///   - LocalUnitary: k support qubits with a row-major 2^k x 2^k `matrix`
///     whose local index orders qubits[0] as the most significant bit.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> qubits;
  double theta = 0.0;
  std::vector<cdouble> matrix;

  bool is_rotation() const {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  }
  bool has_matrix() const { return kind == GateKind::MCU || kind == GateKind::LocalUnitary; }

  int target() const { return qubits.back(); }
  int control_count() const {
    return kind == GateKind::MCU ? static_cast<int>(qubits.size()) - 1
           : kind == GateKind::CNOT ? 1
                                    : 0;
  }
};

namespace gate {

inline Gate x(int q) { return Gate{GateKind::X, {q}, 0.0, {}}; }
inline Gate h(int q) { return Gate{GateKind::H, {q}, 0.0, {}}; }
inline Gate rx(int q, double theta) { return Gate{GateKind::RX, {q}, theta, {}}; }
inline Gate ry(int q, double theta) { return Gate{GateKind::RY, {q}, theta, {}}; }
inline Gate rz(int q, double theta) { return Gate{GateKind::RZ, {q}, theta, {}}; }
inline Gate cnot(int control, int target) {
  return Gate{GateKind::CNOT, {control, target}, 0.0, {}};
}

/// Multi-controlled single-qubit unitary.  Controls may be empty, in which
/// case the 2x2 matrix acts unconditionally on `target`.
inline Gate mcu(std::vector<int> controls, int target, const std::array<cdouble, 4> &u) {
  std::vector<cdouble> m(u.begin(), u.end());
  if (!is_unitary(m, 2)) {
    throw input_error("MCU matrix is not unitary within 1e-12");
  }
  controls.push_back(target);
  return Gate{GateKind::MCU, std::move(controls), 0.0, std::move(m)};
}

/// Explicit k-qubit unitary on the given ordered support.
inline Gate local_unitary(std::vector<int> support, std::vector<cdouble> u) {
  int dim = 1 << support.size();
  if (static_cast<int>(u.size()) != dim * dim) {
    throw input_error("LocalUnitary matrix size does not match its support");
  }
  if (!is_unitary(u, dim)) {
    throw input_error("LocalUnitary matrix is not unitary within 1e-12");
  }
  return Gate{GateKind::LocalUnitary, std::move(support), 0.0, std::move(u)};
}

}  // namespace gate

/// 2x2 matrix of a named single-qubit gate (rotations use half-angle
/// conventions: RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2})).
inline std::array<cdouble, 4> single_qubit_matrix(const Gate &g) {
  const double c = std::cos(g.theta / 2.0);
  const double s = std::sin(g.theta / 2.0);
  constexpr double kInvSqrt2 = 0.7071067811865475244;
  switch (g.kind) {
    case GateKind::X:
      return {cdouble{0, 0}, cdouble{1, 0}, cdouble{1, 0}, cdouble{0, 0}};
    case GateKind::H:
      return {cdouble{kInvSqrt2, 0}, cdouble{kInvSqrt2, 0}, cdouble{kInvSqrt2, 0},
              cdouble{-kInvSqrt2, 0}};
    case GateKind::RX:
      return {cdouble{c, 0}, cdouble{0, -s}, cdouble{0, -s}, cdouble{c, 0}};
    case GateKind::RY:
      return {cdouble{c, 0}, cdouble{-s, 0}, cdouble{s, 0}, cdouble{c, 0}};
    case GateKind::RZ:
      return {cdouble{c, -s}, cdouble{0, 0}, cdouble{0, 0}, cdouble{c, s}};
    default:
      throw internal_error("single_qubit_matrix called on a multi-qubit gate");
  }
}

/// Structural gate tallies.
///
/// MCU gates with exactly one control and an X matrix are CNOTs in disguise
/// and are counted as such; any other controlled MCU stays un-decomposed and
/// lands in `mcu_unexpanded`; a control-free MCU is a single-qubit gate.
/// Multi-qubit LocalUnitary blocks are tallied separately.
struct GateCounts {
  long long single_qubit = 0;
  long long cnot = 0;
  long long mcu_unexpanded = 0;
  long long local_unitary = 0;

  long long total() const { return single_qubit + cnot + mcu_unexpanded + local_unitary; }

  GateCounts &operator+=(const GateCounts &other) {
    single_qubit += other.single_qubit;
    cnot += other.cnot;
    mcu_unexpanded += other.mcu_unexpanded;
    local_unitary += other.local_unitary;
    return *this;
  }
  friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

inline bool matrix_is_pauli_x(const std::vector<cdouble> &m, double tol = 1e-12) {
  return m.size() == 4 && std::abs(m[0]) <= tol && std::abs(m[3]) <= tol &&
         std::abs(m[1] - cdouble{1.0, 0.0}) <= tol && std::abs(m[2] - cdouble{1.0, 0.0}) <= tol;
}

inline GateCounts count_gate(const Gate &g) {
  GateCounts counts;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      counts.single_qubit = 1;
      break;
    case GateKind::CNOT:
      counts.cnot = 1;
      break;
    case GateKind::MCU: {
      int controls = g.control_count();
      if (controls == 0) {
        counts.single_qubit = 1;
      } else if (controls == 1 && matrix_is_pauli_x(g.matrix)) {
        counts.cnot = 1;
      } else {
        counts.mcu_unexpanded = 1;
      }
      break;
    }
    case GateKind::LocalUnitary:
      if (g.qubits.size() == 1) {
        counts.single_qubit = 1;
      } else {
        counts.local_unitary = 1;
      }
      break;
  }
  return counts;
}

}  // namespace qsprep

#endif  // QSPREP_GATES_HPP_
