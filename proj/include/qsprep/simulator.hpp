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

#ifndef QSPREP_SIMULATOR_HPP_
#define QSPREP_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsprep/circuit.hpp"
#include "qsprep/gates.hpp"
#include "qsprep/state_vector.hpp"

namespace qsprep {

/// Applies a 2x2 row-major matrix to qubit `q` in place.
inline void apply_matrix1(StateVector &state, int q, const std::array<cdouble, 4> &m) {
  const std::uint64_t mask = qubit_mask(q, state.n_qubits);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const std::uint64_t j = i | mask;
    const cdouble a0 = state.amps[i];
    const cdouble a1 = state.amps[j];
    state.amps[i] = m[0] * a0 + m[1] * a1;
    state.amps[j] = m[2] * a0 + m[3] * a1;
  }
}

/// Applies a 2x2 matrix to `target` on the sub-space where every control
/// qubit reads 1.  An empty control list applies the matrix unconditionally.
inline void apply_controlled_matrix1(StateVector &state, const std::vector<int> &controls,
                                     int target, const std::array<cdouble, 4> &m) {
  std::uint64_t cmask = 0;
  for (int c : controls) cmask |= qubit_mask(c, state.n_qubits);
  const std::uint64_t tmask = qubit_mask(target, state.n_qubits);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cmask) != cmask || (i & tmask)) continue;
    const std::uint64_t j = i | tmask;
    const cdouble a0 = state.amps[i];
    const cdouble a1 = state.amps[j];
    state.amps[i] = m[0] * a0 + m[1] * a1;
    state.amps[j] = m[2] * a0 + m[3] * a1;
  }
}

/// Applies a row-major 2^k x 2^k matrix on the ordered k-qubit support
/// (support[0] = most significant local bit).  No unitarity check: this is
/// the internal work-horse, also used with Hermitian generators.
inline void apply_local_matrix(StateVector &state, const std::vector<int> &support,
                               const std::vector<cdouble> &m) {
  const int k = static_cast<int>(support.size());
  const int local_dim = 1 << k;
  std::uint64_t smask = 0;
  std::array<std::uint64_t, 16> offsets{};  // enough for k <= 4
  std::vector<std::uint64_t> offsets_big;
  std::uint64_t *off = offsets.data();
  if (local_dim > 16) {
    offsets_big.resize(static_cast<size_t>(local_dim));
    off = offsets_big.data();
  }
  for (int l = 0; l < local_dim; ++l) {
    std::uint64_t o = 0;
    for (int j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1) o |= qubit_mask(support[j], state.n_qubits);
    }
    off[l] = o;
    smask |= o;
  }
  std::vector<cdouble> in(static_cast<size_t>(local_dim));
  const std::uint64_t dim = state.dim();
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & smask) continue;
    for (int l = 0; l < local_dim; ++l) in[static_cast<size_t>(l)] = state.amps[base | off[l]];
    for (int r = 0; r < local_dim; ++r) {
      cdouble acc{0.0, 0.0};
      const cdouble *row = &m[static_cast<size_t>(r) * local_dim];
      for (int c = 0; c < local_dim; ++c) acc += row[c] * in[static_cast<size_t>(c)];
      state.amps[base | off[r]] = acc;
    }
  }
}

/// Applies one gate in place.  The gate must fit the register (validated).
inline void apply_in_place(StateVector &state, const Gate &g) {
  Circuit probe(state.n_qubits);
  probe.validate_gate_support(g);
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      apply_matrix1(state, g.qubits[0], single_qubit_matrix(g));
      break;
    case GateKind::CNOT: {
      const std::uint64_t cmask = qubit_mask(g.qubits[0], state.n_qubits);
      const std::uint64_t tmask = qubit_mask(g.qubits[1], state.n_qubits);
      const std::uint64_t dim = state.dim();
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(state.amps[i], state.amps[i | tmask]);
      }
      break;
    }
    case GateKind::MCU: {
      if (g.matrix.size() != 4) {
        throw input_error("MCU gate requires a 2x2 matrix");
      }
      std::array<cdouble, 4> m{g.matrix[0], g.matrix[1], g.matrix[2], g.matrix[3]};
      std::vector<int> controls(g.qubits.begin(), g.qubits.end() - 1);
      apply_controlled_matrix1(state, controls, g.target(), m);
      break;
    }
    case GateKind::LocalUnitary: {
      const int local_dim = 1 << g.qubits.size();
      if (static_cast<int>(g.matrix.size()) != local_dim * local_dim) {
        throw input_error("LocalUnitary matrix size does not match its support");
      }
      apply_local_matrix(state, g.qubits, g.matrix);
      break;
    }
  }
}

/// Value-semantics wrapper around apply_in_place.
inline StateVector apply_gate(StateVector state, const Gate &g) {
  apply_in_place(state, g);
  return state;
}

/// Runs the whole circuit on `initial` (register sizes must match).
inline StateVector simulate(const Circuit &circuit, StateVector initial) {
  if (initial.n_qubits != circuit.n_qubits) {
    throw input_error("initial state register does not match the circuit");
  }
  for (const Gate &g : circuit.gates) apply_in_place(initial, g);
  return initial;
}

/// Runs the circuit from |0...0>.
inline StateVector simulate(const Circuit &circuit) {
  return simulate(circuit, zero_state(circuit.n_qubits));
}

}  // namespace qsprep

#endif  // QSPREP_SIMULATOR_HPP_
