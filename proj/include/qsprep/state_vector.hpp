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

#ifndef QSPREP_STATE_VECTOR_HPP_
#define QSPREP_STATE_VECTOR_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qsprep/bits.hpp"
#include "qsprep/errors.hpp"

namespace qsprep {

using cdouble = std::complex<double>;

/// Largest register the dense simulator will allocate (16 GiB of amplitudes).
inline constexpr int kMaxQubits = 30;

/// Dense state vector over `n_qubits` qubits: 2^n complex amplitudes indexed
/// big-endian (see BitPattern).
struct StateVector {
  int n_qubits = 0;
  std::vector<cdouble> amps;

  StateVector() = default;

  /// All-zero amplitudes (not normalized); use basis_state for |0...0>.
  explicit StateVector(int n) : n_qubits(check_width(n)), amps(dim(), cdouble{0.0, 0.0}) {}

  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits; }

  cdouble &operator[](std::uint64_t i) { return amps[i]; }
  const cdouble &operator[](std::uint64_t i) const { return amps[i]; }

  static int check_width(int n) {
    if (n < 1 || n > kMaxQubits) {
      throw input_error("qubit count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxQubits) + "]");
    }
    return n;
  }
};

/// |pattern> as a dense state.
inline StateVector basis_state(int n_qubits, const BitPattern &pattern) {
  validate_pattern(pattern, n_qubits);
  StateVector state(n_qubits);
  state[pattern_to_index(pattern)] = cdouble{1.0, 0.0};
  return state;
}

/// |0...0>.
inline StateVector zero_state(int n_qubits) {
  return basis_state(n_qubits, BitPattern(static_cast<size_t>(n_qubits), '0'));
}

/// <a|b>.  Throws input_error on register-size mismatch.
inline cdouble overlap(const StateVector &a, const StateVector &b) {
  if (a.n_qubits != b.n_qubits) {
    throw input_error("overlap of states on " + std::to_string(a.n_qubits) +
                      " and " + std::to_string(b.n_qubits) + " qubits");
  }
  cdouble acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    acc += std::conj(a.amps[i]) * b.amps[i];
  }
  return acc;
}

/// |<a|b>|^2.
inline double fidelity(const StateVector &a, const StateVector &b) {
  return std::norm(overlap(a, b));
}

/// Sum of |amplitude|^2.
inline double norm_squared(const StateVector &state) {
  double acc = 0.0;
  for (const cdouble &a : state.amps) acc += std::norm(a);
  return acc;
}

inline double norm(const StateVector &state) { return std::sqrt(norm_squared(state)); }

/// Scales to unit norm.  Throws input_error on the zero vector.
inline void normalize(StateVector &state) {
  double nrm = norm(state);
  if (nrm <= 0.0) {
    throw input_error("cannot normalize a zero state vector");
  }
  double inv = 1.0 / nrm;
  for (cdouble &a : state.amps) a *= inv;
}

/// max_i |a_i - b_i|; the registers must match.
inline double max_abs_diff(const StateVector &a, const StateVector &b) {
  if (a.n_qubits != b.n_qubits) {
    throw input_error("comparing states on different register sizes");
  }
  double worst = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
  }
  return worst;
}

}  // namespace qsprep

#endif  // QSPREP_STATE_VECTOR_HPP_
