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

#ifndef QSPREP_CIRCUIT_HPP_
#define QSPREP_CIRCUIT_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qsprep/errors.hpp"
#include "qsprep/gates.hpp"

namespace qsprep {

/// An ordered gate list over a fixed-width register.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(StateVector::check_width(n)) {}

  /// Appends after validating that the gate's qubits are distinct and lie in
  /// [0, n_qubits).
  void append(Gate g) {
    validate_gate_support(g);
    gates.push_back(std::move(g));
  }

  void append_all(const Circuit &other) {
    if (other.n_qubits != n_qubits) {
      throw input_error("appending a circuit with a different register size");
    }
    for (const Gate &g : other.gates) append(g);
  }

  void validate_gate_support(const Gate &g) const {
    if (g.qubits.empty() && g.kind != GateKind::MCU) {
      throw input_error("gate without target qubits");
    }
    for (int q : g.qubits) {
      if (q < 0 || q >= n_qubits) {
        throw input_error("gate qubit " + std::to_string(q) + " outside register of " +
                          std::to_string(n_qubits));
      }
    }
    std::vector<int> sorted = g.qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw input_error("gate lists a qubit twice");
    }
  }
};

/// Structural tallies over the whole gate list.  Additive over concatenation.
inline GateCounts count_gates(const Circuit &circuit) {
  GateCounts counts;
  for (const Gate &g : circuit.gates) counts += count_gate(g);
  return counts;
}

}  // namespace qsprep

#endif  // QSPREP_CIRCUIT_HPP_
