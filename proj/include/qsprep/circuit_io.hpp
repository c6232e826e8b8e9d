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

#ifndef QSPREP_CIRCUIT_IO_HPP_
#define QSPREP_CIRCUIT_IO_HPP_

#include <json.hpp>
#include <string>
#include <vector>

#include "qsprep/circuit.hpp"
#include "qsprep/io_util.hpp"

namespace qsprep {

/// Circuits serialize as {"n_qubits": n, "gates": [...]} with per-gate fields
/// in the fixed order kind, qubits, theta (rotations only), matrix (explicit
/// unitaries only, row-major [re, im] pairs).  Field order is stable so that
/// reruns emit byte-identical files.
inline nlohmann::ordered_json circuit_to_json(const Circuit &circuit) {
  nlohmann::ordered_json doc;
  doc["n_qubits"] = circuit.n_qubits;
  doc["gates"] = nlohmann::ordered_json::array();
  for (const Gate &g : circuit.gates) {
    nlohmann::ordered_json jg;
    jg["kind"] = to_string(g.kind);
    jg["qubits"] = g.qubits;
    if (g.is_rotation()) {
      jg["theta"] = g.theta;
    }
    if (g.has_matrix()) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const cdouble &entry : g.matrix) {
        rows.push_back({entry.real(), entry.imag()});
      }
      jg["matrix"] = std::move(rows);
    }
    doc["gates"].push_back(std::move(jg));
  }
  return doc;
}

inline Circuit circuit_from_json(const nlohmann::json &doc) {
  try {
    Circuit circuit(doc.at("n_qubits").get<int>());
    for (const auto &jg : doc.at("gates")) {
      Gate g;
      g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
      g.qubits = jg.at("qubits").get<std::vector<int>>();
      if (g.is_rotation()) {
        g.theta = jg.at("theta").get<double>();
      }
      if (g.has_matrix()) {
        for (const auto &pair : jg.at("matrix")) {
          if (!pair.is_array() || pair.size() != 2) {
            throw input_error("matrix entries must be [re, im] pairs");
          }
          g.matrix.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        int dim = g.kind == GateKind::MCU ? 2 : (1 << g.qubits.size());
        if (static_cast<int>(g.matrix.size()) != dim * dim) {
          throw input_error("matrix size does not match the gate support");
        }
        if (!is_unitary(g.matrix, dim)) {
          throw input_error("explicit gate matrix is not unitary within 1e-12");
        }
      }
      circuit.append(std::move(g));
    }
    return circuit;
  } catch (const nlohmann::json::exception &e) {
    throw input_error(std::string("malformed circuit JSON: ") + e.what());
  }
}

inline std::string circuit_to_json_string(const Circuit &circuit) {
  return circuit_to_json(circuit).dump(2) + "\n";
}

inline void save_circuit_json(const Circuit &circuit, const std::string &path) {
  write_file_atomic(path, circuit_to_json_string(circuit));
}

inline Circuit load_circuit_json(const std::string &path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception &e) {
    throw input_error(path + ": " + e.what());
  }
  return circuit_from_json(doc);
}

}  // namespace qsprep

#endif  // QSPREP_CIRCUIT_IO_HPP_
