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

#ifndef QSPREP_HAMILTONIAN_HPP_
#define QSPREP_HAMILTONIAN_HPP_

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qsprep/bits.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/state_vector.hpp"

// Real linear combinations of Pauli words: the desk-scale Hamiltonians whose
// ground states serve as preparation targets.
namespace qsprep {

struct PauliTerm {
  double coefficient = 0.0;
  std::string word;  // length n_qubits, letters I X Y Z; position = qubit
};

struct PauliSumHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
};

inline void validate_hamiltonian(const PauliSumHamiltonian &h) {
  StateVector::check_width(h.n_qubits);
  for (const auto &term : h.terms) {
    if (static_cast<int>(term.word.size()) != h.n_qubits) {
      throw input_error("Pauli word length does not match the qubit count: " + term.word);
    }
    for (char l : term.word) {
      if (l != 'I' && l != 'X' && l != 'Y' && l != 'Z') {
        throw input_error("Pauli word may contain only I, X, Y, Z: " + term.word);
      }
    }
  }
}

namespace detail {

/// Per-term masks in basis-index bit space: the word sends |b> to
/// coeff * i^{#Y} * (-1)^{popcount(b & phase_mask)} |b ^ flip_mask>.
struct CompiledPauliTerm {
  cdouble base;
  std::uint64_t flip_mask = 0;
  std::uint64_t phase_mask = 0;
};

inline CompiledPauliTerm compile_term(const PauliTerm &term, int n_qubits) {
  CompiledPauliTerm out;
  int y_count = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const char l = term.word[static_cast<size_t>(q)];
    const std::uint64_t mask = qubit_mask(q, n_qubits);
    if (l == 'X' || l == 'Y') out.flip_mask |= mask;
    if (l == 'Z' || l == 'Y') out.phase_mask |= mask;
    if (l == 'Y') ++y_count;
  }
  static const cdouble i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  out.base = term.coefficient * i_powers[y_count % 4];
  return out;
}

}  // namespace detail

/// H|psi> without forming the matrix; O(terms * 2^n).
inline StateVector apply_hamiltonian(const PauliSumHamiltonian &h, const StateVector &psi) {
  if (h.n_qubits != psi.n_qubits) throw input_error("Hamiltonian/state width mismatch");
  StateVector out(psi.n_qubits);
  out.amps.assign(psi.dim(), cdouble{0, 0});
  for (const auto &term : h.terms) {
    const auto c = detail::compile_term(term, h.n_qubits);
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
      const cdouble v = psi.amps[b];
      if (v == cdouble{0, 0}) continue;
      const bool odd = std::popcount(b & c.phase_mask) & 1;
      out.amps[b ^ c.flip_mask] += (odd ? -c.base : c.base) * v;
    }
  }
  return out;
}

inline double expectation_value(const PauliSumHamiltonian &h, const StateVector &psi) {
  return overlap(psi, apply_hamiltonian(h, psi)).real();
}

/// Transverse-field Ising chain with open boundaries,
///   H = -J sum_i X_i X_{i+1} - h sum_i Z_i.
/// Every term flips an even number of bits or none, so the ground state has
/// definite flip parity and (for J, h > 0) a dominant all-zeros component.
inline PauliSumHamiltonian transverse_field_ising(int n_qubits, double coupling, double field) {
  StateVector::check_width(n_qubits);
  PauliSumHamiltonian h;
  h.n_qubits = n_qubits;
  for (int i = 0; i + 1 < n_qubits; ++i) {
    std::string word(static_cast<size_t>(n_qubits), 'I');
    word[static_cast<size_t>(i)] = 'X';
    word[static_cast<size_t>(i) + 1] = 'X';
    h.terms.push_back({-coupling, std::move(word)});
  }
  for (int i = 0; i < n_qubits; ++i) {
    std::string word(static_cast<size_t>(n_qubits), 'I');
    word[static_cast<size_t>(i)] = 'Z';
    h.terms.push_back({-field, std::move(word)});
  }
  return h;
}

// ---------------------------------------------------------------------------
// Text format: optional '#' comments, a "n=<int>" header line, then one
// "coefficient word" pair per line (e.g. "0.5 XXZI").
// ---------------------------------------------------------------------------

inline PauliSumHamiltonian parse_hamiltonian(const std::string &text) {
  PauliSumHamiltonian h;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (!header_seen) {
      if (first.rfind("n=", 0) != 0) {
        throw input_error("line " + std::to_string(line_number) + ": expected header n=<int>");
      }
      try {
        h.n_qubits = StateVector::check_width(std::stoi(first.substr(2)));
      } catch (const std::exception &) {
        throw input_error("line " + std::to_string(line_number) + ": malformed qubit count");
      }
      header_seen = true;
      continue;
    }
    double coefficient = 0.0;
    try {
      size_t used = 0;
      coefficient = std::stod(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception &) {
      throw input_error("line " + std::to_string(line_number) + ": malformed coefficient \"" +
                        first + "\"");
    }
    std::string word;
    if (!(fields >> word)) {
      throw input_error("line " + std::to_string(line_number) + ": missing Pauli word");
    }
    std::string extra;
    if (fields >> extra) {
      throw input_error("line " + std::to_string(line_number) + ": unexpected trailing field \"" +
                        extra + "\"");
    }
    if (static_cast<int>(word.size()) != h.n_qubits) {
      throw input_error("line " + std::to_string(line_number) + ": Pauli word \"" + word +
                        "\" does not match n=" + std::to_string(h.n_qubits));
    }
    for (char l : word) {
      if (l != 'I' && l != 'X' && l != 'Y' && l != 'Z') {
        throw input_error("line " + std::to_string(line_number) +
                          ": Pauli word may contain only I, X, Y, Z: " + word);
      }
    }
    h.terms.push_back({coefficient, std::move(word)});
  }
  if (!header_seen) throw input_error("missing n=<int> header");
  validate_hamiltonian(h);
  return h;
}

inline std::string hamiltonian_to_text(const PauliSumHamiltonian &h) {
  std::string out = "n=" + std::to_string(h.n_qubits) + "\n";
  for (const auto &term : h.terms) {
    out += format_double(term.coefficient);
    out += ' ';
    out += term.word;
    out += '\n';
  }
  return out;
}

inline PauliSumHamiltonian load_hamiltonian(const std::string &path) {
  return parse_hamiltonian(read_file(path));
}

}  // namespace qsprep

#endif  // QSPREP_HAMILTONIAN_HPP_
