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

#ifndef QSPREP_BITS_HPP_
#define QSPREP_BITS_HPP_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qsprep/errors.hpp"

namespace qsprep {

/// A computational-basis label: character i is qubit i ('0' or '1').
///
/// The convention throughout this library is big-endian: qubit 0 is the most
/// significant bit of the amplitude index, so pattern "10" on two qubits maps
/// to index 2 and "1100" on four qubits maps to index 12.
using BitPattern = std::string;

/// Throws input_error unless `pattern` has length `n_qubits` and contains
/// only the characters '0' and '1'.
inline void validate_pattern(const BitPattern &pattern, int n_qubits) {
  if (static_cast<int>(pattern.size()) != n_qubits) {
    throw input_error("bit pattern \"" + pattern + "\" has length " +
                      std::to_string(pattern.size()) + ", expected " +
                      std::to_string(n_qubits));
  }
  for (char c : pattern) {
    if (c != '0' && c != '1') {
      throw input_error("bit pattern \"" + pattern +
                        "\" contains a character other than '0'/'1'");
    }
  }
}

/// Amplitude index of a basis label (big-endian).  The pattern is validated
/// against its own length.
inline std::uint64_t pattern_to_index(const BitPattern &pattern) {
  validate_pattern(pattern, static_cast<int>(pattern.size()));
  std::uint64_t index = 0;
  for (char c : pattern) {
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return index;
}

/// Basis label of amplitude index `index` on `n_qubits` qubits.
inline BitPattern index_to_pattern(std::uint64_t index, int n_qubits) {
  BitPattern pattern(static_cast<size_t>(n_qubits), '0');
  for (int q = n_qubits - 1; q >= 0; --q) {
    pattern[static_cast<size_t>(q)] = (index & 1u) ? '1' : '0';
    index >>= 1;
  }
  return pattern;
}

/// Index mask selecting qubit `q` out of `n_qubits` (big-endian).
inline std::uint64_t qubit_mask(int q, int n_qubits) {
  return std::uint64_t{1} << (n_qubits - 1 - q);
}

/// Value of qubit `q` in amplitude index `index`.
inline int qubit_bit(std::uint64_t index, int q, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - q)) & 1u);
}

/// Number of '1' characters in a basis label.
inline int hamming_weight(const BitPattern &pattern) {
  int weight = 0;
  for (char c : pattern) weight += (c == '1');
  return weight;
}

/// Qubit positions holding '1', in increasing order.
inline std::vector<int> one_positions(const BitPattern &pattern) {
  std::vector<int> positions;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '1') positions.push_back(static_cast<int>(i));
  }
  return positions;
}

}  // namespace qsprep

#endif  // QSPREP_BITS_HPP_
