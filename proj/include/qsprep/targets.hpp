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

#ifndef QSPREP_TARGETS_HPP_
#define QSPREP_TARGETS_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qsprep/bits.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/sparse_state.hpp"

// Chemistry-flavoured target construction: Hartree-Fock patterns, the
// interleaved spin-orbital encoding (alpha of spatial orbital i on qubit 2i,
// beta on qubit 2i+1), the ESP CNOT cost bound, and a seeded generator of
// correlated-looking sparse states for benchmarks.
namespace qsprep {

/// |1...1 0...0> with `m` ones: the Hartree-Fock determinant in
/// energy-ordered spin orbitals.
inline BitPattern hartree_fock(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw input_error("hartree_fock needs 0 <= m <= n, got m=" + std::to_string(m) +
                      " n=" + std::to_string(n));
  }
  return BitPattern(static_cast<size_t>(m), '1') +
         BitPattern(static_cast<size_t>(n - m), '0');
}

struct Determinant {
  std::vector<int> occ_alpha;
  std::vector<int> occ_beta;
};

namespace detail {

inline std::uint64_t occupation_mask(const std::vector<int> &orbitals, int L, const char *label) {
  std::uint64_t mask = 0;
  for (int orb : orbitals) {
    if (orb < 0 || orb >= L) {
      throw input_error(std::string(label) + " orbital " + std::to_string(orb) +
                        " outside [0, " + std::to_string(L) + ")");
    }
    const std::uint64_t bit = std::uint64_t{1} << orb;
    if (mask & bit) {
      throw input_error(std::string("duplicate ") + label + " orbital " + std::to_string(orb));
    }
    mask |= bit;
  }
  return mask;
}

inline BitPattern interleave_masks(std::uint64_t alpha, std::uint64_t beta, int L) {
  BitPattern pattern(static_cast<size_t>(2 * L), '0');
  for (int i = 0; i < L; ++i) {
    if (alpha >> i & 1) pattern[static_cast<size_t>(2 * i)] = '1';
    if (beta >> i & 1) pattern[static_cast<size_t>(2 * i + 1)] = '1';
  }
  return pattern;
}

}  // namespace detail

/// Occupied spatial orbitals -> qubit pattern under the interleaved encoding.
inline BitPattern encode_determinant(const std::vector<int> &occ_alpha,
                                     const std::vector<int> &occ_beta, int L) {
  if (L <= 0) throw input_error("encode_determinant needs L >= 1");
  const std::uint64_t alpha = detail::occupation_mask(occ_alpha, L, "alpha");
  const std::uint64_t beta = detail::occupation_mask(occ_beta, L, "beta");
  return detail::interleave_masks(alpha, beta, L);
}

inline Determinant decode_determinant(const BitPattern &pattern) {
  if (pattern.empty() || pattern.size() % 2 != 0) {
    throw input_error("decode_determinant needs a nonempty even-length pattern");
  }
  validate_pattern(pattern, static_cast<int>(pattern.size()));
  Determinant det;
  for (size_t q = 0; q < pattern.size(); ++q) {
    if (pattern[q] != '1') continue;
    const int orbital = static_cast<int>(q / 2);
    (q % 2 == 0 ? det.occ_alpha : det.occ_beta).push_back(orbital);
  }
  return det;
}

namespace detail {

inline unsigned __int128 binomial_128(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return result;
}

}  // namespace detail

/// 3 * C(L, m_alpha) * C(L, m_beta): CNOT cost of an entangled-subspace
/// preparation that loads the full (m_alpha, m_beta) sector.
inline std::uint64_t esp_cnot_bound(int L, int m_alpha, int m_beta) {
  if (L < 0 || m_alpha < 0 || m_beta < 0 || m_alpha > L || m_beta > L) {
    throw input_error("esp_cnot_bound needs 0 <= m_alpha, m_beta <= L");
  }
  const unsigned __int128 bound =
      3 * detail::binomial_128(L, m_alpha) * detail::binomial_128(L, m_beta);
  if (bound > static_cast<unsigned __int128>(UINT64_MAX)) {
    throw input_error("esp_cnot_bound does not fit in 64 bits for L=" + std::to_string(L));
  }
  return static_cast<std::uint64_t>(bound);
}

namespace detail {

// All L-bit masks of the given popcount, ascending (Gosper's hack).
inline std::vector<std::uint64_t> masks_with_popcount(int L, int m) {
  std::vector<std::uint64_t> masks;
  if (m == 0) {
    masks.push_back(0);
    return masks;
  }
  const std::uint64_t limit = std::uint64_t{1} << L;
  std::uint64_t v = (std::uint64_t{1} << m) - 1;
  while (v < limit) {
    masks.push_back(v);
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return masks;
}

}  // namespace detail

/// Seeded sparse state with `num_patterns` distinct determinants in the
/// (particle_number, sz) sector of an even `n`-qubit interleaved register.
///
/// The sector's lowest-orbital determinant is always included and carries the
/// largest amplitude; the remaining patterns are drawn without replacement
/// with weights decaying geometrically in excitation distance from it, so the
/// amplitude profile is heavy-tailed and excitation-clustered rather than
/// uniform in the sector.  Magnitudes follow decay^rank (rank ordered by
/// excitation distance, then pattern); signs are random +/-1, or uniform
/// complex phases when `complex_phases` is set.
inline SparseState synthetic_target(int n, int num_patterns, int particle_number, double sz,
                                    double decay, std::uint64_t seed,
                                    bool complex_phases = false) {
  if (n < 2 || n % 2 != 0) {
    throw input_error("synthetic_target needs an even qubit count >= 2 (interleaved orbitals)");
  }
  if (num_patterns < 1) throw input_error("synthetic_target needs num_patterns >= 1");
  if (!(decay > 0.0 && decay < 1.0)) {
    throw input_error("synthetic_target needs decay in (0, 1)");
  }
  const int L = n / 2;
  const double two_sz = 2.0 * sz;
  const long rounded = std::lround(two_sz);
  if (std::abs(two_sz - static_cast<double>(rounded)) > 1e-9 ||
      (particle_number + rounded) % 2 != 0) {
    throw input_error("no (N, Sz) sector matches N=" + std::to_string(particle_number) +
                      " Sz=" + format_double(sz));
  }
  const int m_alpha = static_cast<int>((particle_number + rounded) / 2);
  const int m_beta = particle_number - m_alpha;
  if (m_alpha < 0 || m_beta < 0 || m_alpha > L || m_beta > L) {
    throw input_error("the (N, Sz) sector is empty for n=" + std::to_string(n));
  }

  const auto alpha_masks = detail::masks_with_popcount(L, m_alpha);
  const auto beta_masks = detail::masks_with_popcount(L, m_beta);
  const size_t sector_size = alpha_masks.size() * beta_masks.size();
  if (static_cast<size_t>(num_patterns) > sector_size) {
    throw input_error("num_patterns " + std::to_string(num_patterns) + " exceeds sector size " +
                      std::to_string(sector_size));
  }

  std::vector<BitPattern> sector;
  sector.reserve(sector_size);
  for (const auto a : alpha_masks) {
    for (const auto b : beta_masks) {
      sector.push_back(detail::interleave_masks(a, b, L));
    }
  }
  std::sort(sector.begin(), sector.end());

  const BitPattern reference =
      detail::interleave_masks((std::uint64_t{1} << m_alpha) - 1,
                               (std::uint64_t{1} << m_beta) - 1, L);
  const std::uint64_t reference_index = pattern_to_index(reference);
  auto excitation_distance = [&](const BitPattern &p) {
    return std::popcount(pattern_to_index(p) ^ reference_index) / 2;
  };

  // Weighted sampling without replacement: each candidate gets the key
  // log(u)/w with w = decay^distance, and the num_patterns-1 largest keys win
  // (Efraimidis-Spirakis).  Keys are drawn in pattern order for determinism.
  Rng rng(seed);
  struct Keyed {
    double key;
    size_t index;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(sector.size());
  for (size_t i = 0; i < sector.size(); ++i) {
    if (sector[i] == reference) continue;
    const double weight = std::pow(decay, excitation_distance(sector[i]));
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    keyed.push_back({std::log(u) / weight, i});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    if (a.key != b.key) return a.key > b.key;
    return a.index < b.index;
  });

  std::vector<BitPattern> chosen = {reference};
  for (int k = 0; k + 1 < num_patterns; ++k) chosen.push_back(sector[keyed[static_cast<size_t>(k)].index]);
  std::sort(chosen.begin(), chosen.end(), [&](const BitPattern &a, const BitPattern &b) {
    const int da = excitation_distance(a);
    const int db = excitation_distance(b);
    if (da != db) return da < db;
    return a < b;
  });

  SparseState state;
  state.n_qubits = n;
  state.entries.reserve(chosen.size());
  double magnitude = 1.0;
  for (const auto &pattern : chosen) {
    cdouble phase{1.0, 0.0};
    if (complex_phases) {
      const double angle = 2.0 * std::numbers::pi * rng.uniform();
      phase = cdouble{std::cos(angle), std::sin(angle)};
    } else if (rng.uniform() < 0.5) {
      phase = cdouble{-1.0, 0.0};
    }
    state.entries.push_back({pattern, magnitude * phase});
    magnitude *= decay;
  }
  normalize_sparse_state(state);
  state.metadata = nlohmann::ordered_json{{"ordering", "interleaved"},
                                          {"particle_number", particle_number},
                                          {"sz", sz},
                                          {"decay", decay},
                                          {"seed", seed}};
  return state;
}

}  // namespace qsprep

#endif  // QSPREP_TARGETS_HPP_
