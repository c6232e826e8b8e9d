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

#ifndef QSPREP_SPARSE_STATE_HPP_
#define QSPREP_SPARSE_STATE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsprep/bits.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/state_vector.hpp"

// Sparse computational-basis expansions: the interchange format between
// target generation, truncation, and the two preparation routes.
namespace qsprep {

struct SparseEntry {
  BitPattern pattern;
  cdouble amplitude;
};

/// A state given as distinct basis patterns with complex amplitudes.
/// `metadata` is free-form JSON carried through I/O untouched (orbital
/// counts, ordering tags, provenance of generated targets).
struct SparseState {
  int n_qubits = 0;
  std::vector<SparseEntry> entries;
  nlohmann::ordered_json metadata;  // null when absent
};

inline double norm_squared(const SparseState &state) {
  double total = 0.0;
  for (const auto &e : state.entries) total += std::norm(e.amplitude);
  return total;
}

/// Checks widths, duplicates, and (optionally) normalization.
inline void validate_sparse_state(const SparseState &state, bool check_norm = true,
                                  double norm_tolerance = 1e-10) {
  StateVector::check_width(state.n_qubits);
  if (state.entries.empty()) throw input_error("sparse state needs at least one entry");
  std::set<BitPattern> seen;
  for (const auto &e : state.entries) {
    validate_pattern(e.pattern, state.n_qubits);
    if (!seen.insert(e.pattern).second) {
      throw input_error("duplicate basis pattern: " + e.pattern);
    }
  }
  if (check_norm && std::abs(norm_squared(state) - 1.0) > norm_tolerance) {
    throw input_error("sparse state is not normalized");
  }
}

inline void normalize_sparse_state(SparseState &state) {
  const double n2 = norm_squared(state);
  if (n2 <= 0.0) throw input_error("cannot normalize a zero state");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto &e : state.entries) e.amplitude *= inv;
}

inline StateVector to_state_vector(const SparseState &state) {
  StateVector out(state.n_qubits);
  for (const auto &e : state.entries) {
    out.amps[pattern_to_index(e.pattern)] += e.amplitude;
  }
  return out;
}

/// Collects amplitudes above `cutoff` into sparse form (patterns ascending).
inline SparseState from_state_vector(const StateVector &vec, double cutoff = 1e-12) {
  SparseState out;
  out.n_qubits = vec.n_qubits;
  for (size_t i = 0; i < vec.dim(); ++i) {
    if (std::abs(vec.amps[i]) > cutoff) {
      out.entries.push_back({index_to_pattern(i, vec.n_qubits), vec.amps[i]});
    }
  }
  if (out.entries.empty()) throw input_error("state vector has no amplitude above the cutoff");
  return out;
}

// ---------------------------------------------------------------------------
// File formats: JSON {n_qubits, metadata?, entries:[{pattern, re, im}]} and
// whitespace-delimited text ("n=<int>" header, then "pattern re im" lines,
// '#' comments).
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json sparse_to_json(const SparseState &state) {
  nlohmann::ordered_json j;
  j["n_qubits"] = state.n_qubits;
  if (!state.metadata.is_null()) j["metadata"] = state.metadata;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto &e : state.entries) {
    nlohmann::ordered_json entry;
    entry["pattern"] = e.pattern;
    entry["re"] = e.amplitude.real();
    entry["im"] = e.amplitude.imag();
    j["entries"].push_back(std::move(entry));
  }
  return j;
}

inline SparseState sparse_from_json(const nlohmann::ordered_json &j) {
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("entries")) {
    throw input_error("sparse state JSON needs n_qubits and entries");
  }
  if (!j["n_qubits"].is_number_integer() || !j["entries"].is_array()) {
    throw input_error("sparse state JSON has malformed n_qubits or entries");
  }
  SparseState state;
  state.n_qubits = j["n_qubits"].get<int>();
  if (j.contains("metadata")) state.metadata = j["metadata"];
  for (const auto &entry : j["entries"]) {
    if (!entry.is_object() || !entry.contains("pattern") || !entry.contains("re") ||
        !entry.contains("im") || !entry["re"].is_number() || !entry["im"].is_number()) {
      throw input_error("sparse state entries need pattern, re, im");
    }
    state.entries.push_back({entry["pattern"].get<std::string>(),
                             cdouble{entry["re"].get<double>(), entry["im"].get<double>()}});
  }
  validate_sparse_state(state, /*check_norm=*/false);
  return state;
}

inline std::string sparse_to_text(const SparseState &state) {
  std::string out = "n=" + std::to_string(state.n_qubits) + "\n";
  for (const auto &e : state.entries) {
    out += e.pattern;
    out += ' ';
    out += format_double(e.amplitude.real());
    out += ' ';
    out += format_double(e.amplitude.imag());
    out += '\n';
  }
  return out;
}

inline SparseState sparse_from_text(const std::string &text) {
  SparseState state;
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
    if (!(fields >> first)) continue;  // blank or comment-only line
    if (!header_seen) {
      if (first.rfind("n=", 0) != 0) {
        throw input_error("line " + std::to_string(line_number) + ": expected header n=<int>");
      }
      try {
        state.n_qubits = std::stoi(first.substr(2));
      } catch (const std::exception &) {
        throw input_error("line " + std::to_string(line_number) + ": malformed qubit count");
      }
      header_seen = true;
      continue;
    }
    double re = 0.0, im = 0.0;
    if (!(fields >> re >> im)) {
      throw input_error("line " + std::to_string(line_number) +
                        ": expected \"pattern re im\"");
    }
    state.entries.push_back({first, cdouble{re, im}});
  }
  if (!header_seen) throw input_error("missing n=<int> header");
  validate_sparse_state(state, /*check_norm=*/false);
  return state;
}

/// Reads either format, deciding by the first non-whitespace byte.
inline SparseState load_sparse_state(const std::string &path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw input_error("malformed JSON in " + path);
    return sparse_from_json(j);
  }
  return sparse_from_text(text);
}

inline void save_sparse_state(const std::string &path, const SparseState &state) {
  write_file_atomic(path, sparse_to_json(state).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Truncation and amplitude spectra.  Both order by descending |amplitude|
// with lexicographic pattern order breaking ties, so the kept set is unique.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<size_t> magnitude_order(const SparseState &state) {
  std::vector<size_t> order(state.entries.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&state](size_t a, size_t b) {
    const double ma = std::abs(state.entries[a].amplitude);
    const double mb = std::abs(state.entries[b].amplitude);
    if (ma != mb) return ma > mb;
    return state.entries[a].pattern < state.entries[b].pattern;
  });
  return order;
}

}  // namespace detail

struct TruncationResult {
  SparseState state;
  double fidelity_vs_original = 1.0;  // = sum of kept |c|^2 of the input
};

/// Keeps the `keep` largest-magnitude entries and renormalizes.  For a
/// normalized input the fidelity against the original is exactly the kept
/// weight.  Asking for more entries than exist returns the input unchanged.
inline TruncationResult truncate_keep(const SparseState &state, size_t keep) {
  if (keep == 0) throw input_error("truncation must keep at least one entry");
  if (keep >= state.entries.size()) return {state, 1.0};
  const auto order = detail::magnitude_order(state);
  TruncationResult result;
  result.state.n_qubits = state.n_qubits;
  result.state.metadata = state.metadata;
  double kept_weight = 0.0;
  std::vector<size_t> kept(order.begin(), order.begin() + static_cast<long>(keep));
  std::sort(kept.begin(), kept.end());  // preserve the input's entry order
  for (size_t i : kept) {
    result.state.entries.push_back(state.entries[i]);
    kept_weight += std::norm(state.entries[i].amplitude);
  }
  result.fidelity_vs_original = kept_weight;
  normalize_sparse_state(result.state);
  return result;
}

/// Keeps entries with |amplitude| >= threshold.  If the threshold removes
/// everything, the single largest entry is kept so the result stays a state.
inline TruncationResult truncate_threshold(const SparseState &state, double threshold) {
  if (threshold <= 0.0 || threshold >= 1.0) {
    throw input_error("truncation threshold must lie in (0, 1)");
  }
  size_t keep = 0;
  for (const auto &e : state.entries) {
    if (std::abs(e.amplitude) >= threshold) ++keep;
  }
  return truncate_keep(state, std::max<size_t>(keep, 1));
}

struct SpectrumRow {
  int rank = 0;        // 1-based
  double abs_c = 0.0;
  double cum_weight = 0.0;
};

/// Amplitude spectrum: magnitudes in descending order with the running sum
/// of squared magnitudes (reaches 1 for a normalized state).
inline std::vector<SpectrumRow> spectrum(const SparseState &state) {
  const auto order = detail::magnitude_order(state);
  std::vector<SpectrumRow> rows;
  rows.reserve(order.size());
  double cum = 0.0;
  for (size_t k = 0; k < order.size(); ++k) {
    const double mag = std::abs(state.entries[order[k]].amplitude);
    cum += mag * mag;
    rows.push_back({static_cast<int>(k) + 1, mag, cum});
  }
  return rows;
}

inline std::string spectrum_to_csv(const std::vector<SpectrumRow> &rows) {
  std::string out = "rank,abs_c,cum_weight\n";
  for (const auto &row : rows) {
    out += std::to_string(row.rank);
    out += ',';
    out += format_double(row.abs_c);
    out += ',';
    out += format_double(row.cum_weight);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry sectors under the interleaved spin layout (alpha on even qubits).
// ---------------------------------------------------------------------------

struct SymmetryReport {
  std::optional<int> particle_number;  // empty = mixed
  std::optional<double> sz;           // empty = mixed or layout not applicable
};

inline SymmetryReport symmetry(const SparseState &state) {
  SymmetryReport report;
  bool first = true;
  int n_value = 0;
  double sz_value = 0.0;
  bool n_uniform = true;
  bool sz_uniform = state.n_qubits % 2 == 0;
  for (const auto &e : state.entries) {
    int alpha = 0, beta = 0;
    for (size_t i = 0; i < e.pattern.size(); ++i) {
      if (e.pattern[i] != '1') continue;
      (i % 2 == 0 ? alpha : beta) += 1;
    }
    const int n = alpha + beta;
    const double sz = (alpha - beta) / 2.0;
    if (first) {
      n_value = n;
      sz_value = sz;
      first = false;
    } else {
      if (n != n_value) n_uniform = false;
      if (sz != sz_value) sz_uniform = false;
    }
  }
  if (n_uniform) report.particle_number = n_value;
  if (sz_uniform && state.n_qubits % 2 == 0) report.sz = sz_value;
  return report;
}

}  // namespace qsprep

#endif  // QSPREP_SPARSE_STATE_HPP_
