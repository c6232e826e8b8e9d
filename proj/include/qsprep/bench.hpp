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

#ifndef QSPREP_BENCH_HPP_
#define QSPREP_BENCH_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "qsprep/adapt.hpp"
#include "qsprep/circuit.hpp"
#include "qsprep/cvoqram.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/pools.hpp"
#include "qsprep/sparse_state.hpp"
#include "qsprep/state_vector.hpp"

// Gate-count frontier: for each fidelity grid point F*, the cost of reaching
// F* by exact loading of a truncated target (CVO-QRAM) versus by the
// adaptive ansatz.  The CVO-QRAM `cnot` column is the closed-form
// decomposition count (multi-controlled gates expanded), matching how the
// loader's cost scales on hardware; its `single_qubit` column counts only
// the gates emitted before that expansion.
namespace qsprep::bench {

struct FrontierRow {
  std::string method;  // "cvoqram" or "adapt"
  double fidelity = 0.0;  // the grid point
  long long cnot = 0;
  long long single_qubit = 0;
  long long mcu_unexpanded = 0;
  std::string status;  // "ok" or "unreached"
};

inline void validate_grid(const std::vector<double> &grid) {
  if (grid.empty()) throw input_error("fidelity grid is empty");
  double previous = 0.0;
  for (double f : grid) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw input_error("grid fidelity " + format_double(f) + " outside (0, 1]");
    }
    if (f <= previous) throw input_error("fidelity grid must be strictly increasing");
    previous = f;
  }
}

/// Smallest truncation whose kept weight reaches `f_star`, with its loader
/// costs.  The tolerance absorbs the rounding slack in the cumulative sum so
/// a grid point of exactly 1.0 selects the full target.
struct CvoPoint {
  size_t keep = 0;
  double kept_weight = 0.0;
  long long formula_cnots = 0;
  GateCounts circuit_counts;
};

inline CvoPoint cvo_point(const SparseState &target, double f_star) {
  const auto rows = spectrum(target);
  size_t keep = rows.size();
  for (const auto &row : rows) {
    if (row.cum_weight >= f_star - 1e-9) {
      keep = static_cast<size_t>(row.rank);
      break;
    }
  }
  const TruncationResult truncated = truncate_keep(target, keep);
  std::vector<cvoqram::Pattern> patterns;
  patterns.reserve(truncated.state.entries.size());
  for (const auto &e : truncated.state.entries) patterns.push_back({e.pattern, e.amplitude});
  const cvoqram::LoadPlan plan =
      cvoqram::preprocess(target.n_qubits, std::move(patterns), cvoqram::PreprocessOptions{});
  CvoPoint point;
  point.keep = keep;
  point.kept_weight = truncated.fidelity_vs_original;
  point.formula_cnots = cvoqram::cnot_count(plan);
  point.circuit_counts = count_gates(cvoqram::compile(plan).circuit);
  return point;
}

struct BenchResult {
  std::vector<FrontierRow> rows;  // all cvoqram rows (grid order), then all adapt rows
  std::vector<CvoPoint> cvo_points;
  adapt::AdaptResult adapt_result;
  bool all_reached = true;
};

/// Runs both pipelines against one target.  The adaptive run's stopping
/// fidelity is raised to the last grid point so the trace covers the whole
/// grid; rows the trace never reaches are emitted with status "unreached"
/// and the run's final counts.
inline BenchResult run(const pools::Pool &pool, const SparseState &target,
                       const StateVector &initial, const std::vector<double> &grid,
                       adapt::AdaptOptions adapt_options) {
  validate_grid(grid);
  validate_sparse_state(target);
  const StateVector target_vec = to_state_vector(target);

  BenchResult result;
  for (double f : grid) {
    const CvoPoint point = cvo_point(target, f);
    result.rows.push_back({"cvoqram", f, point.formula_cnots, point.circuit_counts.single_qubit,
                           point.circuit_counts.mcu_unexpanded, "ok"});
    result.cvo_points.push_back(point);
  }

  adapt_options.target_fidelity = std::max(adapt_options.target_fidelity, grid.back());
  result.adapt_result = adapt::run(pool, target_vec, initial, adapt_options);

  const double initial_fidelity = fidelity(target_vec, initial);
  const auto &trace = result.adapt_result.trace;
  for (double f : grid) {
    FrontierRow row{"adapt", f, 0, 0, 0, "ok"};
    if (initial_fidelity < f) {
      const auto hit = std::find_if(trace.begin(), trace.end(),
                                    [f](const adapt::TraceRow &t) { return t.fidelity >= f; });
      if (hit != trace.end()) {
        row.cnot = hit->cnot_cum;
        row.single_qubit = hit->single_qubit_cum;
      } else {
        row.status = "unreached";
        result.all_reached = false;
        if (!trace.empty()) {
          row.cnot = trace.back().cnot_cum;
          row.single_qubit = trace.back().single_qubit_cum;
        }
      }
    }
    result.rows.push_back(row);
  }
  return result;
}

inline std::string frontier_to_csv(const std::vector<FrontierRow> &rows) {
  std::string out = "method,fidelity,cnot,single_qubit,mcu_unexpanded,status\n";
  for (const auto &row : rows) {
    out += row.method;
    out += ',';
    out += format_double(row.fidelity);
    out += ',';
    out += std::to_string(row.cnot);
    out += ',';
    out += std::to_string(row.single_qubit);
    out += ',';
    out += std::to_string(row.mcu_unexpanded);
    out += ',';
    out += row.status;
    out += '\n';
  }
  return out;
}

}  // namespace qsprep::bench

#endif  // QSPREP_BENCH_HPP_
