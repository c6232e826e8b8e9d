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

#ifndef QSPREP_ADAPT_HPP_
#define QSPREP_ADAPT_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsprep/bits.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/lbfgs.hpp"
#include "qsprep/pools.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/simulator.hpp"
#include "qsprep/state_vector.hpp"

// Adaptive ansatz growth targeting state overlap: each macro-iteration
// screens the pool by fidelity gradient, appends the best operator at zero
// angle, and re-optimizes every parameter.  Fidelity is monotone along the
// run because the optimizer starts from the previous optimum and only
// accepts improving steps.
namespace qsprep::adapt {

struct AdaptOptions {
  int max_operators = 60;
  double target_fidelity = 1.0 - 1e-6;
  double screen_tolerance = 1e-9;   // stop when no operator moves the overlap
  int optimizer_max_iterations = 300;
  double gradient_tolerance = 1e-8;
  int random_restarts = 2;          // extra seeded starts when progress stalls
  double restart_amplitude = 0.1;
  std::uint64_t seed = 0;
};

struct AnsatzElement {
  size_t pool_index = 0;
  double theta = 0.0;
};

struct TraceRow {
  int iteration = 0;
  std::string op_id;
  double score = 0.0;     // screening score at selection time
  double fidelity = 0.0;  // after re-optimizing all parameters
  long long cnot_cum = 0;
  long long single_qubit_cum = 0;
  double seconds = 0.0;   // wall clock; informational only
};

enum class StopReason { ReachedTarget, ScreenStalled, MaxOperators };

inline const char *to_string(StopReason r) {
  switch (r) {
    case StopReason::ReachedTarget: return "reached_target";
    case StopReason::ScreenStalled: return "screen_stalled";
    case StopReason::MaxOperators: return "max_operators";
  }
  return "?";
}

struct AdaptResult {
  std::vector<AnsatzElement> ansatz;
  double fidelity = 0.0;
  StateVector state;
  std::vector<TraceRow> trace;
  StopReason stop_reason = StopReason::MaxOperators;
};

/// Basis pattern with the largest amplitude magnitude (first index wins
/// ties); the usual reference state for growing an ansatz toward a target.
inline BitPattern dominant_pattern(const StateVector &state) {
  size_t best = 0;
  double best_mag = -1.0;
  for (size_t i = 0; i < state.dim(); ++i) {
    const double mag = std::abs(state.amps[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return index_to_pattern(best, state.n_qubits);
}

inline StateVector apply_ansatz(const pools::Pool &pool, const std::vector<AnsatzElement> &ansatz,
                                StateVector state) {
  for (const auto &el : ansatz) {
    const auto &op = pool.ops[el.pool_index];
    apply_local_matrix(state, op.support, pools::exponential_matrix(op, el.theta));
  }
  return state;
}

/// F = |<target|psi(theta)>|^2 together with dF/dtheta_j, via one forward
/// sweep and one adjoint sweep: with s = <T|psi>, B_j = U_{j+1}^..U_N^ |T>
/// and K_j = U_j..U_1 |init>,
///   dF/dtheta_j = 2 Re( conj(s) <B_j| i G_j |K_j> ).
inline double fidelity_and_gradient(const pools::Pool &pool,
                                    const std::vector<AnsatzElement> &ansatz,
                                    const StateVector &initial, const StateVector &target,
                                    std::vector<double> &grad_out) {
  StateVector ket = apply_ansatz(pool, ansatz, initial);
  const cdouble s = overlap(target, ket);
  grad_out.assign(ansatz.size(), 0.0);

  StateVector bra = target;
  StateVector probe(ket.n_qubits);
  for (size_t j = ansatz.size(); j-- > 0;) {
    const auto &op = pool.ops[ansatz[j].pool_index];
    probe = ket;
    apply_local_matrix(probe, op.support, op.generator);
    // 2 Re( conj(s) * i * <B|G|K> ) = -2 Im( conj(s) * <B|G|K> )
    grad_out[j] = -2.0 * std::imag(std::conj(s) * overlap(bra, probe));
    const auto inverse = pools::exponential_matrix(op, -ansatz[j].theta);
    apply_local_matrix(bra, op.support, inverse);
    apply_local_matrix(ket, op.support, inverse);
  }
  return std::norm(s);
}

/// Screening score of appending exp(i theta G) at theta = 0: the magnitude
/// of the fidelity derivative 2 |Im(<T|G|psi> <psi|T>)|.  When the current
/// overlap vanishes the derivative is identically zero for every operator,
/// so the score falls back to the transition amplitude |<T|G|psi>|.
inline std::vector<double> screen_scores(const pools::Pool &pool, const StateVector &psi,
                                         const StateVector &target) {
  const cdouble s = overlap(target, psi);
  const bool degenerate = std::abs(s) < 1e-14;
  std::vector<double> scores(pool.ops.size(), 0.0);
  StateVector probe(psi.n_qubits);
  for (size_t i = 0; i < pool.ops.size(); ++i) {
    const auto &op = pool.ops[i];
    probe = psi;
    apply_local_matrix(probe, op.support, op.generator);
    const cdouble t = overlap(target, probe);
    scores[i] = degenerate ? std::abs(t) : 2.0 * std::abs(std::imag(t * std::conj(s)));
  }
  return scores;
}

/// Re-optimizes every angle in place (maximizing fidelity).  Starts from the
/// current angles; if that stalls, retries from seeded perturbations of the
/// best point and keeps the best result.  Returns the final fidelity.
inline double optimize_parameters(const pools::Pool &pool, std::vector<AnsatzElement> &ansatz,
                                  const StateVector &initial, const StateVector &target,
                                  const AdaptOptions &options, Rng &rng) {
  opt::Objective objective = [&](const std::vector<double> &x, std::vector<double> &g) {
    for (size_t j = 0; j < ansatz.size(); ++j) ansatz[j].theta = x[j];
    std::vector<double> fidelity_grad;
    const double f = fidelity_and_gradient(pool, ansatz, initial, target, fidelity_grad);
    g.resize(fidelity_grad.size());
    for (size_t j = 0; j < g.size(); ++j) g[j] = -fidelity_grad[j];
    return 1.0 - f;
  };

  opt::LbfgsOptions lbfgs_options;
  lbfgs_options.max_iterations = options.optimizer_max_iterations;
  lbfgs_options.gradient_tolerance = options.gradient_tolerance;

  std::vector<double> start(ansatz.size());
  for (size_t j = 0; j < ansatz.size(); ++j) start[j] = ansatz[j].theta;
  std::vector<double> unused;
  const double value_before = objective(start, unused);

  opt::LbfgsResult best = opt::minimize(objective, start, lbfgs_options);
  if (value_before - best.value < 1e-12) {
    for (int r = 0; r < options.random_restarts; ++r) {
      std::vector<double> perturbed = best.x;
      for (auto &v : perturbed) {
        v += rng.uniform(-options.restart_amplitude, options.restart_amplitude);
      }
      opt::LbfgsResult retry = opt::minimize(objective, perturbed, lbfgs_options);
      if (retry.value < best.value) best = retry;
    }
  }

  for (size_t j = 0; j < ansatz.size(); ++j) ansatz[j].theta = best.x[j];
  return 1.0 - best.value;
}

/// Grows an ansatz from `initial` toward `target`.  `resume` continues from
/// a previously grown ansatz; trace rows are emitted only for newly added
/// operators, numbered after the resumed ones.
inline AdaptResult run(const pools::Pool &pool, const StateVector &target,
                       const StateVector &initial, const AdaptOptions &options = {},
                       std::vector<AnsatzElement> resume = {}) {
  if (pool.n_qubits != target.n_qubits || pool.n_qubits != initial.n_qubits) {
    throw input_error("pool, target, and initial state must agree on qubit count");
  }
  for (const auto &el : resume) {
    if (el.pool_index >= pool.ops.size()) throw input_error("resume references unknown operator");
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  Rng rng(options.seed);
  AdaptResult result;
  result.ansatz = std::move(resume);

  auto gate_totals = [&pool, &result]() -> std::pair<long long, long long> {
    long long cnots = 0, singles = 0;
    for (const auto &el : result.ansatz) {
      cnots += pool.ops[el.pool_index].template_cnots;
      singles += pool.ops[el.pool_index].template_single_qubit;
    }
    return {cnots, singles};
  };

  result.stop_reason = StopReason::MaxOperators;
  while (true) {
    StateVector psi = apply_ansatz(pool, result.ansatz, initial);
    result.fidelity = fidelity(target, psi);
    result.state = psi;
    if (result.fidelity >= options.target_fidelity) {
      result.stop_reason = StopReason::ReachedTarget;
      break;
    }
    if (result.ansatz.size() >= static_cast<size_t>(options.max_operators)) {
      result.stop_reason = StopReason::MaxOperators;
      break;
    }

    const std::vector<double> scores = screen_scores(pool, psi, target);
    size_t best_index = 0;
    double best_score = -1.0;
    for (size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > best_score) {
        best_score = scores[i];
        best_index = i;
      }
    }
    if (best_score <= options.screen_tolerance) {
      result.stop_reason = StopReason::ScreenStalled;
      break;
    }

    result.ansatz.push_back({best_index, 0.0});
    const double f = optimize_parameters(pool, result.ansatz, initial, target, options, rng);

    const auto [cnots, singles] = gate_totals();
    TraceRow row;
    row.iteration = static_cast<int>(result.ansatz.size());
    row.op_id = pool.ops[best_index].id;
    row.score = best_score;
    row.fidelity = f;
    row.cnot_cum = cnots;
    row.single_qubit_cum = singles;
    row.seconds = elapsed();
    result.trace.push_back(std::move(row));
  }
  return result;
}

/// CSV rendering of a trace.  The `seconds` column is wall-clock time and is
/// the only column exempt from byte-for-byte reproducibility.
inline std::string trace_to_csv(const std::vector<TraceRow> &trace) {
  std::string out = "iteration,op_id,score,fidelity,cnot_cum,single_qubit_cum,seconds\n";
  for (const auto &row : trace) {
    out += std::to_string(row.iteration);
    out += ',';
    out += row.op_id;
    out += ',';
    out += format_double(row.score);
    out += ',';
    out += format_double(row.fidelity);
    out += ',';
    out += std::to_string(row.cnot_cum);
    out += ',';
    out += std::to_string(row.single_qubit_cum);
    out += ',';
    out += format_double(row.seconds);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json ansatz_to_json(const pools::Pool &pool, const AdaptResult &result,
                                             const BitPattern &initial_pattern) {
  nlohmann::ordered_json j;
  j["n_qubits"] = pool.n_qubits;
  j["pool"] = pool.kind;
  j["symmetry_tag"] = pool.symmetry_tag;
  j["initial_pattern"] = initial_pattern;
  j["stop_reason"] = to_string(result.stop_reason);
  j["fidelity"] = result.fidelity;
  j["operators"] = nlohmann::ordered_json::array();
  for (const auto &el : result.ansatz) {
    nlohmann::ordered_json op;
    op["id"] = pool.ops[el.pool_index].id;
    op["theta"] = el.theta;
    j["operators"].push_back(std::move(op));
  }
  return j;
}

/// Resolves a serialized ansatz against `pool` (ids must exist; qubit count
/// and pool kind must match).  Used by resume.
inline std::vector<AnsatzElement> ansatz_from_json(const pools::Pool &pool,
                                                   const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("operators") || !j["operators"].is_array()) {
    throw input_error("ansatz JSON must be an object with an operators array");
  }
  if (j.value("n_qubits", -1) != pool.n_qubits) {
    throw input_error("ansatz JSON qubit count does not match the pool");
  }
  if (j.value("pool", std::string{}) != pool.kind) {
    throw input_error("ansatz JSON pool kind does not match the pool");
  }
  std::vector<AnsatzElement> ansatz;
  for (const auto &entry : j["operators"]) {
    const std::string id = entry.value("id", std::string{});
    if (!entry.contains("theta") || !entry["theta"].is_number()) {
      throw input_error("ansatz operator entries need a numeric theta");
    }
    size_t index = pool.ops.size();
    for (size_t i = 0; i < pool.ops.size(); ++i) {
      if (pool.ops[i].id == id) {
        index = i;
        break;
      }
    }
    if (index == pool.ops.size()) {
      throw input_error("ansatz references operator absent from the pool: " + id);
    }
    ansatz.push_back({index, entry["theta"].get<double>()});
  }
  return ansatz;
}

}  // namespace qsprep::adapt

#endif  // QSPREP_ADAPT_HPP_
