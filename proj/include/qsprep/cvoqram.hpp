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

#ifndef QSPREP_CVOQRAM_HPP_
#define QSPREP_CVOQRAM_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qsprep/bits.hpp"
#include "qsprep/circuit.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/simulator.hpp"
#include "qsprep/state_vector.hpp"

// Exact sparse-state loader with one ancilla.
//
// The register layout is qubits 0..n-1 plus the ancilla at index n.  Starting
// from X(ancilla), each pattern is loaded in three moves: ancilla-controlled
// CNOTs copy the pattern's one-positions into the register, a multi-controlled
// 2x2 rotation block (controls on those positions, target ancilla) splits the
// pattern's amplitude off the residual ancilla branch, and the CNOTs are
// undone so the residual branch returns to |0...0> (skipped after the final
// pattern, whose residual is zero).
//
// Loading in non-decreasing Hamming weight order is what keeps previously
// loaded branches from satisfying a later block's controls: a strictly
// lighter (or equal-weight but different) pattern can never contain a later
// pattern's one-positions.  The weight sort can be disabled to demonstrate
// the resulting corruption; see run_instrumented.
namespace qsprep::cvoqram {

/// One desired basis-state amplitude.
struct Pattern {
  BitPattern bits;
  cdouble amplitude;
};

/// One scheduled load: the pattern, its amplitude, the residual weights
/// right before (`gamma`) and after (`gamma_next`) this load, and the cached
/// one-positions.
struct LoadStep {
  BitPattern bits;
  cdouble amplitude;
  double gamma = 1.0;
  double gamma_next = 0.0;
  std::vector<int> ones;
};

struct LoadPlan {
  int n_qubits = 0;
  std::vector<LoadStep> steps;
  double gamma_final = 1.0;  // residual after the last load; ~0 for unit-norm input
};

struct PreprocessOptions {
  /// Accept non-normalized inputs by scaling them (otherwise deviations
  /// beyond norm_tolerance are input errors).  Amplitudes are always scaled
  /// to exact unit norm so the residual recurrence terminates at zero.
  bool renormalize = false;
  double norm_tolerance = 1e-6;
  /// Non-decreasing Hamming-weight order (ties lexicographic).  Disabling
  /// this breaks the loader by design; it exists so tests and demos can show
  /// why the order matters.
  bool sort_by_weight = true;
};

/// Validates, sorts, and computes the residual-weight schedule
/// gamma_0 = 1, gamma_{k+1} = gamma_k - |x_k|^2.
inline LoadPlan preprocess(int n_qubits, std::vector<Pattern> patterns,
                           PreprocessOptions options = {}) {
  StateVector::check_width(n_qubits);
  std::vector<Pattern> kept;
  kept.reserve(patterns.size());
  for (auto &p : patterns) {
    validate_pattern(p.bits, n_qubits);
    if (std::abs(p.amplitude) > 0.0) kept.push_back(std::move(p));
  }
  if (kept.empty()) {
    throw input_error("pattern set has no nonzero amplitudes");
  }
  {
    std::set<BitPattern> seen;
    for (const auto &p : kept) {
      if (!seen.insert(p.bits).second) {
        throw input_error("duplicate pattern \"" + p.bits + "\"");
      }
    }
  }
  double norm2 = 0.0;
  for (const auto &p : kept) norm2 += std::norm(p.amplitude);
  if (!options.renormalize && std::abs(norm2 - 1.0) > options.norm_tolerance) {
    throw input_error("pattern amplitudes have norm " + std::to_string(std::sqrt(norm2)) +
                      "; pass renormalize to accept");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto &p : kept) p.amplitude *= scale;

  if (options.sort_by_weight) {
    std::sort(kept.begin(), kept.end(), [](const Pattern &a, const Pattern &b) {
      int wa = hamming_weight(a.bits), wb = hamming_weight(b.bits);
      return wa != wb ? wa < wb : a.bits < b.bits;
    });
  }

  // Residuals as backward tail sums: gamma_k = sum_{j >= k} |x_j|^2.  This is
  // the same recurrence gamma_{k+1} = gamma_k - |x_k|^2 without the
  // catastrophic cancellation the forward difference suffers as the residual
  // approaches zero (whose square root would magnify the error).
  const size_t m = kept.size();
  std::vector<double> tail(m + 1, 0.0);
  for (size_t k = m; k-- > 0;) {
    tail[k] = tail[k + 1] + std::norm(kept[k].amplitude);
  }

  LoadPlan plan;
  plan.n_qubits = n_qubits;
  for (size_t k = 0; k < m; ++k) {
    LoadStep step;
    step.bits = std::move(kept[k].bits);
    step.amplitude = kept[k].amplitude;
    step.gamma = tail[k];
    step.gamma_next = tail[k + 1];
    step.ones = one_positions(step.bits);
    plan.steps.push_back(std::move(step));
  }
  plan.gamma_final = tail[m];
  return plan;
}

/// The 2x2 block that moves amplitude x off a residual branch of weight
/// gamma:
///
///   U = (1/sqrt(gamma)) [[ a,        x ],
///                        [ -conj(x), a ]],   a = sqrt(gamma - |x|^2),
///
/// so U|1> = (x|0> + a|1>)/sqrt(gamma).  The -conj(x) completion keeps U
/// unitary for complex x (a symmetric completion would not be).
inline std::array<cdouble, 4> u_matrix(cdouble x, double gamma) {
  if (gamma <= 1e-15) {
    throw input_error("rotation block requested with no residual weight left");
  }
  const double xx = std::norm(x);
  if (xx > gamma + 1e-12) {
    throw input_error("pattern amplitude exceeds the residual weight");
  }
  const double a = std::sqrt(std::max(gamma - xx, 0.0));
  const double inv = 1.0 / std::sqrt(gamma);
  return {cdouble{a * inv, 0.0}, x * inv, -std::conj(x) * inv, cdouble{a * inv, 0.0}};
}

/// Same block built from a precomputed next residual, so the off-diagonal
/// magnitude sqrt(gamma - |x|^2) never goes through the ill-conditioned
/// subtraction.  compile() uses this with the plan's tail sums.
inline std::array<cdouble, 4> u_matrix_from_residuals(cdouble x, double gamma,
                                                      double gamma_next) {
  if (gamma <= 1e-15) {
    throw input_error("rotation block requested with no residual weight left");
  }
  const double a = std::sqrt(std::max(gamma_next, 0.0));
  const double inv = 1.0 / std::sqrt(gamma);
  return {cdouble{a * inv, 0.0}, x * inv, -std::conj(x) * inv, cdouble{a * inv, 0.0}};
}

/// CNOT-equivalents contributed by one emitted gate: plain CNOTs count one;
/// a rotation block with t >= 1 controls decomposes into 6t - 4 CNOTs; a
/// control-free block contributes none.
inline long long formula_cnot_share(const Gate &g) {
  if (g.kind == GateKind::CNOT) return 1;
  if (g.kind == GateKind::MCU) {
    const long long t = g.control_count();
    return t >= 1 ? 6 * t - 4 : 0;
  }
  return 0;
}

struct CompiledCircuit {
  Circuit circuit;                 // over n_qubits + 1 wires, ancilla last
  std::vector<size_t> step_begin;  // index of each load's first gate
  long long formula_cnots = 0;     // sum of formula_cnot_share over all gates
};

/// Emits the loader circuit.  The ancilla is qubit n.
inline CompiledCircuit compile(const LoadPlan &plan) {
  if (plan.steps.empty()) {
    throw input_error("cannot compile an empty load plan");
  }
  const int n = plan.n_qubits;
  const int ancilla = n;
  CompiledCircuit out;
  out.circuit = Circuit(n + 1);
  out.circuit.append(gate::x(ancilla));
  const size_t m = plan.steps.size();
  for (size_t k = 0; k < m; ++k) {
    const LoadStep &step = plan.steps[k];
    out.step_begin.push_back(out.circuit.gates.size());
    for (int l : step.ones) {
      out.circuit.append(gate::cnot(ancilla, l));
    }
    out.circuit.append(gate::mcu(
        step.ones, ancilla,
        u_matrix_from_residuals(step.amplitude, step.gamma, step.gamma_next)));
    if (k + 1 < m) {
      for (int l : step.ones) {
        out.circuit.append(gate::cnot(ancilla, l));
      }
    }
  }
  for (const Gate &g : out.circuit.gates) out.formula_cnots += formula_cnot_share(g);
  return out;
}

/// Closed-form CNOT count for a weight-sorted plan:
///
///   sum_t mu_t (8t - 4) - t_max
///
/// over Hamming weights t >= 1 with multiplicities mu_t; the -t_max term is
/// the final pattern's skipped un-copy.  A lone all-zeros pattern needs no
/// CNOTs at all.
inline long long cnot_count(const LoadPlan &plan) {
  std::map<int, long long> mu;
  int t_max = 0;
  for (const auto &step : plan.steps) {
    const int t = static_cast<int>(step.ones.size());
    if (t >= 1) {
      ++mu[t];
      t_max = std::max(t_max, t);
    }
  }
  if (mu.empty()) return 0;
  long long total = 0;
  for (const auto &[t, count] : mu) total += count * (8ll * t - 4);
  return total - t_max;
}

/// Expected intermediate state right before load k (or after the final load
/// for k == steps.size()):
///
///   sum_{j<k} x_j |p_j; 0>  +  sqrt(gamma_k) |0...0; 1>
///
/// Returns the largest amplitude deviation between `state` and this.
inline double check_invariant(const LoadPlan &plan, size_t k, const StateVector &state) {
  if (state.n_qubits != plan.n_qubits + 1) {
    throw input_error("invariant check needs the register plus ancilla");
  }
  if (k > plan.steps.size()) {
    throw input_error("invariant step index out of range");
  }
  StateVector expected(plan.n_qubits + 1);
  for (size_t j = 0; j < k; ++j) {
    expected.amps[pattern_to_index(plan.steps[j].bits) << 1] = plan.steps[j].amplitude;
  }
  const double gamma = k < plan.steps.size() ? plan.steps[k].gamma : plan.gamma_final;
  expected.amps[1] = cdouble{std::sqrt(std::max(gamma, 0.0)), 0.0};
  return max_abs_diff(state, expected);
}

/// The n-qubit state the plan is supposed to prepare.
inline StateVector target_state(const LoadPlan &plan) {
  StateVector target(plan.n_qubits);
  for (const auto &step : plan.steps) {
    target.amps[pattern_to_index(step.bits)] = step.amplitude;
  }
  return target;
}

struct ProjectedRegister {
  StateVector register_state;  // amplitudes on the ancilla = 0 slice
  double ancilla_one_weight = 0.0;
};

/// Splits an (n+1)-qubit loader output into the register slice and the
/// weight left on the ancilla (which should be ~0 after a full load).
inline ProjectedRegister project_register(const StateVector &state) {
  if (state.n_qubits < 2) {
    throw input_error("projection needs a register plus ancilla");
  }
  ProjectedRegister out;
  out.register_state = StateVector(state.n_qubits - 1);
  for (std::uint64_t r = 0; r < out.register_state.dim(); ++r) {
    out.register_state.amps[r] = state.amps[r << 1];
    out.ancilla_one_weight += std::norm(state.amps[(r << 1) | 1]);
  }
  return out;
}

struct InstrumentedRun {
  StateVector final_state;  // n+1 qubits
  double max_invariant_deviation = 0.0;
  double ancilla_one_weight = 0.0;
};

/// Simulates the compiled circuit, checking the loop invariant before every
/// load and once more after the last (where the residual must be zero).
inline InstrumentedRun run_instrumented(const LoadPlan &plan) {
  const CompiledCircuit compiled = compile(plan);
  StateVector state = zero_state(plan.n_qubits + 1);
  InstrumentedRun run;
  size_t gate_index = 0;
  const size_t m = plan.steps.size();
  for (size_t k = 0; k <= m; ++k) {
    const size_t until = k < m ? compiled.step_begin[k] : compiled.circuit.gates.size();
    while (gate_index < until) {
      apply_in_place(state, compiled.circuit.gates[gate_index++]);
    }
    run.max_invariant_deviation =
        std::max(run.max_invariant_deviation, check_invariant(plan, k, state));
  }
  run.ancilla_one_weight = project_register(state).ancilla_one_weight;
  run.final_state = std::move(state);
  return run;
}

/// Deterministic random instances for stress tests: m distinct patterns with
/// Gaussian complex amplitudes, normalized.
inline std::vector<Pattern> random_patterns(int n_qubits, int m, std::uint64_t seed) {
  StateVector::check_width(n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (m < 1 || static_cast<std::uint64_t>(m) > dim) {
    throw input_error("cannot draw " + std::to_string(m) + " distinct patterns on " +
                      std::to_string(n_qubits) + " qubits");
  }
  Rng rng(seed);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < static_cast<size_t>(m)) {
    chosen.insert(rng.below(dim));
  }
  std::vector<Pattern> patterns;
  double norm2 = 0.0;
  for (std::uint64_t index : chosen) {
    cdouble amp = rng.gaussian_complex();
    norm2 += std::norm(amp);
    patterns.push_back({index_to_pattern(index, n_qubits), amp});
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto &p : patterns) p.amplitude *= scale;
  return patterns;
}

struct ClassicalCost {
  long long comparisons = 0;  // sort comparator invocations
  long long work = 0;         // per-pattern bit scans plus amplitude updates
};

/// Instrumented rerun of the preprocessing stage.  Work grows as
/// Theta(n * M) and comparisons as O(M log M).
inline ClassicalCost classical_cost(int n_qubits, std::vector<Pattern> patterns) {
  StateVector::check_width(n_qubits);
  ClassicalCost cost;
  for (const auto &p : patterns) {
    validate_pattern(p.bits, n_qubits);
  }
  std::vector<std::pair<int, const Pattern *>> keyed;
  keyed.reserve(patterns.size());
  for (const auto &p : patterns) {
    int weight = 0;
    for (char c : p.bits) {
      weight += (c == '1');
      ++cost.work;  // one unit per scanned bit
    }
    keyed.emplace_back(weight, &p);
  }
  std::sort(keyed.begin(), keyed.end(),
            [&cost](const auto &a, const auto &b) {
              ++cost.comparisons;
              return a.first != b.first ? a.first < b.first : a.second->bits < b.second->bits;
            });
  double gamma = 1.0;
  for (const auto &[weight, p] : keyed) {
    gamma -= std::norm(p->amplitude);
    ++cost.work;  // residual update and rotation-block parameters
  }
  return cost;
}

}  // namespace qsprep::cvoqram

#endif  // QSPREP_CVOQRAM_HPP_
