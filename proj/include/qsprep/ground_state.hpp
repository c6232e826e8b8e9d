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

#ifndef QSPREP_GROUND_STATE_HPP_
#define QSPREP_GROUND_STATE_HPP_

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qsprep/bits.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/hamiltonian.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/rng.hpp"
#include "qsprep/sparse_state.hpp"
#include "qsprep/state_vector.hpp"

// Exact lowest eigenstates of Pauli-sum Hamiltonians: dense diagonalization
// up to 10 qubits, matrix-free Lanczos with full reorthogonalization up to
// 14.  Degenerate ground spaces are resolved deterministically so repeated
// runs (and different code paths) give the same target state.
namespace qsprep {

struct GroundStateResult {
  SparseState state;
  double energy = 0.0;
  double residual = 0.0;  // ||H psi - E psi||, computed explicitly
  std::string method;     // "dense" or "lanczos"
};

namespace detail {

inline double coefficient_scale(const PauliSumHamiltonian &h) {
  double scale = 0.0;
  for (const auto &t : h.terms) scale += std::abs(t.coefficient);
  return std::max(scale, 1.0);
}

/// Deterministic representative of a (possibly degenerate) ground space:
/// the normalized projection of the half-filling reference pattern onto the
/// span when that projection is nonzero, otherwise the span vector whose
/// dominant pattern is lexicographically largest.  The global phase is fixed
/// by making the dominant amplitude real and positive.
inline StateVector resolve_ground_space(const std::vector<StateVector> &span) {
  const int n = span.front().n_qubits;
  const size_t ones = static_cast<size_t>((n + 1) / 2);  // half filling, rounded up
  const size_t hf_index =
      pattern_to_index(std::string(ones, '1') + std::string(static_cast<size_t>(n) - ones, '0'));
  StateVector resolved(n);
  resolved.amps.assign(resolved.dim(), cdouble{0, 0});
  for (const auto &v : span) {
    const cdouble weight = std::conj(v.amps[hf_index]);  // <v|hf>
    for (size_t i = 0; i < v.dim(); ++i) resolved.amps[i] += weight * v.amps[i];
  }
  if (norm(resolved) > 1e-6) {
    normalize(resolved);
  } else {
    size_t best = 0;
    size_t best_dominant = 0;
    for (size_t k = 0; k < span.size(); ++k) {
      size_t dominant = 0;
      double mag = -1.0;
      for (size_t i = 0; i < span[k].dim(); ++i) {
        if (std::abs(span[k].amps[i]) > mag) {
          mag = std::abs(span[k].amps[i]);
          dominant = i;
        }
      }
      // Big-endian patterns sort lexicographically exactly like indices.
      if (k == 0 || dominant > best_dominant) {
        best = k;
        best_dominant = dominant;
      }
    }
    resolved = span[best];
  }
  size_t dominant = 0;
  double mag = -1.0;
  for (size_t i = 0; i < resolved.dim(); ++i) {
    if (std::abs(resolved.amps[i]) > mag) {
      mag = std::abs(resolved.amps[i]);
      dominant = i;
    }
  }
  const cdouble a = resolved.amps[dominant];
  const cdouble phase = std::conj(a) / std::abs(a);
  for (auto &v : resolved.amps) v *= phase;
  return resolved;
}

inline GroundStateResult finish(const PauliSumHamiltonian &h, const std::vector<StateVector> &span,
                                double amp_cutoff, const char *method) {
  StateVector psi = resolve_ground_space(span);
  StateVector h_psi = apply_hamiltonian(h, psi);
  const double energy = overlap(psi, h_psi).real();
  double residual_sq = 0.0;
  for (size_t i = 0; i < psi.dim(); ++i) {
    residual_sq += std::norm(h_psi.amps[i] - energy * psi.amps[i]);
  }
  GroundStateResult result;
  result.energy = energy;
  result.residual = std::sqrt(residual_sq);
  result.method = method;
  if (result.residual > 1e-8) {
    throw internal_error("ground-state solver did not converge (residual " +
                         format_double(result.residual) + ")");
  }
  result.state = from_state_vector(psi, amp_cutoff);
  normalize_sparse_state(result.state);
  return result;
}

inline GroundStateResult ground_state_dense(const PauliSumHamiltonian &h, double amp_cutoff) {
  const int dim = 1 << h.n_qubits;
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto &term : h.terms) {
    const auto c = compile_term(term, h.n_qubits);
    for (int col = 0; col < dim; ++col) {
      const bool odd = std::popcount(static_cast<std::uint64_t>(col) & c.phase_mask) & 1;
      matrix(static_cast<int>(col ^ static_cast<int>(c.flip_mask)), col) +=
          odd ? -c.base : c.base;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
  if (solver.info() != Eigen::Success) throw internal_error("dense eigensolver failed");
  const double e0 = solver.eigenvalues()(0);
  const double tol = 1e-9 * coefficient_scale(h);
  std::vector<StateVector> span;
  for (int k = 0; k < dim && solver.eigenvalues()(k) <= e0 + tol; ++k) {
    StateVector v(h.n_qubits);
    for (int i = 0; i < dim; ++i) v.amps[static_cast<size_t>(i)] = solver.eigenvectors()(i, k);
    span.push_back(std::move(v));
  }
  return finish(h, span, amp_cutoff, "dense");
}

inline GroundStateResult ground_state_lanczos(const PauliSumHamiltonian &h, double amp_cutoff) {
  const size_t dim = size_t{1} << h.n_qubits;
  const double scale = coefficient_scale(h);
  const int max_krylov = 300;

  Rng rng(0x9b97a1cull);
  StateVector v(h.n_qubits);
  for (auto &a : v.amps) a = rng.gaussian_complex();
  normalize(v);

  std::vector<StateVector> basis;  // full storage for reorthogonalization
  std::vector<double> alpha, beta;
  basis.push_back(v);

  auto ritz_residual = [&](Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> &solver,
                           double beta_last) {
    const int m = static_cast<int>(solver.eigenvalues().size());
    return std::abs(beta_last * solver.eigenvectors()(m - 1, 0));
  };

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_solver;
  int m_used = 0;
  for (int m = 0; m < max_krylov; ++m) {
    StateVector w = apply_hamiltonian(h, basis.back());
    const double a = overlap(basis.back(), w).real();
    alpha.push_back(a);
    // Two-pass full reorthogonalization against every stored vector.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto &b : basis) {
        const cdouble c = overlap(b, w);
        for (size_t i = 0; i < dim; ++i) w.amps[i] -= c * b.amps[i];
      }
    }
    const double b_next = norm(w);
    m_used = m + 1;

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m_used, m_used);
    for (int i = 0; i < m_used; ++i) {
      tri(i, i) = alpha[static_cast<size_t>(i)];
      if (i + 1 < m_used) {
        tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<size_t>(i)];
      }
    }
    tri_solver.compute(tri);
    const bool breakdown = b_next <= 1e-13 * scale;
    if (breakdown || (m_used >= 8 && ritz_residual(tri_solver, b_next) <= 1e-10 * scale)) {
      break;
    }
    if (m + 1 == max_krylov) break;
    beta.push_back(b_next);
    for (auto &amp : w.amps) amp /= b_next;
    basis.push_back(std::move(w));
  }

  const double theta0 = tri_solver.eigenvalues()(0);
  const double tol = 1e-9 * scale;
  std::vector<StateVector> span;
  for (int k = 0; k < m_used && tri_solver.eigenvalues()(k) <= theta0 + tol; ++k) {
    StateVector ritz(h.n_qubits);
    ritz.amps.assign(dim, cdouble{0, 0});
    for (int j = 0; j < m_used; ++j) {
      const double y = tri_solver.eigenvectors()(j, k);
      for (size_t i = 0; i < dim; ++i) ritz.amps[i] += y * basis[static_cast<size_t>(j)].amps[i];
    }
    normalize(ritz);
    span.push_back(std::move(ritz));
  }
  return finish(h, span, amp_cutoff, "lanczos");
}

}  // namespace detail

/// Lowest eigenstate of `h`, with amplitudes below `amp_cutoff` dropped and
/// the rest renormalized.  Dense path through 10 qubits, Lanczos with full
/// reorthogonalization through 14.  Throws internal_error with the residual
/// when the iteration fails to converge.
inline GroundStateResult ground_state(const PauliSumHamiltonian &h, double amp_cutoff = 1e-12) {
  validate_hamiltonian(h);
  if (h.terms.empty()) throw input_error("Hamiltonian has no terms");
  if (h.n_qubits > 14) throw input_error("ground_state supports at most 14 qubits");
  if (h.n_qubits <= 10) return detail::ground_state_dense(h, amp_cutoff);
  return detail::ground_state_lanczos(h, amp_cutoff);
}

}  // namespace qsprep

#endif  // QSPREP_GROUND_STATE_HPP_
