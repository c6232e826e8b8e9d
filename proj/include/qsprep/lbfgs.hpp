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

#ifndef QSPREP_LBFGS_HPP_
#define QSPREP_LBFGS_HPP_

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

// Limited-memory BFGS with Armijo backtracking.  Hand-rolled on purpose:
// the ansatz optimization needs byte-reproducible trajectories across
// platforms, and the problem sizes (tens of parameters) don't justify an
// external dependency.
namespace qsprep::opt {

struct LbfgsOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-8;
  int history = 10;            // stored curvature pairs
  double armijo_c1 = 1e-4;     // sufficient-decrease constant
  double curvature_c2 = 0.9;   // weak Wolfe curvature constant
  int max_line_search_steps = 60;
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;  // gradient norm reached tolerance
};

/// Objective: f(x, grad_out) -> value, writing the gradient into grad_out
/// (same length as x).
using Objective = std::function<double(const std::vector<double> &, std::vector<double> &)>;

namespace detail {

inline double dot(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double> &a) { return std::sqrt(dot(a, a)); }

}  // namespace detail

inline LbfgsResult minimize(const Objective &objective, std::vector<double> x0,
                            const LbfgsOptions &opts = {}) {
  const size_t dim = x0.size();
  LbfgsResult result;
  result.x = std::move(x0);
  if (dim == 0) {
    std::vector<double> unused;
    result.value = objective(result.x, unused);
    result.converged = true;
    return result;
  }

  std::vector<double> grad(dim, 0.0);
  double value = objective(result.x, grad);

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> pairs;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const double gnorm = detail::norm2(grad);
    result.iterations = iter;
    result.gradient_norm = gnorm;
    if (gnorm <= opts.gradient_tolerance) {
      result.converged = true;
      break;
    }

    // Two-loop recursion for the search direction d = -H grad.
    std::vector<double> d(grad);
    std::vector<double> alpha(pairs.size());
    for (size_t i = pairs.size(); i-- > 0;) {
      alpha[i] = pairs[i].rho * detail::dot(pairs[i].s, d);
      for (size_t j = 0; j < dim; ++j) d[j] -= alpha[i] * pairs[i].y[j];
    }
    if (!pairs.empty()) {
      const Pair &last = pairs.back();
      const double gamma = detail::dot(last.s, last.y) / detail::dot(last.y, last.y);
      for (auto &v : d) v *= gamma;
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
      const double beta = pairs[i].rho * detail::dot(pairs[i].y, d);
      for (size_t j = 0; j < dim; ++j) d[j] += (alpha[i] - beta) * pairs[i].s[j];
    }
    for (auto &v : d) v = -v;

    double slope = detail::dot(grad, d);
    if (slope >= 0.0) {  // not a descent direction: fall back to steepest descent
      for (size_t j = 0; j < dim; ++j) d[j] = -grad[j];
      slope = -detail::dot(grad, grad);
    }

    // Weak Wolfe line search by bracketing: shrink on an Armijo failure,
    // grow on a curvature failure.  Plain backtracking is not enough here;
    // it can lock the inverse-Hessian scale at a tiny value and stall.
    double step = 1.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    std::vector<double> x_next(dim), grad_next(dim);
    double value_next = value;
    bool accepted = false;
    std::vector<double> x_best, grad_best;
    double value_best = value;
    for (int ls = 0; ls < opts.max_line_search_steps; ++ls) {
      for (size_t j = 0; j < dim; ++j) x_next[j] = result.x[j] + step * d[j];
      value_next = objective(x_next, grad_next);
      if (value_next < value_best) {
        value_best = value_next;
        x_best = x_next;
        grad_best = grad_next;
      }
      if (value_next > value + opts.armijo_c1 * step * slope) {
        hi = step;
      } else if (detail::dot(grad_next, d) < opts.curvature_c2 * slope) {
        lo = step;
      } else {
        accepted = true;
        break;
      }
      step = std::isinf(hi) ? 2.0 * lo : 0.5 * (lo + hi);
      if (step <= 0.0 || std::isinf(step)) break;
    }
    if (!accepted) {
      if (x_best.empty()) break;  // no further progress possible at this scale
      x_next = x_best;            // salvage the best point seen, then continue
      grad_next = grad_best;
      value_next = value_best;
    }

    Pair pair;
    pair.s.resize(dim);
    pair.y.resize(dim);
    for (size_t j = 0; j < dim; ++j) {
      pair.s[j] = x_next[j] - result.x[j];
      pair.y[j] = grad_next[j] - grad[j];
    }
    const double sy = detail::dot(pair.s, pair.y);
    if (sy > 1e-12 * detail::norm2(pair.s) * detail::norm2(pair.y)) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (pairs.size() > static_cast<size_t>(opts.history)) pairs.pop_front();
    }

    result.x = x_next;
    grad = grad_next;
    value = value_next;
  }

  result.value = value;
  result.gradient_norm = detail::norm2(grad);
  if (result.gradient_norm <= opts.gradient_tolerance) result.converged = true;
  return result;
}

}  // namespace qsprep::opt

#endif  // QSPREP_LBFGS_HPP_
