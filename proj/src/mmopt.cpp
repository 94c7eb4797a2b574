// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The cranmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cran/mmopt.hpp"

#include "cran/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <sstream>

namespace cran {

LogdetTangent::LogdetTangent(const CMatrix& m0)
    : anchor_(hermitian_part(m0)),
      slope_(logdet2_gradient(anchor_)),
      anchor_value_(logdet2(anchor_)) {}

double LogdetTangent::operator()(const CMatrix& m) const {
  if (m.rows() != anchor_.rows() || m.cols() != anchor_.cols()) {
    throw std::invalid_argument("LogdetTangent: dimension mismatch");
  }
  // tr(G (M - M0)) for Hermitian G and M - M0 is real.
  const CMatrix delta = m - anchor_;
  return anchor_value_ + (slope_.cwiseProduct(delta.transpose())).sum().real();
}

double Log2Tangent::operator()(double v) const { return std::log2(v0) + (v - v0) / (v0 * std::numbers::ln2); }

double Log2Tangent::slope() const { return 1.0 / (v0 * std::numbers::ln2); }

Projector box_projector(RVector lo, RVector hi) {
  return [lo = std::move(lo), hi = std::move(hi)](const RVector& x) -> RVector {
    return x.cwiseMax(lo).cwiseMin(hi);
  };
}

InnerResult projected_gradient_ascent(const SmoothFunction& f, const Projector& project,
                                      const RVector& x0, const InnerOptions& options) {
  const auto proj = [&](const RVector& v) -> RVector { return project ? project(v) : v; };

  InnerResult out;
  out.x = proj(x0);
  RVector g(out.x.size());
  out.value = f(out.x, &g);
  if (!std::isfinite(out.value)) {
    out.ok = false;
    return out;
  }

  double step = options.initial_step;
  RVector gt(out.x.size());
  for (int it = 0; it < options.max_iter; ++it) {
    bool accepted = false;
    RVector xt;
    double vt = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      xt = proj(out.x + step * g);
      const double dir = g.dot(xt - out.x);
      if (dir <= 0.0) break;  // projected gradient vanished
      vt = f(xt, &gt);
      if (std::isfinite(vt) && vt >= out.value + options.armijo * dir) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const RVector s = xt - out.x;
    const RVector y = gt - g;
    const double previous = out.value;
    out.x = std::move(xt);
    out.value = vt;
    g = gt;
    out.iterations = it + 1;

    if (std::abs(out.value - previous) <= options.tol * std::max(std::abs(out.value), 1.0)) break;

    // Barzilai-Borwein trial step for the next iteration (ascent sign).
    const double sy = s.dot(y);
    step = sy < 0.0 ? s.squaredNorm() / -sy : 2.0 * step;
    step = std::clamp(step, 1e-14, 1e14);
  }
  return out;
}

InnerResult lbfgs_ascent(const SmoothFunction& f, const RVector& x0, const InnerOptions& options) {
  InnerResult out;
  out.x = x0;
  RVector g(x0.size());
  out.value = f(out.x, &g);
  if (!std::isfinite(out.value)) {
    out.ok = false;
    return out;
  }

  std::deque<RVector> s_hist;
  std::deque<RVector> y_hist;
  std::deque<double> rho_hist;
  RVector gt(x0.size());
  for (int it = 0; it < options.max_iter; ++it) {
    // Two-loop recursion on -f: d approximates -H^{-1} grad(-f) = H^{-1} g.
    RVector d = g;
    std::vector<double> a(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      a[i] = rho_hist[i] * s_hist[i].dot(d);
      d -= a[i] * y_hist[i];
    }
    if (!s_hist.empty()) d *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double b = rho_hist[i] * y_hist[i].dot(d);
      d += (a[i] - b) * s_hist[i];
    }
    double slope = g.dot(d);
    if (!(slope > 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = g;
      slope = g.squaredNorm();
    }
    if (slope == 0.0) break;

    double step = s_hist.empty() ? std::min(options.initial_step, 1.0 / std::sqrt(slope)) : 1.0;
    bool accepted = false;
    RVector xt;
    double vt = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      xt = out.x + step * d;
      vt = f(xt, &gt);
      if (std::isfinite(vt) && vt >= out.value + options.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    RVector s = xt - out.x;
    RVector y = g - gt;  // gradient change of -f
    const double previous = out.value;
    out.x = std::move(xt);
    out.value = vt;
    g = gt;
    out.iterations = it + 1;
    if (std::abs(out.value - previous) <= options.tol * std::max(std::abs(out.value), 1.0)) break;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > std::max(options.memory, 1)) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
  }
  return out;
}

MMResult mm_solve(const MMProblem& problem, const RVector& init, const MMOptions& options) {
  if (!problem.objective || !problem.surrogate) {
    throw std::invalid_argument("mm_solve: objective and surrogate are required");
  }
  const auto violation = [&](const RVector& v) { return problem.violation ? problem.violation(v) : 0.0; };

  MMResult result;
  result.x = problem.project ? problem.project(init) : init;
  double current = problem.objective(result.x);
  double current_violation = violation(result.x);
  if (!std::isfinite(current) || current_violation > options.feasibility_tol) {
    std::ostringstream os;
    os << "mm_solve: infeasible initial point (violation " << current_violation << ", objective "
       << current << ")";
    throw InfeasibleError(os.str());
  }
  MMTrace& trace = result.trace;
  trace.objective_per_iteration.push_back(current);
  trace.constraint_violation_per_iteration.push_back(std::max(current_violation, 0.0));

  for (int it = 0; it < options.max_iter; ++it) {
    trace.iterations = it + 1;
    const SmoothFunction surrogate = problem.surrogate(result.x, it);
    const InnerResult inner = options.inner.method == InnerMethod::LBFGS && !problem.project
                                  ? lbfgs_ascent(surrogate, result.x, options.inner)
                                  : projected_gradient_ascent(surrogate, problem.project, result.x, options.inner);
    if (!inner.ok) {
      ++trace.inner_failures;
      break;
    }

    // Step back toward the previous iterate until the true constraints hold
    // and the true objective has not decreased.
    RVector candidate = inner.x;
    bool accepted = false;
    double value = 0.0;
    double viol = 0.0;
    for (int h = 0; h <= options.max_halvings; ++h) {
      value = problem.objective(candidate);
      viol = violation(candidate);
      if (std::isfinite(value) && viol <= options.feasibility_tol && value >= current) {
        accepted = true;
        break;
      }
      ++trace.rejected_steps;
      candidate = result.x + 0.5 * (candidate - result.x);
    }
    if (!accepted) {
      trace.converged = true;
      break;
    }

    const double change = value - current;
    result.x = std::move(candidate);
    current = value;
    current_violation = viol;
    trace.objective_per_iteration.push_back(current);
    trace.constraint_violation_per_iteration.push_back(std::max(current_violation, 0.0));
    if (change <= options.tol * std::max(std::abs(current), 1e-12)) {
      trace.converged = true;
      break;
    }
  }
  result.objective = current;
  return result;
}

}  // namespace cran
