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

// Majorization-minimization engine for difference-of-concave maximization.
//
// The caller supplies, at every iterate, a smooth minorizer of the true
// objective (built by replacing subtracted concave log-det terms with their
// tangent planes) that may also carry barrier terms for linearized
// constraints. mm_solve() improves that surrogate with projected gradient
// ascent and only accepts points that are feasible for the true constraints
// and do not decrease the true objective.

#pragma once

#include "cran/gaussinfo.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cran {

/// Tangent plane of the concave map M -> logdet2(M) at M0:
///   M -> logdet2(M0) + tr(M0^{-1} (M - M0)) / ln 2.
/// It upper-bounds logdet2 everywhere and touches it at M0.
class LogdetTangent {
 public:
  explicit LogdetTangent(const CMatrix& m0);

  double operator()(const CMatrix& m) const;

  /// M0^{-1} / ln 2, the (constant) gradient of the functional.
  const CMatrix& slope() const { return slope_; }
  double anchor_value() const { return anchor_value_; }
  const CMatrix& anchor() const { return anchor_; }

 private:
  CMatrix anchor_;
  CMatrix slope_;
  double anchor_value_ = 0.0;
};

/// Scalar version of LogdetTangent for log2(v) at v0 > 0.
struct Log2Tangent {
  double v0;
  double operator()(double v) const;
  double slope() const;
};

/// Smooth function returning its value and (if grad != nullptr) gradient.
/// Returning -infinity marks a point outside the function's domain.
using SmoothFunction = std::function<double(const RVector& x, RVector* grad)>;

/// Euclidean projection onto the simple constraint set of the variables.
using Projector = std::function<RVector(const RVector& x)>;

/// Box projector onto [lo, hi] elementwise.
Projector box_projector(RVector lo, RVector hi);

enum class InnerMethod { ProjectedGradient, LBFGS };

struct InnerOptions {
  /// LBFGS applies only to unconstrained problems (no projector).
  InnerMethod method = InnerMethod::ProjectedGradient;
  int memory = 8;  // LBFGS history length
  int max_iter = 200;
  double tol = 1e-6;  // relative change of the surrogate value
  double armijo = 1e-4;
  double initial_step = 1.0;
};

struct InnerResult {
  RVector x;
  double value = 0.0;
  int iterations = 0;
  bool ok = true;  // false when the start point is outside the domain
};

/// Projected gradient ascent with Armijo backtracking and Barzilai-Borwein
/// trial steps.
InnerResult projected_gradient_ascent(const SmoothFunction& f, const Projector& project,
                                      const RVector& x0, const InnerOptions& options = {});

/// Limited-memory BFGS ascent with Armijo backtracking, for unconstrained
/// smooth functions whose domain is signalled by -infinity.
InnerResult lbfgs_ascent(const SmoothFunction& f, const RVector& x0, const InnerOptions& options = {});

struct MMTrace {
  std::vector<double> objective_per_iteration;             // entry 0 is the initial point
  std::vector<double> constraint_violation_per_iteration;  // aligned with the above
  bool converged = false;
  int iterations = 0;
  int inner_failures = 0;
  int rejected_steps = 0;
};

struct MMProblem {
  std::function<double(const RVector&)> objective;
  /// Worst true-constraint violation; <= 0 means feasible. Optional.
  std::function<double(const RVector&)> violation;
  /// Builds the surrogate at the current iterate; `iteration` starts at 0.
  std::function<SmoothFunction(const RVector& x, int iteration)> surrogate;
  /// Optional; identity when empty.
  Projector project;
};

struct MMOptions {
  double tol = 1e-4;
  int max_iter = 100;
  int max_halvings = 30;
  double feasibility_tol = 1e-9;
  InnerOptions inner;
};

struct MMResult {
  RVector x;
  double objective = 0.0;
  MMTrace trace;
};

/// Runs MM from a point feasible for the true constraints (throws
/// InfeasibleError otherwise). Stops when the relative objective change drops
/// below options.tol or after options.max_iter iterations; the trace is
/// non-decreasing by construction.
MMResult mm_solve(const MMProblem& problem, const RVector& init, const MMOptions& options = {});

}  // namespace cran
