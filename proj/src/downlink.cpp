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

#include "cran/downlink.hpp"

#include "cran/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cran {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix principal_submatrix(const CMatrix& m, std::uint32_t mask) {
  const int size = std::popcount(mask);
  CMatrix out(size, size);
  int r = 0;
  for (int i = 0; i < 32 && r < size; ++i) {
    if (!(mask & (1u << i))) continue;
    int c = 0;
    for (int j = 0; j < 32 && c < size; ++j) {
      if (!(mask & (1u << j))) continue;
      out(r, c++) = m(i, j);
    }
    ++r;
  }
  return out;
}

double row_power(const CMatrix& a, int i) { return a.row(i).squaredNorm(); }

// ---------------------------------------------------------------------------
// Optimization on the active BSs in normalized units: every BS has unit power
// budget and every MS unit noise. Backhaul terms are invariant to this scaling.

struct Problem {
  std::vector<int> act;
  CMatrix h;       // K x n normalized channel, row k = h_k^H
  RVector cap;     // n
  RVector w;       // normalized weights (max 1)
  bool multiterminal = false;
  std::vector<std::uint32_t> subsets;
  int n = 0;
  int k = 0;

  Eigen::Index size() const {
    return 2 * static_cast<Eigen::Index>(n) * k + (multiterminal ? n * n : n);
  }
};

struct Point {
  CMatrix a;  // n x K
  CMatrix l;  // n x n lower triangular, positive diagonal
};

Point unpack(const Problem& pr, const RVector& x) {
  Point pt;
  const Eigen::Index nk = static_cast<Eigen::Index>(pr.n) * pr.k;
  pt.a.resize(pr.n, pr.k);
  for (Eigen::Index c = 0; c < pr.k; ++c) {
    for (Eigen::Index r = 0; r < pr.n; ++r) {
      const Eigen::Index idx = c * pr.n + r;
      pt.a(r, c) = cplx(x(idx), x(nk + idx));
    }
  }
  pt.l = CMatrix::Zero(pr.n, pr.n);
  Eigen::Index pos = 2 * nk;
  for (int j = 0; j < pr.n; ++j) pt.l(j, j) = std::exp(x(pos++));
  if (pr.multiterminal) {
    for (int j = 0; j < pr.n; ++j) {
      for (int i = j + 1; i < pr.n; ++i) {
        pt.l(i, j) = cplx(x(pos), x(pos + 1));
        pos += 2;
      }
    }
  }
  return pt;
}

RVector pack(const Problem& pr, const CMatrix& ga, const CMatrix& gl, const CMatrix& l, bool gradient) {
  RVector x(pr.size());
  const Eigen::Index nk = static_cast<Eigen::Index>(pr.n) * pr.k;
  for (Eigen::Index c = 0; c < pr.k; ++c) {
    for (Eigen::Index r = 0; r < pr.n; ++r) {
      const Eigen::Index idx = c * pr.n + r;
      x(idx) = ga(r, c).real();
      x(nk + idx) = ga(r, c).imag();
    }
  }
  Eigen::Index pos = 2 * nk;
  // Diagonal of L is exp(theta): values pack as theta, gradients pick up the chain rule.
  for (int j = 0; j < pr.n; ++j) {
    x(pos++) = gradient ? gl(j, j).real() * l(j, j).real() : std::log(gl(j, j).real());
  }
  if (pr.multiterminal) {
    for (int j = 0; j < pr.n; ++j) {
      for (int i = j + 1; i < pr.n; ++i) {
        x(pos) = gl(i, j).real();
        x(pos + 1) = gl(i, j).imag();
        pos += 2;
      }
    }
  }
  return x;
}

RVector pack_point(const Problem& pr, const Point& pt) { return pack(pr, pt.a, pt.l, pt.l, false); }

struct Evaluated {
  CMatrix y;      // K x K, y(k, l) = h_k^H a_l
  CMatrix z;      // K x n, h_k^H L
  RVector v;      // 1 + h_k^H (A A^H + Omega) h_k
  RVector u;      // v - |y_kk|^2
  RVector d;      // per-BS transmit power
  CMatrix omega;  // L L^H
};

Evaluated evaluate(const Problem& pr, const Point& pt) {
  Evaluated e;
  e.y = pr.h * pt.a;
  e.z = pr.h * pt.l;
  e.v = RVector::Ones(pr.k) + e.y.rowwise().squaredNorm() + e.z.rowwise().squaredNorm();
  e.u = e.v - e.y.diagonal().cwiseAbs2();
  e.omega = pt.l * pt.l.adjoint();
  e.d = pt.a.rowwise().squaredNorm() + e.omega.diagonal().real();
  return e;
}

double true_objective(const Problem& pr, const RVector& x) {
  const Evaluated e = evaluate(pr, unpack(pr, x));
  double acc = 0.0;
  for (int k = 0; k < pr.k; ++k) acc += pr.w(k) * (std::log2(e.v(k)) - std::log2(e.u(k)));
  return acc;
}

double subset_capacity(const Problem& pr, std::uint32_t mask) {
  double c = 0.0;
  for (int j = 0; j < pr.n; ++j) {
    if (mask & (1u << j)) c += pr.cap(j);
  }
  return c;
}

// log2 det of Omega_S, and optionally Omega_S^{-1}; -inf when not PD.
double subset_logdet(const CMatrix& omega, std::uint32_t mask, CMatrix* inverse) {
  const CMatrix sub = principal_submatrix(omega, mask);
  Eigen::LLT<CMatrix> llt(sub);
  if (llt.info() != Eigen::Success) return kNegInf;
  double ld = 0.0;
  for (Eigen::Index i = 0; i < sub.rows(); ++i) {
    const double dii = llt.matrixLLT()(i, i).real();
    if (!(dii > 0.0)) return kNegInf;
    ld += std::log2(dii);
  }
  if (inverse != nullptr) *inverse = llt.solve(CMatrix::Identity(sub.rows(), sub.cols()));
  return 2.0 * ld;
}

double true_violation(const Problem& pr, const RVector& x) {
  const Point pt = unpack(pr, x);
  const Evaluated e = evaluate(pr, pt);
  double worst = (e.d.array() - 1.0).maxCoeff();
  for (std::uint32_t mask : pr.subsets) {
    const double ld = subset_logdet(e.omega, mask, nullptr);
    if (!std::isfinite(ld)) return kInf;
    double g = -ld;
    for (int j = 0; j < pr.n; ++j) {
      if (mask & (1u << j)) g += std::log2(e.d(j));
    }
    worst = std::max(worst, g - subset_capacity(pr, mask));
  }
  return worst;
}

SmoothFunction build_surrogate(const Problem& pr, const RVector& x0, double mu) {
  const Evaluated e0 = evaluate(pr, unpack(pr, x0));
  const RVector u0 = e0.u;
  const RVector d0 = e0.d;
  RVector cap_s(static_cast<Eigen::Index>(pr.subsets.size()));
  for (std::size_t s = 0; s < pr.subsets.size(); ++s) cap_s(static_cast<Eigen::Index>(s)) = subset_capacity(pr, pr.subsets[s]);

  return [&pr, u0, d0, cap_s, mu](const RVector& x, RVector* grad) -> double {
    const Point pt = unpack(pr, x);
    const Evaluated e = evaluate(pr, pt);
    const double ln2 = std::numbers::ln2;

    double value = 0.0;
    for (int k = 0; k < pr.k; ++k) {
      value += pr.w(k) * (std::log2(e.v(k)) - std::log2(u0(k)) - (e.u(k) - u0(k)) / (u0(k) * ln2));
    }

    RVector delta = RVector::Zero(pr.n);
    for (int j = 0; j < pr.n; ++j) {
      const double s = 1.0 - e.d(j);
      if (!(s > 0.0)) return kNegInf;
      value += mu * std::log(s);
      delta(j) -= mu / s;
    }

    CMatrix gamma_omega = CMatrix::Zero(pr.n, pr.n);
    CMatrix inverse;
    for (std::size_t s = 0; s < pr.subsets.size(); ++s) {
      const std::uint32_t mask = pr.subsets[s];
      const double ld = subset_logdet(e.omega, mask, grad != nullptr ? &inverse : nullptr);
      if (!std::isfinite(ld)) return kNegInf;
      double lin = 0.0;
      for (int j = 0; j < pr.n; ++j) {
        if (mask & (1u << j)) lin += std::log2(d0(j)) + (e.d(j) - d0(j)) / (d0(j) * ln2);
      }
      const double slack = cap_s(static_cast<Eigen::Index>(s)) - lin + ld;
      if (!(slack > 0.0)) return kNegInf;
      value += mu * std::log(slack);
      if (grad == nullptr) continue;
      const double coef = mu / slack;
      int r = 0;
      for (int i = 0; i < pr.n; ++i) {
        if (!(mask & (1u << i))) continue;
        delta(i) -= coef / (d0(i) * ln2);
        int c = 0;
        for (int j = 0; j < pr.n; ++j) {
          if (!(mask & (1u << j))) continue;
          gamma_omega(i, j) += coef / ln2 * inverse(r, c++);
        }
        ++r;
      }
    }

    if (grad != nullptr) {
      RVector alpha(pr.k);
      RVector beta(pr.k);
      for (int k = 0; k < pr.k; ++k) {
        beta(k) = pr.w(k) / (u0(k) * ln2);
        alpha(k) = pr.w(k) / (e.v(k) * ln2) - beta(k);
      }
      const CMatrix hh = pr.h.adjoint();  // n x K
      CMatrix inner = alpha.cast<cplx>().asDiagonal() * e.y;
      inner.diagonal() += beta.cast<cplx>().cwiseProduct(e.y.diagonal());
      const CMatrix ga = 2.0 * (hh * inner + delta.cast<cplx>().asDiagonal() * pt.a);
      gamma_omega += hh * alpha.cast<cplx>().asDiagonal() * pr.h;
      gamma_omega.diagonal() += delta.cast<cplx>();
      CMatrix gl = 2.0 * gamma_omega * pt.l;
      *grad = pack(pr, ga, gl, pt.l, true);
    }
    return value;
  };
}

Point default_start(const Problem& pr) {
  Point pt;
  pt.a.resize(pr.n, pr.k);
  for (int c = 0; c < pr.k; ++c) {
    const double nrm = pr.h.row(c).norm();
    for (int r = 0; r < pr.n; ++r) pt.a(r, c) = nrm > 0.0 ? std::conj(pr.h(c, r)) / nrm : cplx(1.0, 0.0);
  }
  pt.l = CMatrix::Zero(pr.n, pr.n);
  for (int j = 0; j < pr.n; ++j) {
    const double share = std::min(0.8, 0.9 * -std::expm1(-pr.cap(j) * std::numbers::ln2));
    const double rp = row_power(pt.a, j);
    pt.a.row(j) *= rp > 0.0 ? std::sqrt(0.99 * share / rp) : 0.0;
    pt.l(j, j) = std::sqrt(0.99 * (1.0 - share));
  }
  return pt;
}

// Two moves that keep feasibility and never lower a rate: shrink Omega until
// a backhaul constraint binds (every g_S decreases with the Omega scale), then
// scale (A, L) jointly until a BS reaches full power (every g_S is invariant).
Point polish(const Problem& pr, Point pt, double tol, MMTrace& trace) {
  double current = true_objective(pr, pack_point(pr, pt));
  const auto feasible_at = [&](double tau) {
    Point q = pt;
    q.l *= std::exp(0.5 * tau);
    return true_violation(pr, pack_point(pr, q)) <= 0.5 * tol;
  };
  for (int round = 0; round < 20; ++round) {
    double lo = -std::numbers::ln2 * (pr.cap.sum() + 64.0);
    double hi = 0.0;
    if (feasible_at(lo)) {
      hi = lo;
    } else {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible_at(mid) ? hi : lo) = mid;
      }
    }
    Point next = pt;
    next.l *= std::exp(0.5 * hi);
    const double load = evaluate(pr, next).d.maxCoeff();
    if (load > 0.0) {
      next.a /= std::sqrt(load);
      next.l /= std::sqrt(load);
    }
    const RVector x = pack_point(pr, next);
    const double value = true_objective(pr, x);
    const double viol = true_violation(pr, x);
    if (!(viol <= tol) || !(value > current)) break;
    trace.objective_per_iteration.push_back(value);
    trace.constraint_violation_per_iteration.push_back(std::max(viol, 0.0));
    const double gain = value - current;
    pt = std::move(next);
    current = value;
    if (gain <= 1e-12 * std::max(std::abs(value), 1.0)) break;
  }
  return pt;
}

}  // namespace

double backhaul_p2p_dl(const DownlinkDesign& design, int bs) {
  const double w = design.omega(bs, bs).real();
  if (!(w > 0.0)) throw std::domain_error("backhaul_p2p_dl: quantization noise power must be positive");
  return std::log2(row_power(design.a, bs) + w) - std::log2(w);
}

double backhaul_mv_dl(const DownlinkDesign& design, std::uint32_t subset) {
  if (subset == 0) throw std::invalid_argument("backhaul_mv_dl: empty subset");
  if (design.num_bs() > 32 || (design.num_bs() < 32 && (subset >> design.num_bs()) != 0)) {
    throw std::out_of_range("backhaul_mv_dl: subset names an unknown BS");
  }
  double acc = 0.0;
  for (int i = 0; i < design.num_bs(); ++i) {
    if (subset & (1u << i)) acc += std::log2(row_power(design.a, i) + design.omega(i, i).real());
  }
  const CMatrix sub = principal_submatrix(design.omega, subset);
  return acc - logdet2(sub);
}

double backhaul_mv_dl(const DownlinkDesign& design, const std::vector<int>& subset) {
  std::uint32_t mask = 0;
  for (int i : subset) {
    if (i < 0 || i >= design.num_bs() || i >= 32) throw std::out_of_range("backhaul_mv_dl: unknown BS");
    mask |= 1u << i;
  }
  return backhaul_mv_dl(design, mask);
}

double rate_dl(const DownlinkDesign& design, const ChannelRealization& ch, int k) {
  if (design.a.rows() != ch.num_bs() || design.a.cols() != ch.num_ms()) {
    throw std::invalid_argument("rate_dl: design does not match the channel");
  }
  const auto h = ch.h_dl.row(k);
  const double noise = ch.noise_dl(k);
  const double q = (h * design.omega * h.adjoint())(0, 0).real();
  const CMatrix y = h * design.a;  // 1 x N_M
  const double all = y.squaredNorm();
  const double own = std::norm(y(0, k));
  const double total = noise + all + q;
  const double rest = noise + (all - own) + q;
  return std::max(std::log2(total) - std::log2(rest), 0.0);
}

RVector rates_dl(const DownlinkDesign& design, const ChannelRealization& ch) {
  RVector r(ch.num_ms());
  for (int k = 0; k < ch.num_ms(); ++k) r(k) = rate_dl(design, ch, k);
  return r;
}

FeasibilityReport feasible_dl(const DownlinkDesign& design, double tol) {
  const int nb = design.num_bs();
  if (nb > kMaxSubsetBs) {
    throw std::length_error("feasible_dl: subset enumeration is limited to " + std::to_string(kMaxSubsetBs) + " BSs");
  }
  FeasibilityReport rep;
  rep.worst_margin = kInf;
  const auto consider = [&](double margin, const std::string& name) {
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.binding = name;
    }
  };

  std::vector<int> act;
  for (int i = 0; i < nb; ++i) {
    ++rep.power_checks;
    const double used = row_power(design.a, i) + design.omega(i, i).real();
    const double limit = design.power_limit(i);
    if (design.capacity(i) > 0.0) {
      act.push_back(i);
      consider((limit - used) / limit, "power BS " + std::to_string(i));
    } else {
      const double leak = row_power(design.a, i) + design.omega.row(i).squaredNorm();
      consider(-leak / limit, "inactive BS " + std::to_string(i) + " transmits");
    }
  }
  if (design.mode == CompressionMode::PointToPoint) {
    CMatrix off = design.omega;
    off.diagonal().setZero();
    const double scale = std::max(design.omega.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    consider(-off.cwiseAbs().maxCoeff() / scale, "omega off-diagonal (point-to-point)");
  }

  const std::uint32_t full = act.empty() ? 0u : ((1u << act.size()) - 1u);
  for (std::uint32_t local = 1; local <= full && full != 0; ++local) {
    std::uint32_t mask = 0;
    double cap = 0.0;
    std::ostringstream name;
    name << "backhaul S={";
    bool first = true;
    for (std::size_t b = 0; b < act.size(); ++b) {
      if (!(local & (1u << b))) continue;
      mask |= 1u << act[b];
      cap += design.capacity(act[b]);
      name << (first ? "" : ",") << act[b];
      first = false;
    }
    name << "}";
    ++rep.subset_checks;
    double g = kInf;
    try {
      g = backhaul_mv_dl(design, mask);
    } catch (const NumericalError&) {
    }
    consider(cap - g, name.str());
  }
  if (rep.worst_margin == kInf) rep.worst_margin = 0.0;
  rep.feasible = rep.worst_margin >= -tol;
  return rep;
}

DownlinkResult optimize_dl(const ChannelRealization& ch, const RVector& capacity, const RVector& power_limit,
                           const RVector& weights, CompressionMode mode, const DownlinkOptions& options,
                           const DownlinkDesign* init) {
  const int nb = ch.num_bs();
  const int nm = ch.num_ms();
  if (capacity.size() != nb || power_limit.size() != nb || weights.size() != nm) {
    throw std::invalid_argument("optimize_dl: inputs do not match the channel");
  }
  if (nb > kMaxSubsetBs) throw std::length_error("optimize_dl: at most 16 BSs are supported");
  if ((weights.array() < 0.0).any() || (capacity.array() < 0.0).any() || !(power_limit.array() > 0.0).all()) {
    throw std::domain_error("optimize_dl: weights, capacities must be >= 0 and power limits > 0");
  }

  Problem pr;
  pr.multiterminal = mode == CompressionMode::Multiterminal;
  for (int i = 0; i < nb; ++i) {
    if (capacity(i) > 0.0) pr.act.push_back(i);
  }
  pr.n = static_cast<int>(pr.act.size());
  pr.k = nm;

  DownlinkResult result;
  DownlinkDesign& d = result.design;
  d.a = CMatrix::Zero(nb, nm);
  d.omega = CMatrix::Zero(nb, nb);
  d.capacity = capacity;
  d.power_limit = power_limit;
  d.mode = mode;
  const double wmax = nm > 0 ? weights.maxCoeff() : 0.0;
  if (pr.n == 0 || wmax <= 0.0) {
    // Nothing to optimize: tiny independent quantization noise on active BSs.
    for (int i : pr.act) d.omega(i, i) = 1e-3 * power_limit(i) * std::exp2(-capacity(i));
    result.rates = rates_dl(d, ch);
    result.objective = weights.dot(result.rates);
    result.trace.converged = true;
    return result;
  }

  pr.h.resize(nm, pr.n);
  pr.cap.resize(pr.n);
  for (int j = 0; j < pr.n; ++j) {
    const int i = pr.act[static_cast<std::size_t>(j)];
    pr.cap(j) = capacity(i);
    for (int k = 0; k < nm; ++k) pr.h(k, j) = ch.h_dl(k, i) * std::sqrt(power_limit(i) / ch.noise_dl(k));
  }
  pr.w = weights / wmax;
  if (pr.multiterminal) {
    for (std::uint32_t m = 1; m < (1u << pr.n); ++m) pr.subsets.push_back(m);
  } else {
    for (int j = 0; j < pr.n; ++j) pr.subsets.push_back(1u << j);
  }

  // Starting point.
  Point start;
  bool from_init = false;
  if (init != nullptr) {
    if (init->a.rows() != nb || init->a.cols() != nm || init->omega.rows() != nb) {
      throw std::invalid_argument("optimize_dl: initial design has wrong dimensions");
    }
    start.a.resize(pr.n, nm);
    CMatrix om(pr.n, pr.n);
    for (int r = 0; r < pr.n; ++r) {
      const int i = pr.act[static_cast<std::size_t>(r)];
      start.a.row(r) = init->a.row(i) / std::sqrt(power_limit(i));
      for (int c = 0; c < pr.n; ++c) {
        const int j = pr.act[static_cast<std::size_t>(c)];
        om(r, c) = init->omega(i, j) / std::sqrt(power_limit(i) * power_limit(j));
      }
    }
    if (!pr.multiterminal) om = CMatrix(om.diagonal().asDiagonal());
    Eigen::LLT<CMatrix> llt(hermitian_part(om));
    if (llt.info() != Eigen::Success) throw InfeasibleError("optimize_dl: initial Omega is not positive definite");
    start.l = llt.matrixL();
    // Cholesky of a Hermitian PD matrix has a real positive diagonal; drop round-off.
    for (int j = 0; j < pr.n; ++j) start.l(j, j) = cplx(start.l(j, j).real(), 0.0);
    from_init = true;
  } else {
    start = default_start(pr);
  }
  RVector x0 = pack_point(pr, start);
  const double init_objective = true_objective(pr, x0);
  double init_violation = true_violation(pr, x0);
  if (!from_init || init_violation <= options.mm.feasibility_tol) {
    // Shrink the precoder until strictly feasible: gently for a given start,
    // by halving for the default one.
    const double factor = from_init ? std::sqrt(0.999) : std::sqrt(0.5);
    Point inner = start;
    RVector xi = x0;
    for (int it = 0; it < 200 && !(true_violation(pr, xi) < 0.0); ++it) {
      inner.a *= it < 20 ? factor : std::sqrt(0.5);
      xi = pack_point(pr, inner);
    }
    if (!from_init) start = inner;
    x0 = xi;
    init_violation = true_violation(pr, x0);
  }
  if (init_violation > options.mm.feasibility_tol) {
    DownlinkDesign probe = d;
    for (int r = 0; r < pr.n; ++r) {
      const int i = pr.act[static_cast<std::size_t>(r)];
      probe.a.row(i) = start.a.row(r) * std::sqrt(power_limit(i));
    }
    const CMatrix om = start.l * start.l.adjoint();
    for (int r = 0; r < pr.n; ++r) {
      for (int c = 0; c < pr.n; ++c) {
        const int i = pr.act[static_cast<std::size_t>(r)];
        const int j = pr.act[static_cast<std::size_t>(c)];
        probe.omega(i, j) = om(r, c) * std::sqrt(power_limit(i) * power_limit(j));
      }
    }
    const FeasibilityReport rep = feasible_dl(probe);
    throw InfeasibleError("optimize_dl: no feasible starting point (binding: " + rep.binding + ")");
  }

  MMProblem problem;
  problem.objective = [&pr](const RVector& x) { return true_objective(pr, x); };
  problem.violation = [&pr](const RVector& x) { return true_violation(pr, x); };
  problem.surrogate = [&pr, &options](const RVector& x, int iteration) {
    const double mu = std::max(options.barrier_floor, options.barrier_initial * std::pow(options.barrier_decay, iteration));
    return build_surrogate(pr, x, mu);
  };
  MMResult mm = mm_solve(problem, x0, options.mm);
  result.trace = std::move(mm.trace);
  result.warning = !result.trace.converged;

  Point best = unpack(pr, mm.x);
  if (from_init && init_objective > mm.objective) {
    best = start;
    result.trace.objective_per_iteration.push_back(init_objective);
    result.trace.constraint_violation_per_iteration.push_back(std::max(true_violation(pr, pack_point(pr, start)), 0.0));
  }
  best = polish(pr, std::move(best), options.mm.feasibility_tol, result.trace);
  const CMatrix om = best.l * best.l.adjoint();
  for (int r = 0; r < pr.n; ++r) {
    const int i = pr.act[static_cast<std::size_t>(r)];
    d.a.row(i) = best.a.row(r) * std::sqrt(power_limit(i));
    for (int c = 0; c < pr.n; ++c) {
      const int j = pr.act[static_cast<std::size_t>(c)];
      d.omega(i, j) = om(r, c) * std::sqrt(power_limit(i) * power_limit(j));
    }
  }
  if (!pr.multiterminal) d.omega = CMatrix(d.omega.diagonal().asDiagonal());
  result.rates = rates_dl(d, ch);
  result.objective = weights.dot(result.rates);
  return result;
}

}  // namespace cran
