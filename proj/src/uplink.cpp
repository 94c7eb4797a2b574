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

#include "cran/uplink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cran {

namespace {

std::vector<int> active_set(const RVector& capacity) {
  std::vector<int> act;
  for (Eigen::Index i = 0; i < capacity.size(); ++i) {
    if (capacity(i) > 0.0) act.push_back(static_cast<int>(i));
  }
  return act;
}

CMatrix select_rows(const CMatrix& m, const std::vector<int>& rows) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
  return out;
}

RVector select(const RVector& v, const std::vector<int>& idx) {
  RVector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) out(static_cast<Eigen::Index>(r)) = v(idx[r]);
  return out;
}

void check_dims(const UplinkDesign& d, const ChannelRealization& ch) {
  if (d.p.size() != ch.num_ms() || d.omega.size() != ch.num_bs() || d.capacity.size() != ch.num_bs()) {
    throw std::invalid_argument("uplink design does not match the channel dimensions");
  }
}

double description_rate(double omega, double variance) {
  if (!(omega > 0.0)) throw std::domain_error("uplink backhaul: quantization noise power must be positive");
  return std::log2(omega + variance) - std::log2(omega);
}

// Step-1 objective on the normalized channel (unit noise, unit power box):
// sum_k w_k [logdet2(I + H diag(t) H^H) - logdet2(I + sum_{j != k} t_j h_j h_j^H)].
double ideal_objective(const CMatrix& h, const RVector& w, const RVector& t) {
  const RVector ones = RVector::Ones(h.rows());
  const double full = logdet2(received_cov_ul(t, h, ones));
  double acc = 0.0;
  std::vector<bool> excl(static_cast<std::size_t>(h.cols()), false);
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    if (w(k) == 0.0) continue;
    excl[static_cast<std::size_t>(k)] = true;
    acc += w(k) * (full - logdet2(received_cov_ul(t, h, ones, excl)));
    excl[static_cast<std::size_t>(k)] = false;
  }
  return acc;
}

SmoothFunction ideal_surrogate(const CMatrix& h, const RVector& w, const RVector& t0) {
  const Eigen::Index nm = h.cols();
  const RVector ones = RVector::Ones(h.rows());
  // Tangent of each subtracted log-det at t0, reduced to its coefficients on t.
  RMatrix coeff = RMatrix::Zero(nm, nm);  // coeff(k, j) = h_j^H slope_k h_j, j != k
  double constant = 0.0;
  std::vector<bool> excl(static_cast<std::size_t>(nm), false);
  for (Eigen::Index k = 0; k < nm; ++k) {
    if (w(k) == 0.0) continue;
    excl[static_cast<std::size_t>(k)] = true;
    const LogdetTangent tangent(received_cov_ul(t0, h, ones, excl));
    excl[static_cast<std::size_t>(k)] = false;
    constant += w(k) * tangent.anchor_value();
    for (Eigen::Index j = 0; j < nm; ++j) {
      if (j == k) continue;
      coeff(k, j) = (h.col(j).adjoint() * tangent.slope() * h.col(j))(0, 0).real();
    }
  }
  const double wsum = w.sum();
  // Linear part: sum_k w_k sum_j coeff(k, j) (t_j - t0_j).
  const RVector lin = coeff.transpose() * w;
  const double lin_at_anchor = lin.dot(t0);

  return [h, ones, wsum, lin, lin_at_anchor, constant](const RVector& t, RVector* grad) -> double {
    if ((t.array() < 0.0).any()) return -std::numeric_limits<double>::infinity();
    const CMatrix cov = received_cov_ul(t, h, ones);
    Eigen::LLT<CMatrix> llt(cov);
    if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
    double ld = 0.0;
    for (Eigen::Index i = 0; i < cov.rows(); ++i) ld += std::log2(llt.matrixLLT()(i, i).real());
    ld *= 2.0;
    if (grad != nullptr) {
      const CMatrix sol = llt.solve(h);  // cov^{-1} H
      grad->resize(t.size());
      for (Eigen::Index j = 0; j < t.size(); ++j) {
        const double quad = (h.col(j).adjoint() * sol.col(j))(0, 0).real();
        (*grad)(j) = wsum * quad / std::numbers::ln2 - lin(j);
      }
    }
    return wsum * ld - (constant + lin.dot(t) - lin_at_anchor);
  };
}

}  // namespace

const char* to_string(CompressionMode mode) {
  return mode == CompressionMode::PointToPoint ? "point_to_point" : "multiterminal";
}

double conditional_variance_ul(const RVector& p, const ChannelRealization& ch, const RVector& omega,
                               const std::vector<int>& side, int target) {
  const auto row = ch.h_ul.row(target);
  if (side.empty()) {
    double v = ch.noise_ul(target);
    for (Eigen::Index k = 0; k < p.size(); ++k) v += p(k) * std::norm(row(k));
    return v;
  }
  const CMatrix sx = p.cast<cplx>().asDiagonal();
  const CMatrix hs = select_rows(ch.h_ul, side);
  const CMatrix sxy = sx * hs.adjoint();
  CMatrix syy = hs * sx * hs.adjoint();
  for (std::size_t j = 0; j < side.size(); ++j) {
    syy(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += ch.noise_ul(side[j]) + omega(side[j]);
  }
  const CMatrix sx_given = conditional_cov(sx, sxy, syy);
  return (row * sx_given * row.adjoint())(0, 0).real() + ch.noise_ul(target);
}

double backhaul_p2p(const UplinkDesign& design, const ChannelRealization& ch, int bs) {
  check_dims(design, ch);
  return description_rate(design.omega(bs), conditional_variance_ul(design.p, ch, design.omega, {}, bs));
}

double backhaul_wz(const UplinkDesign& design, const ChannelRealization& ch, int position) {
  check_dims(design, ch);
  if (position < 0 || position >= static_cast<int>(design.order.size())) {
    throw std::out_of_range("backhaul_wz: position outside the decompression order");
  }
  const std::vector<int> side(design.order.begin(), design.order.begin() + position);
  const int bs = design.order[static_cast<std::size_t>(position)];
  return description_rate(design.omega(bs), conditional_variance_ul(design.p, ch, design.omega, side, bs));
}

RVector omega_closed_form(const RVector& p, const std::vector<int>& order, const RVector& capacity,
                          const ChannelRealization& ch, CompressionMode mode) {
  RVector omega = RVector::Zero(ch.num_bs());
  std::vector<int> side;
  for (int bs : order) {
    if (!(capacity(bs) > 0.0)) {
      throw std::domain_error("omega_closed_form: BS " + std::to_string(bs) + " has no backhaul capacity");
    }
    const double var = conditional_variance_ul(p, ch, omega, mode == CompressionMode::Multiterminal ? side : std::vector<int>{}, bs);
    omega(bs) = var / std::expm1(capacity(bs) * std::numbers::ln2);
    side.push_back(bs);
  }
  return omega;
}

double rate_ul(const UplinkDesign& design, const ChannelRealization& ch, int k) {
  check_dims(design, ch);
  const std::vector<int> act = active_set(design.capacity);
  if (act.empty() || design.p(k) == 0.0) return 0.0;
  const CMatrix h = select_rows(ch.h_ul, act);
  const RVector noise = select(ch.noise_ul, act) + select(design.omega, act);
  std::vector<bool> excl(static_cast<std::size_t>(ch.num_ms()), false);
  const double full = logdet2(received_cov_ul(design.p, h, noise));
  excl[static_cast<std::size_t>(k)] = true;
  const double rest = logdet2(received_cov_ul(design.p, h, noise, excl));
  return std::max(full - rest, 0.0);
}

RVector rates_ul(const UplinkDesign& design, const ChannelRealization& ch) {
  RVector r(ch.num_ms());
  for (int k = 0; k < ch.num_ms(); ++k) r(k) = rate_ul(design, ch, k);
  return r;
}

std::vector<int> decompression_order(const RVector& p, const ChannelRealization& ch, const RVector& capacity) {
  std::vector<int> macros;
  std::vector<int> picos;
  for (int i = 0; i < ch.num_bs(); ++i) {
    if (!(capacity(i) > 0.0)) continue;
    (ch.bs_kind.at(static_cast<std::size_t>(i)) == NodeKind::MacroSector ? macros : picos).push_back(i);
  }
  const RVector zero = RVector::Zero(ch.num_bs());
  std::vector<double> power(static_cast<std::size_t>(ch.num_bs()), 0.0);
  for (int i : macros) power[static_cast<std::size_t>(i)] = conditional_variance_ul(p, ch, zero, {}, i);
  std::stable_sort(macros.begin(), macros.end(), [&](int a, int b) {
    return power[static_cast<std::size_t>(a)] > power[static_cast<std::size_t>(b)];
  });
  macros.insert(macros.end(), picos.begin(), picos.end());
  return macros;
}

UplinkResult optimize_ul(const ChannelRealization& ch, const RVector& capacity, const RVector& weights,
                         CompressionMode mode, const UplinkOptions& options) {
  const int nm = ch.num_ms();
  if (capacity.size() != ch.num_bs() || weights.size() != nm) {
    throw std::invalid_argument("optimize_ul: capacity/weights do not match the channel");
  }
  if ((weights.array() < 0.0).any() || (capacity.array() < 0.0).any()) {
    throw std::domain_error("optimize_ul: weights and capacities must be non-negative");
  }

  UplinkResult result;
  result.design.capacity = capacity;
  result.design.mode = mode;
  const std::vector<int> act = active_set(capacity);
  const RVector pmax = ch.ms_max_power_w;
  RVector t = RVector::Ones(nm);

  const double wmax = weights.size() > 0 ? weights.maxCoeff() : 0.0;
  if (!act.empty() && wmax > 0.0) {
    CMatrix h = select_rows(ch.h_ul, act);
    for (std::size_t j = 0; j < act.size(); ++j) h.row(static_cast<Eigen::Index>(j)) /= std::sqrt(ch.noise_ul(act[j]));
    for (int k = 0; k < nm; ++k) h.col(k) *= std::sqrt(pmax(k));
    const RVector w = weights / wmax;

    MMProblem problem;
    problem.objective = [&](const RVector& x) { return ideal_objective(h, w, x); };
    problem.surrogate = [&](const RVector& x, int) { return ideal_surrogate(h, w, x); };
    problem.project = box_projector(RVector::Zero(nm), RVector::Ones(nm));
    MMResult mm = mm_solve(problem, t, options.mm);
    t = mm.x;
    result.trace = std::move(mm.trace);
    result.warning = !result.trace.converged;
  }

  UplinkDesign& d = result.design;
  d.p = t.cwiseProduct(pmax);
  d.omega = RVector::Zero(ch.num_bs());
  d.order = decompression_order(d.p, ch, capacity);

  // Ideal backhaul: rate_ul with zero quantization noise.
  result.ideal_rates = rates_ul(d, ch);
  result.ideal_objective = weights.dot(result.ideal_rates);

  d.omega = omega_closed_form(d.p, d.order, capacity, ch, mode);
  result.rates = rates_ul(d, ch);
  result.objective = weights.dot(result.rates);
  return result;
}

}  // namespace cran
