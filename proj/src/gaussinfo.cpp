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

#include "cran/gaussinfo.hpp"

#include "cran/errors.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cran {

namespace {

std::atomic<std::uint64_t> g_ridge_count{0};

double smallest_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

[[noreturn]] void throw_not_pd(const char* what, const CMatrix& m) {
  std::ostringstream os;
  os << what << ": matrix is not positive definite (smallest eigenvalue "
     << smallest_eigenvalue(m) << ", dimension " << m.rows() << ")";
  throw NumericalError(os.str());
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

CMatrix hermitian_part(const CMatrix& m) {
  require_square(m, "hermitian_part");
  return (m + m.adjoint()) * 0.5;
}

CMatrix project_psd(const CMatrix& m) {
  const CMatrix h = hermitian_part(m);
  if (h.size() == 0) return h;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  if (scale == 0.0) return h;
  if (ev.minCoeff() < -kHermitianTol * scale) {
    std::ostringstream os;
    os << "project_psd: eigenvalue " << ev.minCoeff() << " is below tolerance";
    throw NumericalError(os.str());
  }
  if (ev.minCoeff() >= 0.0) return h;
  ev = ev.cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double logdet2(const CMatrix& m) {
  require_square(m, "logdet2");
  const CMatrix h = hermitian_part(m);
  Eigen::LLT<CMatrix> llt(h);
  if (llt.info() != Eigen::Success) throw_not_pd("logdet2", h);
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) throw_not_pd("logdet2", h);
    acc += std::log2(d);
  }
  return 2.0 * acc;
}

CMatrix logdet2_gradient(const CMatrix& m) {
  require_square(m, "logdet2_gradient");
  const CMatrix h = hermitian_part(m);
  Eigen::LLT<CMatrix> llt(h);
  if (llt.info() != Eigen::Success) throw_not_pd("logdet2_gradient", h);
  CMatrix inv = llt.solve(CMatrix::Identity(h.rows(), h.cols()));
  return hermitian_part(inv) / std::numbers::ln2;
}

CMatrix conditional_cov(const CMatrix& sxx, const CMatrix& sxy, const CMatrix& syy) {
  require_square(sxx, "conditional_cov");
  require_square(syy, "conditional_cov");
  if (sxy.rows() != sxx.rows() || sxy.cols() != syy.rows()) {
    throw std::invalid_argument("conditional_cov: dimension mismatch");
  }
  if (syy.rows() == 0) return project_psd(sxx);

  CMatrix y = hermitian_part(syy);
  const double trace = y.diagonal().real().sum();
  if (!(trace > 0.0)) throw_not_pd("conditional_cov", y);

  Eigen::LLT<CMatrix> llt(y);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    // Pivot ratio as a cheap conditioning proxy.
    const RVector d = llt.matrixLLT().diagonal().real();
    const double ratio = d.minCoeff() / d.maxCoeff();
    ok = ratio * ratio > 1e-14;
  }
  if (!ok) {
    const double lambda_min = smallest_eigenvalue(y);
    if (lambda_min < -kHermitianTol * trace) throw_not_pd("conditional_cov", y);
    y.diagonal().array() += kRidgeScale * trace / static_cast<double>(y.rows());
    g_ridge_count.fetch_add(1, std::memory_order_relaxed);
    llt.compute(y);
    if (llt.info() != Eigen::Success) throw_not_pd("conditional_cov", y);
  }
  const CMatrix gain = llt.solve(sxy.adjoint());  // Syy^{-1} Sxy^H
  return project_psd(sxx - sxy * gain);
}

std::uint64_t ridge_count() { return g_ridge_count.load(std::memory_order_relaxed); }

CMatrix received_cov_ul(const RVector& p, const CMatrix& h, const RVector& noise,
                        const std::vector<bool>& excluded) {
  if (p.size() != h.cols() || noise.size() != h.rows()) {
    throw std::invalid_argument("received_cov_ul: dimension mismatch");
  }
  if (!excluded.empty() && static_cast<Eigen::Index>(excluded.size()) != h.cols()) {
    throw std::invalid_argument("received_cov_ul: exclusion mask has wrong length");
  }
  if ((p.array() < 0.0).any()) {
    throw std::domain_error("received_cov_ul: negative transmit power");
  }
  CMatrix cov = CMatrix::Zero(h.rows(), h.rows());
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    if (!excluded.empty() && excluded[static_cast<std::size_t>(j)]) continue;
    if (p(j) == 0.0) continue;
    cov.noalias() += p(j) * h.col(j) * h.col(j).adjoint();
  }
  cov.diagonal() += noise.cast<cplx>();
  return cov;
}

}  // namespace cran
