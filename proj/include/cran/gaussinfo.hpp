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

// Gaussian-information kernels over complex covariance matrices. All
// information quantities are in bits (log base 2).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace cran {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kRidgeScale = 1e-12;

/// (M + M^H) / 2.
CMatrix hermitian_part(const CMatrix& m);

/// Symmetrizes and clamps eigenvalues above -kHermitianTol to zero. Throws
/// NumericalError if an eigenvalue is below -kHermitianTol (relative to the
/// largest magnitude eigenvalue).
CMatrix project_psd(const CMatrix& m);

/// log2 det(M) for a Hermitian positive definite M, via Cholesky.
/// Throws NumericalError naming the smallest eigenvalue if M is singular or
/// indefinite.
double logdet2(const CMatrix& m);

/// Gradient of logdet2 with respect to a Hermitian perturbation:
/// d logdet2(M)[E] = Re tr(G E) with G = M^{-1} / ln 2.
CMatrix logdet2_gradient(const CMatrix& m);

/// Schur complement Sxx - Sxy Syy^{-1} Sxy^H, projected back to Hermitian PSD.
///
/// A nearly singular Syy is regularized with a ridge of kRidgeScale * tr/dim
/// (see ridge_count()). A zero or indefinite Syy throws NumericalError.
CMatrix conditional_cov(const CMatrix& sxx, const CMatrix& sxy, const CMatrix& syy);

/// Number of times conditional_cov had to add a ridge, process-wide.
std::uint64_t ridge_count();

/// Covariance of y = H x + z given x_S, with x ~ CN(0, diag(p)) and
/// z ~ CN(0, diag(noise)):
///   sum_{j not in S} p_j H(:,j) H(:,j)^H + diag(noise).
/// `excluded` may be empty (S = {}) or have one flag per column of H.
CMatrix received_cov_ul(const RVector& p, const CMatrix& h, const RVector& noise,
                        const std::vector<bool>& excluded = {});

}  // namespace cran
