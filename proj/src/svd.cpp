// Copyright 2026 The lrml Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "lrml/errors.hpp"
#include "lrml/matrix.hpp"

namespace lrml {
namespace {

// Residual tolerance for accepting a Ritz triplet, relative to sigma_1.
constexpr double kRitzTolerance = 1e-13;

// Fixed seed for the Lanczos start vector, so results are reproducible.
constexpr std::uint64_t kStartSeed = 0x6c726d6cULL;

SvdFactors dense_svd(const Matrix& x) {
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalFailure("dense SVD did not converge on a " +
                               std::to_string(x.rows()) + "x" +
                               std::to_string(x.cols()) + " matrix",
                           0);
  SvdFactors f{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  canonicalize_signs(f);
  return f;
}

SvdFactors leading(const SvdFactors& f, Index r) {
  return {f.u.leftCols(r), f.sigma.head(r), f.v.leftCols(r)};
}

// Two passes of classical Gram-Schmidt against the first k columns of basis.
void reorthogonalize(Vector& w, const Matrix& basis, Index k) {
  if (k == 0) return;
  for (int pass = 0; pass < 2; ++pass)
    w.noalias() -= basis.leftCols(k) * (basis.leftCols(k).transpose() * w);
}

// Golub-Kahan-Lanczos bidiagonalization A P_k = Q_k B_k with B_k upper
// bidiagonal. The Krylov space grows until the r leading Ritz triplets have
// residual beta_k |x_{k,i}| <= tol * sigma_1. Falls back to the dense
// factorization if the space would exceed half the matrix or on breakdown.
SvdFactors lanczos_svd(const Matrix& a, Index r) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index kmax = std::min(m, n);
  const Index cap = std::max<Index>(std::min<Index>(kmax, 2 * r + 16),
                                    std::min<Index>(kmax, kmax / 2));

  Matrix p_basis(n, cap + 1);
  Matrix q_basis(m, cap);
  Vector alpha(cap);
  Vector beta(cap);

  std::mt19937_64 gen(kStartSeed);
  std::normal_distribution<double> normal;
  Vector p(n);
  for (Index i = 0; i < n; ++i) p[i] = normal(gen);
  p.normalize();
  p_basis.col(0) = p;

  Vector w(m);
  Vector z(n);
  Index k = 0;
  const Index first_check = std::min(cap, r + 8);
  Index next_check = first_check;

  while (k < cap) {
    // q_k = A p_k - beta_{k-1} q_{k-1}
    w.noalias() = a * p_basis.col(k);
    if (k > 0) w -= beta[k - 1] * q_basis.col(k - 1);
    reorthogonalize(w, q_basis, k);
    alpha[k] = w.norm();
    const double scale = std::max(alpha.head(k + 1).maxCoeff(), 1e-300);
    if (alpha[k] <= 1e-14 * scale) break;
    q_basis.col(k) = w / alpha[k];

    // p_{k+1} = A^T q_k - alpha_k p_k
    z.noalias() = a.transpose() * q_basis.col(k);
    z -= alpha[k] * p_basis.col(k);
    reorthogonalize(z, p_basis, k + 1);
    beta[k] = z.norm();
    ++k;
    const bool exhausted = beta[k - 1] <= 1e-14 * scale || k == kmax;
    if (!exhausted) p_basis.col(k) = z / beta[k - 1];

    if (k < r) {
      if (exhausted) break;
      continue;
    }
    if (!exhausted && k < first_check) continue;
    // Check at geometrically spaced sizes so the small SVDs stay cheap.
    if (!exhausted && k < cap && k < next_check) continue;
    next_check = k + std::max<Index>(4, k / 4);

    Matrix b = Matrix::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
      b(i, i) = alpha[i];
      if (i + 1 < k) b(i, i + 1) = beta[i];
    }
    Eigen::BDCSVD<Matrix> small(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& s = small.singularValues();
    const double tol = kRitzTolerance * std::max(s[0], 1e-300);
    const double tail = exhausted ? 0.0 : beta[k - 1];
    bool converged = true;
    for (Index i = 0; i < r; ++i)
      if (tail * std::abs(small.matrixU()(k - 1, i)) > tol) converged = false;
    if (!converged) continue;

    SvdFactors f;
    f.sigma = s.head(r);
    f.u = q_basis.leftCols(k) * small.matrixU().leftCols(r);
    f.v = p_basis.leftCols(k) * small.matrixV().leftCols(r);
    canonicalize_signs(f);
    return f;
  }
  // Invariant subspace smaller than r, or no convergence within the cap.
  return leading(dense_svd(a), r);
}

}  // namespace

SvdFactors svd_full(const Matrix& x) {
  require_finite(x, "svd_full");
  return dense_svd(x);
}

SvdFactors svd_truncated(const Matrix& x, Index r, SvdMethod method) {
  require_finite(x, "svd_truncated");
  const Index kmax = std::min(x.rows(), x.cols());
  if (r < 1 || r > kmax)
    throw InvalidArgument("svd_truncated: rank " + std::to_string(r) +
                          " outside [1, " + std::to_string(kmax) + "]");
  if (method == SvdMethod::kAuto)
    method = (kmax <= kDenseSvdLimit || 3 * r > kmax) ? SvdMethod::kDense
                                                      : SvdMethod::kLanczos;
  if (method == SvdMethod::kDense) return leading(dense_svd(x), r);
  return lanczos_svd(x, r);
}

}  // namespace lrml
