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

// Dense matrices, norms, proximal operators and SVD.
//
// `Matrix` is Eigen's column-major dynamic matrix: entry (i, j) lives at
// data()[i + j * rows()]. Every function here is pure.

#ifndef LRML_MATRIX_HPP_
#define LRML_MATRIX_HPP_

#include <Eigen/Dense>
#include <span>
#include <string_view>

namespace lrml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline std::span<const double> flat(const Matrix& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}
inline std::span<double> flat(Matrix& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}

// Thin SVD X = U diag(sigma) V^T with k columns.
//
// sigma is non-increasing and non-negative. The sign of each (u_i, v_i) pair
// is fixed so that the largest-magnitude entry of u_i is positive (first one
// on ties).
struct SvdFactors {
  Matrix u;
  Vector sigma;
  Matrix v;

  Index size() const { return sigma.size(); }
  Matrix reconstruct() const;
};

enum class SvdMethod {
  kAuto,     // dense up to kDenseSvdLimit, Lanczos above
  kDense,    // bidiagonalization + divide and conquer on the whole matrix
  kLanczos,  // Golub-Kahan-Lanczos with full reorthogonalization
};

inline constexpr Index kDenseSvdLimit = 256;

// Throws InvalidArgument if x is empty or holds NaN/Inf.
void require_finite(const Matrix& x, std::string_view what);

Matrix soft_threshold(const Matrix& x, double tau);

SvdFactors svd_full(const Matrix& x);

// Leading r singular triplets, 1 <= r <= min(rows, cols).
SvdFactors svd_truncated(const Matrix& x, Index r,
                         SvdMethod method = SvdMethod::kAuto);

struct Thresholded {
  Matrix value;
  Index rank = 0;  // number of sigma_i > tau
};

// U S_tau[Sigma] V^T.
Thresholded svt(const Matrix& x, double tau);
Thresholded svt(const SvdFactors& f, double tau);

struct Norms {
  double nuclear = 0.0;
  double l1 = 0.0;
  double frobenius = 0.0;
  double spectral = 0.0;
};

Norms norms(const Matrix& x);
double nuclear_norm(const Matrix& x);
double spectral_norm(const Matrix& x);
double l1_norm(const Matrix& x);

// Count of sigma_i > max(m, n) * eps * sigma_1.
Index numerical_rank(const Matrix& x);
Index numerical_rank(const Vector& sigma, Index rows, Index cols);

// Flips (u_i, v_i) pairs into the canonical sign convention.
void canonicalize_signs(SvdFactors& f);

}  // namespace lrml

#endif  // LRML_MATRIX_HPP_
