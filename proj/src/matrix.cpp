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

#include "lrml/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lrml/errors.hpp"
#include "lrml/kernels.hpp"

namespace lrml {

Matrix SvdFactors::reconstruct() const {
  return u * sigma.asDiagonal() * v.transpose();
}

void require_finite(const Matrix& x, std::string_view what) {
  if (x.size() == 0)
    throw InvalidArgument(std::string(what) + ": matrix is empty");
  if (!x.allFinite())
    throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
}

Matrix soft_threshold(const Matrix& x, double tau) {
  if (!(tau >= 0.0))
    throw InvalidArgument("soft_threshold: tau must be >= 0, got " +
                          std::to_string(tau));
  Matrix out(x.rows(), x.cols());
  kernels::parallel::soft_threshold(flat(x), tau, flat(out));
  return out;
}

Thresholded svt(const SvdFactors& f, double tau) {
  if (!(tau >= 0.0))
    throw InvalidArgument("svt: tau must be >= 0, got " + std::to_string(tau));
  Index rank = 0;
  while (rank < f.size() && f.sigma[rank] > tau) ++rank;
  Thresholded out;
  out.rank = rank;
  if (rank == 0) {
    out.value = Matrix::Zero(f.u.rows(), f.v.rows());
    return out;
  }
  const Vector shrunk = f.sigma.head(rank).array() - tau;
  out.value = f.u.leftCols(rank) * shrunk.asDiagonal() *
              f.v.leftCols(rank).transpose();
  return out;
}

Thresholded svt(const Matrix& x, double tau) {
  if (!(tau >= 0.0))
    throw InvalidArgument("svt: tau must be >= 0, got " + std::to_string(tau));
  return svt(svd_full(x), tau);
}

double l1_norm(const Matrix& x) { return kernels::parallel::abs_sum(flat(x)); }

double nuclear_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return svd_full(x).sigma.sum();
}

double spectral_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return svd_truncated(x, 1).sigma[0];
}

Norms norms(const Matrix& x) {
  Norms n;
  n.l1 = l1_norm(x);
  n.frobenius = std::sqrt(kernels::parallel::sum_squares(flat(x)));
  if (x.size() > 0) {
    const SvdFactors f = svd_full(x);
    n.nuclear = f.sigma.sum();
    n.spectral = f.sigma[0];
  }
  return n;
}

Index numerical_rank(const Vector& sigma, Index rows, Index cols) {
  if (sigma.size() == 0 || sigma[0] <= 0.0) return 0;
  const double tol = static_cast<double>(std::max(rows, cols)) *
                     std::numeric_limits<double>::epsilon() * sigma[0];
  Index r = 0;
  while (r < sigma.size() && sigma[r] > tol) ++r;
  return r;
}

Index numerical_rank(const Matrix& x) {
  if (x.size() == 0) return 0;
  return numerical_rank(svd_full(x).sigma, x.rows(), x.cols());
}

void canonicalize_signs(SvdFactors& f) {
  for (Index i = 0; i < f.size(); ++i) {
    Index arg = 0;
    double best = -1.0;
    for (Index r = 0; r < f.u.rows(); ++r) {
      const double mag = std::abs(f.u(r, i));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (f.u(arg, i) < 0.0) {
      f.u.col(i) = -f.u.col(i);
      f.v.col(i) = -f.v.col(i);
    }
  }
}

}  // namespace lrml
