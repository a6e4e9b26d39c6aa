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
// Independent reference computations for tests. Nothing here calls the
// library code under test except for plain Eigen dense algebra.

#ifndef LRML_TESTS_ORACLES_HPP_
#define LRML_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix random_matrix(Eigen::Index m, Eigen::Index n,
                            std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix x(m, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < m; ++i) x(i, j) = g(rng);
  return x;
}

// Singular values through the eigenvalues of X^T X (or X X^T), a route
// independent of the SVD code under test. Accurate to roughly sqrt(eps)
// relative for tiny values, so use it for moderate-precision checks.
inline Vector singular_values_eig(const Matrix& x) {
  const Matrix g = x.cols() <= x.rows() ? Matrix(x.transpose() * x)
                                        : Matrix(x * x.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  Vector ev = eig.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = std::sqrt(std::max(ev[i], 0.0));
  return ev;
}

// Singular values by one-sided Jacobi rotations; slow but fully accurate.
inline Vector singular_values_jacobi(Matrix a) {
  if (a.rows() < a.cols()) a.transposeInPlace();
  const Eigen::Index n = a.cols();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const double gamma = a.col(p).dot(a.col(q));
        if (std::abs(gamma) <= 1e-300) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Vector ap = a.col(p);
        a.col(p) = c * ap - s * a.col(q);
        a.col(q) = s * ap + c * a.col(q);
      }
    if (off < 1e-15) break;
  }
  Vector sv(n);
  for (Eigen::Index j = 0; j < n; ++j) sv[j] = a.col(j).norm();
  std::sort(sv.data(), sv.data() + n, std::greater<double>());
  return sv;
}

inline double nuclear_jacobi(const Matrix& x) {
  return singular_values_jacobi(x).sum();
}

// Golden-section minimization of a unimodal f on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, double tol = 1e-12) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + r * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// argmin_z tau |z| + (z - x)^2 / 2, found numerically.
inline double prox_abs(double x, double tau) {
  return golden_min(
      [&](double z) { return tau * std::abs(z) + 0.5 * (z - x) * (z - x); },
      x - tau - 1.0, x + tau + 1.0);
}

// Minimum of q over an n x n grid of [0, 1]^2 and its location.
struct GridMin {
  double value;
  double x;
  double y;
};
inline GridMin grid_min_2d(const std::function<double(double, double)>& q,
                           int n) {
  GridMin best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = static_cast<double>(i) / (n - 1);
      const double y = static_cast<double>(j) / (n - 1);
      const double v = q(x, y);
      if (v < best.value) best = {v, x, y};
    }
  return best;
}

// Central finite-difference gradient of f at x.
inline Matrix fd_gradient(const std::function<double(const Matrix&)>& f,
                          const Matrix& x, double h = 1e-6) {
  Matrix g(x.rows(), x.cols());
  Matrix xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double orig = xp.data()[k];
    xp.data()[k] = orig + h;
    const double fp = f(xp);
    xp.data()[k] = orig - h;
    const double fm = f(xp);
    xp.data()[k] = orig;
    g.data()[k] = (fp - fm) / (2.0 * h);
  }
  return g;
}

// Sizes visited by repeated ceil-halving, fine to coarse.
inline std::vector<long> halvings(long n) {
  std::vector<long> out{n};
  while (out.back() > 1)
    out.push_back(static_cast<long>(std::ceil(out.back() / 2.0)));
  return out;
}

// Smallest reachable size strictly above floor_size with 2 s <= m + 1, or -1.
inline long smallest_admissible(long n, long floor_size, long m) {
  long best = -1;
  for (long s : halvings(n))
    if (s > floor_size && 2 * s <= m + 1 && (best < 0 || s < best)) best = s;
  return best;
}

// Dense interpolation factor written from its entry rule: row 0 and row
// 2j+1 take coarse column j with weight 1; row 2j+2 averages columns j and
// j+1; an odd-length last row takes the last column alone.
inline Matrix interpolation_dense(long n) {
  const long h = (n + 1) / 2;
  Matrix r = Matrix::Zero(n, h);
  for (long i = 0; i < n; ++i) {
    if (i == 0) {
      r(0, 0) = 1.0;
    } else if (i % 2 == 1) {
      r(i, std::min((i - 1) / 2, h - 1)) = 1.0;
    } else if (i / 2 < h && (n % 2 == 0 || i != n - 1)) {
      r(i, i / 2 - 1) = 0.5;
      r(i, i / 2) = 0.5;
    } else {
      r(i, h - 1) = 1.0;
    }
  }
  return r;
}

inline Matrix composite_dense(long n, long n_coarse) {
  Matrix r = Matrix::Identity(n, n);
  for (long k = n; k > n_coarse; k = (k + 1) / 2) r = r * interpolation_dense(k);
  return r;
}

inline Matrix sparse_to_dense(const Eigen::SparseMatrix<double>& s) {
  return Matrix(s);
}

}  // namespace oracle

#endif  // LRML_TESTS_ORACLES_HPP_
