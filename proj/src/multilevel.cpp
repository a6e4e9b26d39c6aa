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

#include "lrml/multilevel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "lrml/errors.hpp"
#include "lrml/kernels.hpp"

namespace lrml {
namespace {

kernels::CscView csc(const SparseMatrix& r) {
  const auto nnz = static_cast<std::size_t>(r.nonZeros());
  return {r.rows(), r.cols(),
          {r.outerIndexPtr(), static_cast<std::size_t>(r.cols() + 1)},
          {r.innerIndexPtr(), nnz},
          {r.valuePtr(), nnz}};
}

Matrix apply_right(const Matrix& x, const SparseMatrix& r) {
  Matrix out(x.rows(), r.cols());
  kernels::parallel::right_multiply(flat(x), x.rows(), csc(r), flat(out));
  return out;
}

SparseMatrix sparse_identity(Index n) {
  SparseMatrix eye(n, n);
  eye.setIdentity();
  eye.makeCompressed();
  return eye;
}

std::string join(const std::vector<Index>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

}  // namespace

SparseMatrix build_interpolation(Index n) {
  if (n < 2)
    throw InvalidArgument("build_interpolation: n must be >= 2, got " +
                          std::to_string(n));
  const Index h = (n + 1) / 2;
  std::vector<Eigen::Triplet<double, int>> t;
  t.reserve(static_cast<std::size_t>(2 * n));
  auto add = [&t](Index row, Index col, double w) {
    t.emplace_back(static_cast<int>(row), static_cast<int>(col), w);
  };
  add(0, 0, 1.0);
  // Coarse columns that get interior interpolation on both sides.
  const Index paired = (n % 2 == 0) ? h : h - 1;
  for (Index j = 0; j < paired; ++j) {
    add(2 * j + 1, j, 1.0);
    if (j + 1 < paired) {
      add(2 * j + 2, j, 0.5);
      add(2 * j + 2, j + 1, 0.5);
    }
  }
  if (n % 2 == 1) add(n - 1, h - 1, 1.0);
  SparseMatrix r(n, h);
  r.setFromTriplets(t.begin(), t.end());
  r.makeCompressed();
  return r;
}

std::vector<Index> halving_sequence(Index n) {
  std::vector<Index> seq;
  if (n < 1) return seq;
  for (Index k = n;; k = (k + 1) / 2) {
    seq.push_back(k);
    if (k == 1) break;
  }
  return seq;
}

Matrix RestrictionChain::restrict(const Matrix& x) const {
  if (x.cols() != n_fine_)
    throw InvalidArgument("restrict: matrix has " + std::to_string(x.cols()) +
                          " columns, chain expects " + std::to_string(n_fine_));
  return apply_right(x, composite());
}

Matrix RestrictionChain::prolong(const Matrix& x_h) const {
  if (x_h.cols() != n_coarse_)
    throw InvalidArgument("prolong: matrix has " + std::to_string(x_h.cols()) +
                          " columns, chain expects " +
                          std::to_string(n_coarse_));
  return apply_right(x_h, composite_t_);
}

Vector RestrictionChain::singular_values() const {
  if (levels_.empty()) return Vector::Ones(n_fine_);
  Eigen::BDCSVD<Matrix> svd(dense());
  return svd.singularValues();
}

RestrictionChain build_chain(Index n, Index n_coarse_target, bool normalize) {
  const std::vector<Index> seq = halving_sequence(n);
  if (n < 1 || n_coarse_target < 1 ||
      std::find(seq.begin(), seq.end(), n_coarse_target) == seq.end()) {
    // Name the reachable sizes that bracket the request.
    Index above = -1;
    Index below = -1;
    for (Index s : seq) {
      if (s > n_coarse_target) above = s;
      if (s < n_coarse_target && below < 0) below = s;
    }
    std::string hint = "reachable sizes: " + join(seq);
    if (above > 0 || below > 0) {
      hint += "; closest: ";
      if (above > 0) hint += std::to_string(above);
      if (above > 0 && below > 0) hint += " or ";
      if (below > 0) hint += std::to_string(below);
    }
    throw InvalidArgument("build_chain: coarse size " +
                          std::to_string(n_coarse_target) +
                          " is not reachable by halving " + std::to_string(n) +
                          " (" + hint + ")");
  }

  RestrictionChain c;
  c.n_fine_ = n;
  c.n_coarse_ = n_coarse_target;
  c.raw_ = sparse_identity(n);
  for (Index k = n; k > n_coarse_target; k = (k + 1) / 2) {
    c.levels_.push_back(build_interpolation(k));
    c.raw_ = (c.raw_ * c.levels_.back()).pruned();
    c.raw_.makeCompressed();
  }

  if (c.levels_.empty()) {
    c.spectral_norm_ = 1.0;
  } else {
    const Matrix gram = Matrix(c.raw_.transpose() * c.raw_);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    c.spectral_norm_ = std::sqrt(eig.eigenvalues().maxCoeff());
  }
  c.normalized_ = normalize;
  if (normalize) {
    c.scaled_ = c.raw_ / c.spectral_norm_;
    c.scaled_.makeCompressed();
  }
  c.composite_t_ = SparseMatrix(c.composite().transpose());
  c.composite_t_.makeCompressed();
  return c;
}

Index select_levels(Index n, Index rank_guess, Index r_needed, Index m) {
  if (rank_guess < 1)
    throw InvalidArgument("select_levels: rank_guess must be >= 1");
  if (m < 1) throw InvalidArgument("select_levels: m must be >= 1");
  const Index floor_size = std::max(rank_guess, r_needed);
  Index best = -1;
  for (Index s : halving_sequence(n))
    if (s > floor_size && 2 * s <= m + 1) best = s;
  if (best < 0)
    throw ConstraintViolation(
        "no coarse level n_H reachable from n=" + std::to_string(n) +
        " satisfies max(rank_guess, r)=" + std::to_string(floor_size) +
        " < n_H <= (m+1)/2=" + std::to_string((m + 1) / 2));
  return best;
}

void validate_coarse_size(Index n, Index n_coarse, Index rank_guess, Index m) {
  if (n_coarse <= rank_guess || 2 * n_coarse > m + 1)
    throw ConstraintViolation(
        "coarse size must satisfy rank_guess < n_H <= (m+1)/2; got n_H=" +
        std::to_string(n_coarse) + ", rank_guess=" +
        std::to_string(rank_guess) + ", m=" + std::to_string(m));
  const std::vector<Index> seq = halving_sequence(n);
  if (std::find(seq.begin(), seq.end(), n_coarse) == seq.end())
    throw ConstraintViolation("coarse size " + std::to_string(n_coarse) +
                              " is not reachable by halving n=" +
                              std::to_string(n) + " (" + join(seq) + ")");
}

Matrix restrict(const Matrix& x, const RestrictionChain& chain) {
  return chain.restrict(x);
}

Matrix prolong(const Matrix& x_h, const RestrictionChain& chain) {
  return chain.prolong(x_h);
}

Matrix left_inverse(const RestrictionChain& chain) {
  const Matrix r = chain.dense();
  const Matrix gram = r.transpose() * r;
  return gram.ldlt().solve(r.transpose());
}

double epsilon_bound(const Matrix& l_h, const Vector& operator_sigma) {
  const Index n_h = operator_sigma.size();
  if (l_h.cols() != n_h)
    throw InvalidArgument("epsilon_bound: L_H has " +
                          std::to_string(l_h.cols()) + " columns, operator " +
                          std::to_string(n_h));
  if (l_h.size() == 0) return 0.0;
  const Vector sigma = svd_full(l_h).sigma;
  const Index r_h = numerical_rank(sigma, l_h.rows(), l_h.cols());
  double eps = 0.0;
  for (Index k = 0; k < r_h; ++k)
    eps += sigma[k] * (1.0 - operator_sigma[n_h - 1 - k]);
  return eps;
}

double epsilon_bound(const Matrix& l_h, const RestrictionChain& chain) {
  return epsilon_bound(l_h, chain.singular_values());
}

CoarseOperator::CoarseOperator(RestrictionChain chain, CoarseBasis basis)
    : chain_(std::move(chain)), basis_(basis) {
  const Index n_h = chain_.n_coarse();
  if (basis_ == CoarseBasis::kOrthonormal && chain_.depth() == 0) {
    sigma_ = Vector::Ones(n_h);  // identity chain is already orthonormal
  } else if (basis_ == CoarseBasis::kOrthonormal) {
    const Matrix r = chain_.dense();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(r.transpose() * r);
    const Vector inv_sqrt = eig.eigenvalues().array().rsqrt();
    whitening_ = eig.eigenvectors() * inv_sqrt.asDiagonal() *
                 eig.eigenvectors().transpose();
    sigma_ = Vector::Ones(n_h);
  } else {
    sigma_ = chain_.singular_values();
  }
}

Matrix CoarseOperator::restrict(const Matrix& x) const {
  if (whitening_.size() == 0) return chain_.restrict(x);
  return chain_.restrict(x) * whitening_;
}

Matrix CoarseOperator::prolong(const Matrix& x_h) const {
  if (whitening_.size() == 0) return chain_.prolong(x_h);
  if (x_h.cols() != n_coarse())
    throw InvalidArgument("prolong: matrix has " + std::to_string(x_h.cols()) +
                          " columns, operator expects " +
                          std::to_string(n_coarse()));
  return chain_.prolong(x_h * whitening_);
}

Matrix CoarseOperator::gram() const {
  if (basis_ == CoarseBasis::kOrthonormal || chain_.depth() == 0)
    return Matrix::Identity(n_coarse(), n_coarse());
  const Matrix r = chain_.dense();
  return r.transpose() * r;
}

Vector CoarseOperator::singular_values() const { return sigma_; }

}  // namespace lrml
