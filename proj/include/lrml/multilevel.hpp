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

// Interpolation operators acting on the column dimension of an m x n matrix.
//
// A single level maps n fine columns to ceil(n/2) coarse ones. Coarse column
// j injects with weight 1 into fine row 2j+1 and with weight 1/2 into the
// shared rows 2j and 2j+2; fine row 0 belongs to coarse column 0. For n = 6:
//
//   R^T = 1/2 [2 2 1 0 0 0]
//             [0 0 1 2 1 0]
//             [0 0 0 0 1 2]
//
// For odd n the last coarse column injects only into the last fine row.
// Rows of every level factor sum to one, so constant rows survive X_H R^T.

#ifndef LRML_MULTILEVEL_HPP_
#define LRML_MULTILEVEL_HPP_

#include <Eigen/SparseCore>
#include <vector>

#include "lrml/matrix.hpp"

namespace lrml {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

// n x ceil(n/2) interpolation factor, n >= 2.
SparseMatrix build_interpolation(Index n);

// n, ceil(n/2), ceil(n/4), ..., 1.
std::vector<Index> halving_sequence(Index n);

// R = R_n R_{n/2} ... : a composed interpolation operator n_fine x n_coarse.
//
// raw_composite() is the row-stochastic product of the level factors;
// composite() is raw / sigma_1(raw) when the chain is normalized (so that
// ||R||_2 = 1) and the raw product otherwise.
class RestrictionChain {
 public:
  RestrictionChain() = default;

  Index n_fine() const { return n_fine_; }
  Index n_coarse() const { return n_coarse_; }
  Index depth() const { return static_cast<Index>(levels_.size()); }
  const std::vector<SparseMatrix>& levels() const { return levels_; }
  const SparseMatrix& raw_composite() const { return raw_; }
  const SparseMatrix& composite() const { return normalized_ ? scaled_ : raw_; }
  // sigma_1 of the raw composite.
  double spectral_norm() const { return spectral_norm_; }
  bool normalized() const { return normalized_; }

  // X R, X has n_fine columns.
  Matrix restrict(const Matrix& x) const;
  // X_H R^T, X_H has n_coarse columns.
  Matrix prolong(const Matrix& x_h) const;

  // Dense copy of composite().
  Matrix dense() const { return Matrix(composite()); }
  // All singular values of composite(), non-increasing.
  Vector singular_values() const;

 private:
  friend RestrictionChain build_chain(Index n, Index n_coarse_target,
                                      bool normalize);

  Index n_fine_ = 0;
  Index n_coarse_ = 0;
  std::vector<SparseMatrix> levels_;
  SparseMatrix raw_;
  SparseMatrix scaled_;
  SparseMatrix composite_t_;  // transpose of composite(), for prolong
  double spectral_norm_ = 1.0;
  bool normalized_ = false;
};

// Throws InvalidArgument when n_coarse_target is not in halving_sequence(n).
RestrictionChain build_chain(Index n, Index n_coarse_target, bool normalize);

// Smallest halving-reachable n_H with n_H > max(rank_guess, r_needed) and
// n_H <= (m + 1) / 2. Throws ConstraintViolation when no level qualifies.
Index select_levels(Index n, Index rank_guess, Index r_needed, Index m);

// Checks an explicitly requested coarse size against the same inequalities.
void validate_coarse_size(Index n, Index n_coarse, Index rank_guess, Index m);

Matrix restrict(const Matrix& x, const RestrictionChain& chain);
Matrix prolong(const Matrix& x_h, const RestrictionChain& chain);

// Dense left inverse (R^T R)^{-1} R^T of composite().
Matrix left_inverse(const RestrictionChain& chain);

// sum_{k <= rank(L_H)} sigma_k(L_H) (1 - sigma_{n_H - k + 1}(R)): how much
// nuclear norm prolongation by R may lose.
double epsilon_bound(const Matrix& l_h, const RestrictionChain& chain);
double epsilon_bound(const Matrix& l_h, const Vector& operator_sigma);

// Basis used to move between the fine and coarse column spaces.
enum class CoarseBasis {
  // composite() itself.
  kInterpolation,
  // Q = R (R^T R)^{-1/2}: orthonormal columns spanning range(R).
  kOrthonormal,
};

// Restriction/prolongation pair built on a chain. Both bases are applied
// through the sparse chain plus an n_H x n_H dense factor.
class CoarseOperator {
 public:
  CoarseOperator(RestrictionChain chain, CoarseBasis basis);

  const RestrictionChain& chain() const { return chain_; }
  CoarseBasis basis() const { return basis_; }
  Index n_fine() const { return chain_.n_fine(); }
  Index n_coarse() const { return chain_.n_coarse(); }

  Matrix restrict(const Matrix& x) const;
  Matrix prolong(const Matrix& x_h) const;

  // B^T B for the operator B in use.
  Matrix gram() const;
  Vector singular_values() const;
  double spectral_norm() const { return singular_values()[0]; }

 private:
  RestrictionChain chain_;
  CoarseBasis basis_;
  Matrix whitening_;  // (R^T R)^{-1/2}, only for kOrthonormal
  Vector sigma_;
};

struct MultilevelDiagnostics {
  double epsilon = 0.0;
  std::vector<double> delta_history;
  double delta_max = 0.0;  // max(0, max_k delta_k)
};

}  // namespace lrml

#endif  // LRML_MULTILEVEL_HPP_
