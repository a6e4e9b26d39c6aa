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
#include "lrml/synthetic.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lrml/errors.hpp"

namespace lrml {
namespace {

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Matrix x(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) x(i, j) = dist(rng);
  return x;
}

// Orthonormal columns from the QR of a Gaussian matrix, with the R diagonal
// made positive so the result is Haar distributed.
Matrix orthonormal(Index rows, Index cols, std::mt19937_64& rng) {
  const Matrix g = gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR();
  for (Index k = 0; k < cols; ++k)
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  return q;
}

Matrix low_rank(Index m, Index n, Index rank, std::mt19937_64& rng) {
  const Matrix u = orthonormal(m, rank, rng);
  const Matrix v = orthonormal(n, rank, rng);
  Vector sigma(rank);
  for (Index k = 0; k < rank; ++k)
    sigma[k] = 1.0 / static_cast<double>((k + 1) * (k + 1));
  return u * sigma.asDiagonal() * v.transpose();
}

// First k entries of a partial Fisher-Yates shuffle of 0..total-1.
std::vector<Index> sample_positions(Index total, Index k,
                                    std::mt19937_64& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, total - 1);
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

void check_common(Index m, Index n, Index rank, double eta,
                  std::optional<double> frac) {
  if (m < 1 || n < 1) throw InvalidArgument("synth: m and n must be >= 1");
  if (rank < 1 || rank > std::min(m, n))
    throw InvalidArgument("synth: rank must lie in [1, min(m, n)], got " +
                          std::to_string(rank));
  if (!(eta >= 0.0 && eta <= 1.0))
    throw InvalidArgument("synth: eta must lie in [0, 1]");
  if (frac && !(*frac > 0.0 && *frac <= 1.0))
    throw InvalidArgument("synth: observe fraction must lie in (0, 1]");
}

void finish(SyntheticProblem& p, std::mt19937_64& rng,
            std::optional<double> frac) {
  const Index m = p.l_truth.rows();
  const Index n = p.l_truth.cols();
  const Index total = m * n;
  const auto corrupt = static_cast<Index>(std::floor(p.eta * total));
  p.s_truth = Matrix::Zero(m, n);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (Index k : sample_positions(total, corrupt, rng))
    p.s_truth.data()[k] = val(rng);

  p.d = p.l_truth + p.s_truth;
  if (frac) {
    const auto keep = static_cast<Index>(std::llround(*frac * total));
    ObservationMask mask{m, n, std::vector<std::uint8_t>(total, 0)};
    for (Index k : sample_positions(total, keep, rng))
      mask.observed[static_cast<std::size_t>(k)] = 1;
    p.d = project_mask(p.d, mask);
    p.mask = std::move(mask);
  }
}

}  // namespace

SyntheticProblem synth_rpca(Index m, Index n, Index rank, double eta,
                            std::uint64_t seed,
                            std::optional<double> observe_fraction) {
  check_common(m, n, rank, eta, observe_fraction);
  std::mt19937_64 rng(seed);
  SyntheticProblem p;
  p.rank = rank;
  p.eta = eta;
  p.seed = seed;
  p.l_truth = low_rank(m, n, rank, rng);
  finish(p, rng, observe_fraction);
  return p;
}

SyntheticProblem synth_rpca_coarse(Index m, Index rank, double eta,
                                   std::uint64_t seed,
                                   const RestrictionChain& chain,
                                   std::optional<double> observe_fraction) {
  const Index n = chain.n_fine();
  check_common(m, n, rank, eta, observe_fraction);
  if (rank > chain.n_coarse())
    throw InvalidArgument("synth: rank exceeds the coarse size");
  std::mt19937_64 rng(seed);
  SyntheticProblem p;
  p.rank = rank;
  p.eta = eta;
  p.seed = seed;
  p.l_truth = chain.prolong(low_rank(m, chain.n_coarse(), rank, rng));
  finish(p, rng, observe_fraction);
  return p;
}

}  // namespace lrml
