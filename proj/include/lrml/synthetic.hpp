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
#ifndef LRML_SYNTHETIC_HPP_
#define LRML_SYNTHETIC_HPP_

#include <cstdint>
#include <optional>

#include "lrml/mask.hpp"
#include "lrml/matrix.hpp"
#include "lrml/multilevel.hpp"

namespace lrml {

struct SyntheticProblem {
  Matrix d;
  Matrix l_truth;
  Matrix s_truth;
  std::optional<ObservationMask> mask;
  Index rank = 0;
  double eta = 0.0;
  std::uint64_t seed = 0;
};

// L = sum_k (1/k^2) u_k v_k^T with Haar-orthonormal U, V; S has
// floor(eta m n) entries at uniformly random positions, uniform on [-1, 1];
// D = P[L + S]. The mask, when requested, keeps round(observe_fraction m n)
// entries. Deterministic in seed.
SyntheticProblem synth_rpca(Index m, Index n, Index rank, double eta,
                            std::uint64_t seed,
                            std::optional<double> observe_fraction = {});

// As synth_rpca, but the low-rank part is L_H R^T for a coarse L_H of size
// m x n_coarse built the same way, so it factors exactly through the chain.
SyntheticProblem synth_rpca_coarse(Index m, Index rank, double eta,
                                   std::uint64_t seed,
                                   const RestrictionChain& chain,
                                   std::optional<double> observe_fraction = {});

}  // namespace lrml

#endif  // LRML_SYNTHETIC_HPP_
