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

#ifndef LRML_MASK_HPP_
#define LRML_MASK_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "lrml/matrix.hpp"

namespace lrml {

// Entrywise observation set; observed[i + j * rows] is 1 when (i, j) is kept.
struct ObservationMask {
  Index rows = 0;
  Index cols = 0;
  std::vector<std::uint8_t> observed;

  static ObservationMask full(Index rows, Index cols);
  // Nonzero entries of x mark observed positions.
  static ObservationMask from_matrix(const Matrix& x);
  Matrix to_matrix() const;

  Index count() const;
  bool is_full() const { return count() == rows * cols; }
  std::span<const std::uint8_t> view() const { return observed; }
};

// Zeroes the entries outside the mask. Throws InvalidArgument on a shape
// mismatch.
Matrix project_mask(const Matrix& x, const ObservationMask& mask);

}  // namespace lrml

#endif  // LRML_MASK_HPP_
