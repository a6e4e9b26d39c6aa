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

#include "lrml/mask.hpp"

#include <algorithm>
#include <string>

#include "lrml/errors.hpp"
#include "lrml/kernels.hpp"

namespace lrml {

ObservationMask ObservationMask::full(Index rows, Index cols) {
  if (rows < 1 || cols < 1)
    throw InvalidArgument("ObservationMask: dimensions must be positive");
  return {rows, cols,
          std::vector<std::uint8_t>(static_cast<std::size_t>(rows * cols), 1)};
}

ObservationMask ObservationMask::from_matrix(const Matrix& x) {
  ObservationMask m{x.rows(), x.cols(), {}};
  m.observed.resize(static_cast<std::size_t>(x.size()));
  const double* p = x.data();
  for (std::size_t i = 0; i < m.observed.size(); ++i)
    m.observed[i] = p[i] != 0.0 ? 1 : 0;
  return m;
}

Matrix ObservationMask::to_matrix() const {
  Matrix x(rows, cols);
  double* p = x.data();
  for (std::size_t i = 0; i < observed.size(); ++i) p[i] = observed[i];
  return x;
}

Index ObservationMask::count() const {
  return static_cast<Index>(
      std::count_if(observed.begin(), observed.end(),
                    [](std::uint8_t v) { return v != 0; }));
}

Matrix project_mask(const Matrix& x, const ObservationMask& mask) {
  if (x.rows() != mask.rows || x.cols() != mask.cols)
    throw InvalidArgument("project_mask: matrix is " +
                          std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + ", mask is " +
                          std::to_string(mask.rows) + "x" +
                          std::to_string(mask.cols));
  Matrix out(x.rows(), x.cols());
  kernels::parallel::project_mask(flat(x), mask.view(), flat(out));
  return out;
}

}  // namespace lrml
