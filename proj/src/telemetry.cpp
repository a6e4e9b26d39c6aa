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

#include "lrml/telemetry.hpp"

#include <cmath>

#include "lrml/errors.hpp"
#include "lrml/kernels.hpp"

namespace lrml {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxIterations:
      return "max_iterations";
    case SolveStatus::kTimeBudget:
      return "time_budget";
  }
  return "unknown";
}

double feasibility_gap(const Matrix& d, const Matrix& l, const Matrix& s) {
  if (d.rows() != l.rows() || d.cols() != l.cols() || d.rows() != s.rows() ||
      d.cols() != s.cols())
    throw InvalidArgument("feasibility_gap: D, L and S must share a shape");
  const double denom = std::sqrt(kernels::parallel::sum_squares(flat(d)));
  if (denom == 0.0)
    throw InvalidArgument("feasibility_gap: ||D||_F is zero");
  return (d - l - s).norm() / denom;
}

double sparsity(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return static_cast<double>(kernels::parallel::count_nonzero(flat(x))) /
         static_cast<double>(x.size());
}

}  // namespace lrml
