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

#ifndef LRML_TELEMETRY_HPP_
#define LRML_TELEMETRY_HPP_

#include <chrono>
#include <string_view>

#include "lrml/matrix.hpp"

namespace lrml {

struct IterationRecord {
  int iter = 0;
  double feasibility_gap = 0.0;
  double objective = 0.0;
  // -1 when the solver was not asked to compute it for this iteration.
  Index rank_l = 0;
  double sparsity_s = 0.0;  // fraction of nonzero entries of S
  double wall_seconds = 0.0;

  bool operator==(const IterationRecord&) const = default;
};

enum class SolveStatus {
  kConverged,
  kMaxIterations,
  kTimeBudget,
};

std::string_view to_string(SolveStatus s);

// ||D - L - S||_F / ||D||_F. Throws InvalidArgument on shape mismatch or
// when ||D||_F = 0.
double feasibility_gap(const Matrix& d, const Matrix& l, const Matrix& s);

// Fraction of nonzero entries.
double sparsity(const Matrix& x);

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
};

}  // namespace lrml

#endif  // LRML_TELEMETRY_HPP_
