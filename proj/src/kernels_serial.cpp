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

#include <cmath>

#include "lrml/kernels.hpp"

namespace lrml::kernels::serial {

void soft_threshold(std::span<const double> x, double tau,
                    std::span<double> out) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double mag = std::abs(v) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, v) : 0.0;
  }
}

void shifted_difference(std::span<const double> a, std::span<const double> b,
                        double c, std::span<const double> y,
                        std::span<double> out) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i] + c * y[i];
}

double dual_update(std::span<const double> d, std::span<const double> l,
                   std::span<const double> s, double mu,
                   std::span<double> y) {
  double acc = 0.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = d[i] - l[i] - s[i];
    y[i] += mu * z;
    acc += z * z;
  }
  return acc;
}

void project_mask(std::span<const double> x,
                  std::span<const std::uint8_t> observed,
                  std::span<double> out) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = observed[i] ? x[i] : 0.0;
}

void masked_residual(std::span<const double> l, std::span<const double> s,
                     std::span<const double> d,
                     std::span<const std::uint8_t> observed,
                     std::span<double> out) {
  const std::size_t n = l.size();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = observed[i] ? l[i] + s[i] - d[i] : 0.0;
}

double abs_sum(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += std::abs(v);
  return acc;
}

double sum_squares(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

std::ptrdiff_t count_nonzero(std::span<const double> x) {
  std::ptrdiff_t count = 0;
  for (double v : x) count += (v != 0.0);
  return count;
}

ArgMaxAbs argmax_abs(std::span<const double> x) {
  ArgMaxAbs best;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::abs(x[i]);
    if (mag > best.magnitude) {
      best.magnitude = mag;
      best.index = static_cast<std::ptrdiff_t>(i);
    }
  }
  return best;
}

void right_multiply(std::span<const double> x, std::ptrdiff_t rows,
                    const CscView& r, std::span<double> out) {
  for (std::ptrdiff_t j = 0; j < r.cols; ++j) {
    double* col = out.data() + j * rows;
    for (std::ptrdiff_t i = 0; i < rows; ++i) col[i] = 0.0;
    for (int p = r.outer[j]; p < r.outer[j + 1]; ++p) {
      const double w = r.values[p];
      const double* src = x.data() + static_cast<std::ptrdiff_t>(r.inner[p]) * rows;
      for (std::ptrdiff_t i = 0; i < rows; ++i) col[i] += w * src[i];
    }
  }
}

}  // namespace lrml::kernels::serial
