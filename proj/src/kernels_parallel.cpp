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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lrml/kernels.hpp"

namespace lrml::kernels {

void set_num_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int num_threads() { return omp_get_max_threads(); }

namespace parallel {
namespace {

// Below this many elements the team start-up costs more than the loop.
constexpr std::ptrdiff_t kMinParallel = 1 << 14;

// Row block for right_multiply; each output entry is summed in the same
// order as the serial loop.
constexpr std::ptrdiff_t kRowBlock = 512;

// Deterministic reduction: static partition, per-thread partials combined in
// thread order.
template <typename T, typename Body>
T reduce(std::ptrdiff_t n, Body body) {
  if (n < kMinParallel) {
    T acc{};
    for (std::ptrdiff_t i = 0; i < n; ++i) acc += body(i);
    return acc;
  }
  std::vector<T> partial(static_cast<std::size_t>(omp_get_max_threads()), T{});
#pragma omp parallel
  {
    T acc{};
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) acc += body(i);
    partial[static_cast<std::size_t>(omp_get_thread_num())] = acc;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

void soft_threshold(std::span<const double> x, double tau,
                    std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double mag = std::abs(v) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, v) : 0.0;
  }
}

void shifted_difference(std::span<const double> a, std::span<const double> b,
                        double c, std::span<const double> y,
                        std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] - b[i] + c * y[i];
}

double dual_update(std::span<const double> d, std::span<const double> l,
                   std::span<const double> s, double mu,
                   std::span<double> y) {
  return reduce<double>(static_cast<std::ptrdiff_t>(d.size()),
                        [&](std::ptrdiff_t i) {
                          const double z = d[i] - l[i] - s[i];
                          y[i] += mu * z;
                          return z * z;
                        });
}

void project_mask(std::span<const double> x,
                  std::span<const std::uint8_t> observed,
                  std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = observed[i] ? x[i] : 0.0;
}

void masked_residual(std::span<const double> l, std::span<const double> s,
                     std::span<const double> d,
                     std::span<const std::uint8_t> observed,
                     std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(l.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = observed[i] ? l[i] + s[i] - d[i] : 0.0;
}

double abs_sum(std::span<const double> x) {
  return reduce<double>(static_cast<std::ptrdiff_t>(x.size()),
                        [&](std::ptrdiff_t i) { return std::abs(x[i]); });
}

double sum_squares(std::span<const double> x) {
  return reduce<double>(static_cast<std::ptrdiff_t>(x.size()),
                        [&](std::ptrdiff_t i) { return x[i] * x[i]; });
}

double dot(std::span<const double> x, std::span<const double> y) {
  return reduce<double>(static_cast<std::ptrdiff_t>(x.size()),
                        [&](std::ptrdiff_t i) { return x[i] * y[i]; });
}

std::ptrdiff_t count_nonzero(std::span<const double> x) {
  return reduce<std::ptrdiff_t>(
      static_cast<std::ptrdiff_t>(x.size()),
      [&](std::ptrdiff_t i) -> std::ptrdiff_t { return x[i] != 0.0; });
}

ArgMaxAbs argmax_abs(std::span<const double> x) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (n < kMinParallel) return serial::argmax_abs(x);
  std::vector<ArgMaxAbs> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    ArgMaxAbs best;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double mag = std::abs(x[i]);
      if (mag > best.magnitude) {
        best.magnitude = mag;
        best.index = i;
      }
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = best;
  }
  // Static chunks are ordered by thread id, so a strict comparison keeps the
  // first occurrence.
  ArgMaxAbs best;
  for (const ArgMaxAbs& p : partial)
    if (p.magnitude > best.magnitude) best = p;
  return best;
}

void right_multiply(std::span<const double> x, std::ptrdiff_t rows,
                    const CscView& r, std::span<double> out) {
  const std::ptrdiff_t blocks = (rows + kRowBlock - 1) / kRowBlock;
#pragma omp parallel for schedule(static) if (rows * r.cols >= kMinParallel)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::ptrdiff_t lo = b * kRowBlock;
    const std::ptrdiff_t hi = std::min(rows, lo + kRowBlock);
    for (std::ptrdiff_t j = 0; j < r.cols; ++j) {
      double* col = out.data() + j * rows;
      for (std::ptrdiff_t i = lo; i < hi; ++i) col[i] = 0.0;
      for (int p = r.outer[j]; p < r.outer[j + 1]; ++p) {
        const double w = r.values[p];
        const double* src =
            x.data() + static_cast<std::ptrdiff_t>(r.inner[p]) * rows;
        for (std::ptrdiff_t i = lo; i < hi; ++i) col[i] += w * src[i];
      }
    }
  }
}

}  // namespace parallel
}  // namespace lrml::kernels
