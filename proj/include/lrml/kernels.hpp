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

// Flat inner loops shared by the solvers.
//
// Every kernel exists twice: `serial` is the plain reference loop and
// `parallel` the OpenMP version the solvers call. Elementwise kernels produce
// bit-identical output in both namespaces. Reductions in `parallel`
// accumulate per-thread partial sums with a static schedule and combine them
// in thread order, so results are deterministic for a fixed thread count but
// may differ from `serial` in the last bits.
//
// All buffers are column-major and must not alias unless stated.

#ifndef LRML_KERNELS_HPP_
#define LRML_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

namespace lrml::kernels {

// Compressed sparse column view of a (rows x cols) matrix.
struct CscView {
  std::ptrdiff_t rows = 0;
  std::ptrdiff_t cols = 0;
  std::span<const int> outer;  // cols + 1 entries
  std::span<const int> inner;  // row index per nonzero
  std::span<const double> values;
};

// Position and magnitude of the largest |x_i|; ties go to the lowest index.
struct ArgMaxAbs {
  std::ptrdiff_t index = 0;
  double magnitude = 0.0;
};

#define LRML_DECLARE_KERNELS                                                   \
  /* out_i = sign(x_i) max(|x_i| - tau, 0); out may alias x. */                \
  void soft_threshold(std::span<const double> x, double tau,                  \
                      std::span<double> out);                                  \
  /* out = a - b + c * y */                                                    \
  void shifted_difference(std::span<const double> a,                          \
                          std::span<const double> b, double c,                \
                          std::span<const double> y, std::span<double> out);  \
  /* z = d - l - s; y += mu * z; returns ||z||_2^2 */                          \
  double dual_update(std::span<const double> d, std::span<const double> l,    \
                     std::span<const double> s, double mu,                    \
                     std::span<double> y);                                     \
  /* out_i = observed_i ? x_i : 0 */                                           \
  void project_mask(std::span<const double> x,                                \
                    std::span<const std::uint8_t> observed,                   \
                    std::span<double> out);                                    \
  /* out_i = observed_i ? l_i + s_i - d_i : 0 */                               \
  void masked_residual(std::span<const double> l, std::span<const double> s,  \
                       std::span<const double> d,                             \
                       std::span<const std::uint8_t> observed,                \
                       std::span<double> out);                                 \
  double abs_sum(std::span<const double> x);                                  \
  double sum_squares(std::span<const double> x);                              \
  double dot(std::span<const double> x, std::span<const double> y);           \
  std::ptrdiff_t count_nonzero(std::span<const double> x);                    \
  ArgMaxAbs argmax_abs(std::span<const double> x);                            \
  /* out (rows x r.cols) = x (rows x r.rows) * R, R given in CSC. */           \
  void right_multiply(std::span<const double> x, std::ptrdiff_t rows,         \
                      const CscView& r, std::span<double> out);

namespace serial {
LRML_DECLARE_KERNELS
}  // namespace serial

namespace parallel {
LRML_DECLARE_KERNELS
}  // namespace parallel

#undef LRML_DECLARE_KERNELS

// Sets the OpenMP team size used by `parallel`. n <= 0 keeps the default.
void set_num_threads(int n);
int num_threads();

}  // namespace lrml::kernels

#endif  // LRML_KERNELS_HPP_
