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
#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "lrml/kernels.hpp"
#include "lrml/matrix.hpp"
#include "lrml/multilevel.hpp"
#include "oracles.hpp"

namespace lrml {
namespace {

namespace ks = kernels::serial;
namespace kp = kernels::parallel;

class KernelsTest : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override { kernels::set_num_threads(GetParam()); }
  void TearDown() override { kernels::set_num_threads(1); }

  // Large enough to cross the parallel threshold.
  static constexpr Index kRows = 211;
  static constexpr Index kCols = 197;
};

TEST_P(KernelsTest, ElementwiseMatchesSerialBitForBit) {
  std::mt19937_64 rng(11);
  const Matrix a = oracle::random_matrix(kRows, kCols, rng);
  const Matrix b = oracle::random_matrix(kRows, kCols, rng);
  const Matrix y = oracle::random_matrix(kRows, kCols, rng);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(a.size()));
  for (auto& m : mask) m = rng() % 3 != 0;

  Matrix o1(kRows, kCols), o2(kRows, kCols);
  ks::soft_threshold(flat(a), 0.7, flat(o1));
  kp::soft_threshold(flat(a), 0.7, flat(o2));
  EXPECT_EQ(o1, o2);

  ks::shifted_difference(flat(a), flat(b), 0.3, flat(y), flat(o1));
  kp::shifted_difference(flat(a), flat(b), 0.3, flat(y), flat(o2));
  EXPECT_EQ(o1, o2);

  ks::project_mask(flat(a), mask, flat(o1));
  kp::project_mask(flat(a), mask, flat(o2));
  EXPECT_EQ(o1, o2);

  ks::masked_residual(flat(a), flat(b), flat(y), mask, flat(o1));
  kp::masked_residual(flat(a), flat(b), flat(y), mask, flat(o2));
  EXPECT_EQ(o1, o2);

  Matrix y1 = y, y2 = y;
  const double z1 = ks::dual_update(flat(a), flat(b), flat(b), 2.5, flat(y1));
  const double z2 = kp::dual_update(flat(a), flat(b), flat(b), 2.5, flat(y2));
  EXPECT_EQ(y1, y2);
  EXPECT_NEAR(z1, z2, 1e-12 * z1);
}

TEST_P(KernelsTest, ReductionsAgreeWithSerial) {
  std::mt19937_64 rng(12);
  const Matrix a = oracle::random_matrix(kRows, kCols, rng);
  const Matrix b = oracle::random_matrix(kRows, kCols, rng);
  // Summation order differs across threads; compare relative to magnitude.
  const double abs_ref = ks::abs_sum(flat(a));
  const double sq_ref = ks::sum_squares(flat(a));
  EXPECT_NEAR(abs_ref, kp::abs_sum(flat(a)), 1e-13 * abs_ref);
  EXPECT_NEAR(sq_ref, kp::sum_squares(flat(a)), 1e-13 * sq_ref);
  EXPECT_NEAR(ks::dot(flat(a), flat(b)), kp::dot(flat(a), flat(b)), 1e-13 * sq_ref);
  EXPECT_NEAR(sq_ref, a.squaredNorm(), 1e-13 * sq_ref);

  Matrix sparse = Matrix::Zero(kRows, kCols);
  for (int k = 0; k < 500; ++k) sparse.data()[rng() % sparse.size()] = 1.0;
  const auto nnz = (sparse.array() != 0.0).count();
  EXPECT_EQ(ks::count_nonzero(flat(sparse)), nnz);
  EXPECT_EQ(kp::count_nonzero(flat(sparse)), nnz);
}

TEST_P(KernelsTest, ReductionsAreRepeatable) {
  std::mt19937_64 rng(13);
  const Matrix a = oracle::random_matrix(kRows, kCols, rng);
  const double first = kp::sum_squares(flat(a));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(kp::sum_squares(flat(a)), first);
}

TEST_P(KernelsTest, ArgmaxPicksFirstOfTies) {
  Matrix a = Matrix::Zero(kRows, kCols);
  a.data()[40000] = -3.0;
  a.data()[123] = 3.0;
  a.data()[30000] = 3.0;
  for (auto* f : {&ks::argmax_abs, &kp::argmax_abs}) {
    const kernels::ArgMaxAbs r = (*f)(flat(a));
    EXPECT_EQ(r.index, 123);
    EXPECT_EQ(r.magnitude, 3.0);
  }
  const Matrix zero = Matrix::Zero(kRows, kCols);
  EXPECT_EQ(kp::argmax_abs(flat(zero)).index, 0);
  EXPECT_EQ(kp::argmax_abs(flat(zero)).magnitude, 0.0);
}

TEST_P(KernelsTest, RightMultiplyMatchesDenseProduct) {
  std::mt19937_64 rng(14);
  const RestrictionChain chain = build_chain(64, 8, true);
  const Matrix x = oracle::random_matrix(1500, 64, rng);
  const Matrix expected = x * chain.dense();
  const Matrix got = chain.restrict(x);
  EXPECT_LE((got - expected).norm(), 1e-12 * expected.norm());
}

TEST_P(KernelsTest, SoftThresholdMayAlias) {
  std::vector<double> x{1.0, -0.3, 0.7};
  kp::soft_threshold(x, 0.5, x);
  EXPECT_DOUBLE_EQ(x[0], 0.5);
  EXPECT_DOUBLE_EQ(x[1], 0.0);
  EXPECT_NEAR(x[2], 0.2, 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelsTest, ::testing::Values(1, 2, 4));

}  // namespace
}  // namespace lrml
