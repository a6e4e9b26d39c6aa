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
// Serial vs OpenMP kernels, dense vs Lanczos truncated SVD, and one
// iteration of each solver family.
//
//   ./bench_kernels --benchmark_filter=Svd

#include <benchmark/benchmark.h>

#include <random>

#include "lrml/cpcp.hpp"
#include "lrml/kernels.hpp"
#include "lrml/matrix.hpp"
#include "lrml/multilevel.hpp"
#include "lrml/pcp.hpp"
#include "lrml/synthetic.hpp"

namespace {

using lrml::Index;
using lrml::Matrix;
namespace kn = lrml::kernels;

Matrix random_matrix(Index m, Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix x(m, n);
  for (Index k = 0; k < x.size(); ++k) x.data()[k] = normal(rng);
  return x;
}

template <bool Parallel>
void BM_SoftThreshold(benchmark::State& state) {
  const Index m = state.range(0);
  const Matrix x = random_matrix(m, m, 1);
  Matrix out(m, m);
  for (auto _ : state) {
    if constexpr (Parallel)
      kn::parallel::soft_threshold(lrml::flat(x), 0.5, lrml::flat(out));
    else
      kn::serial::soft_threshold(lrml::flat(x), 0.5, lrml::flat(out));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * x.size() * 16);
}
BENCHMARK(BM_SoftThreshold<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_SoftThreshold<true>)->Arg(256)->Arg(1024);

template <bool Parallel>
void BM_DualUpdate(benchmark::State& state) {
  const Index m = state.range(0);
  const Matrix d = random_matrix(m, m, 2);
  const Matrix l = random_matrix(m, m, 3);
  const Matrix s = random_matrix(m, m, 4);
  Matrix y = Matrix::Zero(m, m);
  for (auto _ : state) {
    double r;
    if constexpr (Parallel)
      r = kn::parallel::dual_update(lrml::flat(d), lrml::flat(l),
                                    lrml::flat(s), 1e-6, lrml::flat(y));
    else
      r = kn::serial::dual_update(lrml::flat(d), lrml::flat(l), lrml::flat(s),
                                  1e-6, lrml::flat(y));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_DualUpdate<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_DualUpdate<true>)->Arg(256)->Arg(1024);

template <bool Parallel>
void BM_Restrict(benchmark::State& state) {
  const Index n = state.range(0);
  const lrml::RestrictionChain chain = lrml::build_chain(n, (n + 1) / 2, true);
  const lrml::SparseMatrix& r = chain.composite();
  const kn::CscView view{
      r.rows(), r.cols(),
      {r.outerIndexPtr(), static_cast<std::size_t>(r.cols() + 1)},
      {r.innerIndexPtr(), static_cast<std::size_t>(r.nonZeros())},
      {r.valuePtr(), static_cast<std::size_t>(r.nonZeros())}};
  const Matrix x = random_matrix(2000, n, 5);
  Matrix out(2000, r.cols());
  for (auto _ : state) {
    if constexpr (Parallel)
      kn::parallel::right_multiply(lrml::flat(x), 2000, view, lrml::flat(out));
    else
      kn::serial::right_multiply(lrml::flat(x), 2000, view, lrml::flat(out));
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Restrict<false>)->Arg(512);
BENCHMARK(BM_Restrict<true>)->Arg(512);

void BM_SvdTruncated(benchmark::State& state) {
  const auto method = static_cast<lrml::SvdMethod>(state.range(0));
  const Index r = state.range(1);
  const lrml::SyntheticProblem p = lrml::synth_rpca(2000, 512, 5, 0.05, 6);
  for (auto _ : state) {
    const lrml::SvdFactors f = lrml::svd_truncated(p.d, r, method);
    benchmark::DoNotOptimize(f.sigma.data());
  }
}
BENCHMARK(BM_SvdTruncated)
    ->ArgNames({"method", "rank"})
    ->Args({static_cast<int>(lrml::SvdMethod::kDense), 5})
    ->Args({static_cast<int>(lrml::SvdMethod::kLanczos), 1})
    ->Args({static_cast<int>(lrml::SvdMethod::kLanczos), 5})
    ->Args({static_cast<int>(lrml::SvdMethod::kLanczos), 20})
    ->Unit(benchmark::kMillisecond);

void BM_IalmVsMlIalm(benchmark::State& state) {
  const bool ml = state.range(0) != 0;
  const lrml::RestrictionChain chain = lrml::build_chain(512, 4, true);
  const lrml::SyntheticProblem p =
      lrml::synth_rpca_coarse(2000, 2, 0.05, 7, chain);
  lrml::PcpOptions o;
  o.rank_guess = 2;
  for (auto _ : state) {
    const lrml::PcpResult r =
        ml ? lrml::ml_ialm_solve(p.d, o) : lrml::ialm_solve(p.d, o);
    state.counters["iterations"] = r.iterations;
  }
}
BENCHMARK(BM_IalmVsMlIalm)->ArgName("ml")->Arg(0)->Arg(1)->Unit(
    benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
