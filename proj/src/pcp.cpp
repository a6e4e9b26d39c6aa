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

#include "lrml/pcp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrml/errors.hpp"
#include "lrml/kernels.hpp"

namespace lrml {
namespace {

namespace kp = kernels::parallel;

struct LStep {
  Index rank = 0;
  double nuclear = 0.0;  // ||L||_*
};

double shrunk_sum(const Vector& sigma, Index rank, double tau) {
  double acc = 0.0;
  for (Index i = 0; i < rank; ++i) acc += sigma[i] - tau;
  return acc;
}

// Shared augmented Lagrangian loop; l_step(M, tau, L) overwrites L with the
// L-update for the shifted matrix M and threshold tau = 1/mu.
template <typename LStepFn>
PcpResult run_alm(const Matrix& d, const PcpOptions& opts, LStepFn&& l_step) {
  opts.validate();
  require_finite(d, "pcp solve");
  Stopwatch clock;
  const Index m = d.rows();
  const Index n = d.cols();

  PcpResult res;
  res.lambda = opts.lambda.value_or(default_pcp_lambda(m, n));
  const double lambda = res.lambda;
  const double d_norm = std::sqrt(kp::sum_squares(flat(d)));

  if (d_norm == 0.0) {
    res.l = Matrix::Zero(m, n);
    res.s = Matrix::Zero(m, n);
    res.y = Matrix::Zero(m, n);
    res.iterations = 1;
    res.status = SolveStatus::kConverged;
    res.mu = opts.mu0.value_or(1.0);
    res.mu_history.push_back(res.mu);
    res.history.push_back({1, 0.0, 0.0, 0, 0.0, clock.seconds()});
    return res;
  }

  const double sigma1 = spectral_norm(d);
  double mu = opts.mu0.value_or(1.25 / sigma1);
  const double dual_scale =
      std::max(sigma1, d.lpNorm<Eigen::Infinity>() / lambda);
  Matrix y = d / dual_scale;
  Matrix s = Matrix::Zero(m, n);
  Matrix l = Matrix::Zero(m, n);
  Matrix work(m, n);

  res.status = SolveStatus::kMaxIterations;
  for (int k = 1; k <= opts.max_iters; ++k) {
    const double inv_mu = 1.0 / mu;
    kp::shifted_difference(flat(d), flat(s), inv_mu, flat(y), flat(work));
    const LStep ls = l_step(work, inv_mu, l);

    kp::shifted_difference(flat(d), flat(l), inv_mu, flat(y), flat(work));
    kp::soft_threshold(flat(work), lambda * inv_mu, flat(s));
    const double gap =
        std::sqrt(kp::dual_update(flat(d), flat(l), flat(s), mu, flat(y))) /
        d_norm;

    IterationRecord rec;
    rec.iter = k;
    rec.feasibility_gap = gap;
    rec.objective = ls.nuclear + lambda * kp::abs_sum(flat(s));
    rec.rank_l = ls.rank;
    rec.sparsity_s = sparsity(s);
    rec.wall_seconds = clock.seconds();
    res.history.push_back(rec);
    res.mu_history.push_back(mu);
    res.iterations = k;
    if (opts.observer) opts.observer(PcpIterate{k, l, s, y, mu, lambda});

    mu *= opts.rho;
    if (gap <= opts.tol_feasibility) {
      res.status = SolveStatus::kConverged;
      break;
    }
    if (opts.time_budget_seconds &&
        rec.wall_seconds >= *opts.time_budget_seconds) {
      res.status = SolveStatus::kTimeBudget;
      break;
    }
  }
  res.mu = mu;
  res.l = std::move(l);
  res.s = std::move(s);
  res.y = std::move(y);
  return res;
}

}  // namespace

void PcpOptions::validate() const {
  if (lambda && !(*lambda > 0.0))
    throw InvalidArgument("pcp: lambda must be > 0");
  if (mu0 && !(*mu0 > 0.0)) throw InvalidArgument("pcp: mu0 must be > 0");
  if (!(rho > 1.0)) throw InvalidArgument("pcp: rho must be > 1");
  if (!(tol_feasibility > 0.0))
    throw InvalidArgument("pcp: tol_feasibility must be > 0");
  if (max_iters < 1) throw InvalidArgument("pcp: max_iters must be >= 1");
  if (rank_guess < 1) throw InvalidArgument("pcp: rank_guess must be >= 1");
  if (svd_budget < 0) throw InvalidArgument("pcp: svd_budget must be >= 0");
  if (time_budget_seconds && !(*time_budget_seconds > 0.0))
    throw InvalidArgument("pcp: time budget must be > 0");
}

double default_pcp_lambda(Index m, Index n) {
  return 1.0 / std::sqrt(static_cast<double>(std::max(m, n)));
}

PcpResult ialm_solve(const Matrix& d, const PcpOptions& opts) {
  const Index kmax = std::min(d.rows(), d.cols());
  const Index cap =
      opts.svd_budget > 0 ? std::min(opts.svd_budget, kmax) : kmax;
  Index predicted = std::min(opts.rank_guess + 1, cap);

  auto l_step = [&](const Matrix& shifted, double tau, Matrix& l) {
    SvdFactors f;
    if (kmax <= kDenseSvdLimit) {
      f = svd_full(shifted);
    } else {
      // Grow the truncated rank until the smallest computed value falls
      // below the threshold, so the thresholding is exact. Restarted Lanczos
      // runs stop paying off once their Krylov steps add up to min(m, n);
      // a dense factorization finishes the step from there.
      Index r = std::max<Index>(1, predicted);
      Index krylov_steps = 0;
      for (;;) {
        if (krylov_steps > kmax) {
          f = svd_truncated(shifted, cap, SvdMethod::kDense);
          break;
        }
        f = svd_truncated(shifted, r);
        krylov_steps += std::min(kmax, 2 * r + 16);
        if (r >= cap || f.sigma[r - 1] <= tau) break;
        r = std::min(r + 5, cap);
      }
    }
    Thresholded t = svt(f, tau);
    l = std::move(t.value);
    predicted = std::min(t.rank + 1, cap);
    return LStep{t.rank, shrunk_sum(f.sigma, t.rank, tau)};
  };
  return run_alm(d, opts, l_step);
}

Index resolve_pcp_levels(Index m, Index n, const PcpOptions& opts) {
  if (opts.levels) {
    validate_coarse_size(n, *opts.levels, opts.rank_guess, m);
    return *opts.levels;
  }
  return select_levels(n, opts.rank_guess, opts.rank_guess, m);
}

PcpResult ml_ialm_solve(const Matrix& d, const PcpOptions& opts) {
  opts.validate();
  require_finite(d, "ml_ialm_solve");
  const Index n_h = resolve_pcp_levels(d.rows(), d.cols(), opts);
  const CoarseOperator op(build_chain(d.cols(), n_h, /*normalize=*/true),
                          opts.coarse_basis);
  const bool orthonormal = op.basis() == CoarseBasis::kOrthonormal;

  std::vector<Matrix> coarse_iterates;
  Matrix last_coarse = Matrix::Zero(d.rows(), n_h);

  auto l_step = [&](const Matrix& shifted, double tau, Matrix& l) {
    const SvdFactors f = svd_full(op.restrict(shifted));
    Thresholded t = svt(f, tau);
    l = op.prolong(t.value);
    LStep out{t.rank, shrunk_sum(f.sigma, t.rank, tau)};
    if (!orthonormal && t.rank > 0) {
      // ||U diag(s) V^T B^T||_* = ||diag(s) (B V)^T||_*, an r x n problem.
      const Vector shrunk = f.sigma.head(t.rank).array() - tau;
      const Matrix lifted =
          shrunk.asDiagonal() * op.prolong(f.v.leftCols(t.rank).transpose());
      out.nuclear = svd_full(lifted).sigma.sum();
    }
    if (opts.collect_diagnostics) coarse_iterates.push_back(t.value);
    last_coarse = std::move(t.value);
    return out;
  };

  PcpResult res = run_alm(d, opts, l_step);
  res.n_coarse = n_h;

  if (opts.collect_diagnostics) {
    MultilevelDiagnostics diag;
    diag.epsilon = epsilon_bound(last_coarse, op.singular_values());
    // The optimal coarse iterate is unknown; the restriction of the final L
    // stands in for it.
    const Matrix reference = op.restrict(res.l);
    const Matrix shift =
        op.gram() - Matrix::Identity(n_h, n_h);
    for (const Matrix& lh : coarse_iterates) {
      const double delta = (lh * shift).cwiseProduct(lh - reference).sum();
      diag.delta_history.push_back(delta);
      diag.delta_max = std::max(diag.delta_max, delta);
    }
    res.diagnostics = std::move(diag);
  }
  return res;
}

}  // namespace lrml
