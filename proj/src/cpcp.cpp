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
#include "lrml/cpcp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lrml/errors.hpp"
#include "lrml/kernels.hpp"

namespace lrml {
namespace {

namespace kp = kernels::parallel;

void check_shapes(const Matrix& d, const ObservationMask& mask) {
  if (d.rows() != mask.rows || d.cols() != mask.cols)
    throw InvalidArgument("cpcp: D is " + std::to_string(d.rows()) + "x" +
                          std::to_string(d.cols()) + " but the mask is " +
                          std::to_string(mask.rows) + "x" +
                          std::to_string(mask.cols));
}

// P[L + S - D]
Matrix residual(const CpcpState& st, const Matrix& d,
                const ObservationMask& mask) {
  Matrix g(d.rows(), d.cols());
  kp::masked_residual(flat(st.l), flat(st.s), flat(d), mask.view(), flat(g));
  return g;
}

// argmin over [0, 1] of g x + a x^2 / 2.
double line_min(double g, double a) {
  if (a > 0.0) return std::clamp(-g / a, 0.0, 1.0);
  return g < 0.0 ? 1.0 : 0.0;
}

void invariant(bool ok, const char* what, int iter) {
  if (!ok)
    throw ConstraintViolation(std::string("cpcp invariant failed at iteration ") +
                              std::to_string(iter) + ": " + what);
}

template <typename NuclearOracle>
CpcpResult run_fw(const Matrix& d, const ObservationMask& mask,
                  const CpcpOptions& opts, NuclearOracle&& nuclear) {
  Stopwatch clock;
  const Index m = d.rows();
  const Index n = d.cols();

  CpcpResult res;
  res.lambda_l = opts.lambda_l.value_or(default_cpcp_lambda_l());
  res.lambda_s =
      opts.lambda_s.value_or(default_cpcp_lambda_s(m, n, res.lambda_l));
  const double lam_l = res.lambda_l;
  const double lam_s = res.lambda_s;

  CpcpState& st = res.state;
  st.l = Matrix::Zero(m, n);
  st.s = Matrix::Zero(m, n);
  const Bounds b = initial_bounds(d, mask, lam_l, lam_s);
  st.u_l = b.u_l;
  st.u_s = b.u_s;
  res.diameter = b.diameter;

  const double pd_norm = std::sqrt(2.0 * b.u_l * lam_l);
  auto gap_of = [&](const Matrix& g) {
    return pd_norm > 0.0 ? std::sqrt(kp::sum_squares(flat(g))) / pd_norm : 0.0;
  };

  double f = cpcp_objective(st, d, mask, lam_l, lam_s);
  res.history.push_back({0, pd_norm > 0.0 ? 1.0 : 0.0, f, 0, 0.0,
                         clock.seconds()});
  if (f == 0.0) {
    res.status = SolveStatus::kConverged;
    return res;
  }

  res.status = SolveStatus::kMaxIterations;
  for (int k = 0; k < opts.max_iters; ++k) {
    const double f_prev = f;
    const double u_l_prev = st.u_l;
    const double u_s_prev = st.u_s;

    const Matrix g = residual(st, d, mask);
    const Oracle ol = nuclear(g);
    const Oracle os = l1_lmo(g, 1.0);
    const Vertex vl = corner_select(ol.value, lam_l, st.u_l, ol.m);
    const Vertex vs = corner_select(os.value, lam_s, st.u_s, os.m);
    segment_qp(st, vl.v, vl.v_t, vs.v, vs.v_t, d, mask, lam_l, lam_s);
    threshold_step(st, d, mask, lam_s);
    update_bounds(st, d, mask, lam_l, lam_s);
    st.iter = k + 1;
    f = cpcp_objective(st, d, mask, lam_l, lam_s);

    if (opts.check_invariants) {
      const double slack = 1e-8;
      invariant(f <= f_prev + 1e-12 * std::max(1.0, f_prev),
                "objective increased", st.iter);
      invariant(st.u_l <= u_l_prev && st.u_s <= u_s_prev,
                "bounds increased", st.iter);
      invariant(st.t_l <= st.u_l + slack && st.t_s <= st.u_s + slack,
                "t exceeds its bound", st.iter);
      invariant(nuclear_norm(st.l) <= st.t_l + slack * std::max(1.0, st.t_l),
                "||L||_* exceeds t_L", st.iter);
      invariant(l1_norm(st.s) <= st.t_s + slack * std::max(1.0, st.t_s),
                "||S||_1 exceeds t_S", st.iter);
    }

    IterationRecord rec;
    rec.iter = st.iter;
    rec.feasibility_gap = gap_of(residual(st, d, mask));
    rec.objective = f;
    rec.rank_l = opts.track_rank ? numerical_rank(st.l) : -1;
    rec.sparsity_s = sparsity(st.s);
    rec.wall_seconds = clock.seconds();
    res.history.push_back(rec);
    res.iterations = st.iter;
    if (opts.observer) opts.observer(CpcpIterate{st.iter, st, ol.m, f});

    if (f == 0.0) {
      res.status = SolveStatus::kConverged;
      break;
    }
    const int w = opts.window;
    if (static_cast<int>(res.history.size()) > w) {
      const double f_old = res.history[res.history.size() - 1 - w].objective;
      if (f_old > 0.0 && (f_old - f) / f_old <= opts.tol) {
        res.status = SolveStatus::kConverged;
        break;
      }
    }
    if (opts.time_budget_seconds &&
        rec.wall_seconds >= *opts.time_budget_seconds) {
      res.status = SolveStatus::kTimeBudget;
      break;
    }
  }
  // Outside the timed loop.
  res.final_rank = numerical_rank(st.l);
  if (res.history.size() > 1) res.history.back().rank_l = res.final_rank;
  return res;
}

void prepare(const Matrix& d, const ObservationMask& mask,
             const CpcpOptions& opts) {
  opts.validate();
  check_shapes(d, mask);
  require_finite(d, "cpcp solve");
}

}  // namespace

void CpcpOptions::validate() const {
  if (lambda_l && !(*lambda_l > 0.0))
    throw InvalidArgument("cpcp: lambda_l must be > 0");
  if (lambda_s && !(*lambda_s > 0.0))
    throw InvalidArgument("cpcp: lambda_s must be > 0");
  if (!(tol > 0.0)) throw InvalidArgument("cpcp: tol must be > 0");
  if (window < 1) throw InvalidArgument("cpcp: window must be >= 1");
  if (max_iters < 1) throw InvalidArgument("cpcp: max_iters must be >= 1");
  if (rank_guess < 1) throw InvalidArgument("cpcp: rank_guess must be >= 1");
  if (time_budget_seconds && !(*time_budget_seconds > 0.0))
    throw InvalidArgument("cpcp: time budget must be > 0");
}

double default_cpcp_lambda_l() { return 0.01; }

double default_cpcp_lambda_s(Index m, Index n, double lambda_l) {
  return lambda_l / std::sqrt(static_cast<double>(std::max(m, n)));
}

Bounds initial_bounds(const Matrix& d, const ObservationMask& mask,
                      double lambda_l, double lambda_s) {
  check_shapes(d, mask);
  if (!(lambda_l > 0.0) || !(lambda_s > 0.0))
    throw InvalidArgument("initial_bounds: lambdas must be > 0");
  const double sq = kp::sum_squares(flat(project_mask(d, mask)));
  Bounds b;
  b.u_l = sq / (2.0 * lambda_l);
  b.u_s = sq / (2.0 * lambda_s);
  b.diameter = std::sqrt(5.0) * std::hypot(b.u_l, b.u_s);
  return b;
}

double cpcp_objective(const CpcpState& state, const Matrix& d,
                      const ObservationMask& mask, double lambda_l,
                      double lambda_s) {
  check_shapes(d, mask);
  const Matrix g = residual(state, d, mask);
  return 0.5 * kp::sum_squares(flat(g)) + lambda_l * state.t_l +
         lambda_s * state.t_s;
}

Oracle nuclear_lmo(const Matrix& g, double radius) {
  if (radius < 0.0) throw InvalidArgument("nuclear_lmo: radius must be >= 0");
  Oracle o{Matrix::Zero(g.rows(), g.cols()), 0.0};
  if (radius == 0.0 || g.isZero(0.0)) return o;
  // Only the leading pair is needed, so Lanczos wins even on small matrices.
  const SvdFactors f = svd_truncated(g, 1, SvdMethod::kLanczos);
  o.m.noalias() = (-radius) * f.u.col(0) * f.v.col(0).transpose();
  o.value = -radius * f.sigma[0];
  return o;
}

Oracle l1_lmo(const Matrix& g, double radius) {
  if (radius < 0.0) throw InvalidArgument("l1_lmo: radius must be >= 0");
  Oracle o{Matrix::Zero(g.rows(), g.cols()), 0.0};
  const kernels::ArgMaxAbs best = kp::argmax_abs(flat(g));
  if (radius == 0.0 || best.magnitude == 0.0) return o;
  const double gk = g.data()[best.index];
  o.m.data()[best.index] = gk > 0.0 ? -radius : radius;
  o.value = -radius * best.magnitude;
  return o;
}

Vertex corner_select(double grad_inner, double lambda, double u,
                     const Matrix& m) {
  if (u < 0.0) throw InvalidArgument("corner_select: u must be >= 0");
  if (lambda >= -grad_inner) return {Matrix::Zero(m.rows(), m.cols()), 0.0};
  return {u * m, u};
}

SegmentStep segment_qp(CpcpState& state, const Matrix& v_l, double v_tl,
                       const Matrix& v_s, double v_ts, const Matrix& d,
                       const ObservationMask& mask, double lambda_l,
                       double lambda_s) {
  check_shapes(d, mask);
  const Matrix g = residual(state, d, mask);
  const Matrix dl = v_l - state.l;
  const Matrix ds = v_s - state.s;
  Matrix pdl(dl.rows(), dl.cols());
  Matrix pds(ds.rows(), ds.cols());
  kp::project_mask(flat(dl), mask.view(), flat(pdl));
  kp::project_mask(flat(ds), mask.view(), flat(pds));

  // f(gamma) - f(0) = gl x + gs y + (a x^2 + 2 b x y + c y^2) / 2
  const double a = kp::sum_squares(flat(pdl));
  const double bb = kp::dot(flat(pdl), flat(pds));
  const double c = kp::sum_squares(flat(pds));
  const double gl = kp::dot(flat(g), flat(dl)) + lambda_l * (v_tl - state.t_l);
  const double gs = kp::dot(flat(g), flat(ds)) + lambda_s * (v_ts - state.t_s);
  auto q = [&](double x, double y) {
    return gl * x + gs * y + 0.5 * (a * x * x + 2.0 * bb * x * y + c * y * y);
  };

  // The minimum of a convex quadratic on the box is interior or on an edge,
  // and each edge minimizer is a clamped 1-D step.
  std::array<SegmentStep, 6> cand = {{
      {0.0, 0.0},
      {line_min(gl, a), 0.0},
      {line_min(gl + bb, a), 1.0},
      {0.0, line_min(gs, c)},
      {1.0, line_min(gs + bb, c)},
      {-1.0, -1.0},
  }};
  const double det = a * c - bb * bb;
  if (det > 0.0) {
    const double x = (-gl * c + bb * gs) / det;
    const double y = (-gs * a + bb * gl) / det;
    if (x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0) cand[5] = {x, y};
  }
  SegmentStep best = cand[0];
  double best_q = 0.0;
  for (const SegmentStep& s : cand) {
    if (s.gamma_l < 0.0) continue;
    const double v = q(s.gamma_l, s.gamma_s);
    if (v < best_q) {
      best_q = v;
      best = s;
    }
  }

  if (best.gamma_l > 0.0) {
    state.l = (1.0 - best.gamma_l) * state.l + best.gamma_l * v_l;
    state.t_l = (1.0 - best.gamma_l) * state.t_l + best.gamma_l * v_tl;
  }
  if (best.gamma_s > 0.0) {
    state.s = (1.0 - best.gamma_s) * state.s + best.gamma_s * v_s;
    state.t_s = (1.0 - best.gamma_s) * state.t_s + best.gamma_s * v_ts;
  }
  return best;
}

void threshold_step(CpcpState& state, const Matrix& d,
                    const ObservationMask& mask, double lambda_s) {
  check_shapes(d, mask);
  Matrix work = residual(state, d, mask);
  work = state.s - work;
  kp::soft_threshold(flat(work), lambda_s, flat(state.s));
  state.t_s = kp::abs_sum(flat(state.s));
}

void update_bounds(CpcpState& state, const Matrix& d,
                   const ObservationMask& mask, double lambda_l,
                   double lambda_s) {
  const double f = cpcp_objective(state, d, mask, lambda_l, lambda_s);
  state.u_l = std::min(state.u_l, f / lambda_l);
  state.u_s = std::min(state.u_s, f / lambda_s);
}

CpcpResult fwt_solve(const Matrix& d, const ObservationMask& mask,
                     const CpcpOptions& opts) {
  prepare(d, mask, opts);
  return run_fw(d, mask, opts,
                [](const Matrix& g) { return nuclear_lmo(g, 1.0); });
}

Index resolve_cpcp_levels(Index m, Index n, const CpcpOptions& opts) {
  if (opts.levels) {
    validate_coarse_size(n, *opts.levels, opts.rank_guess, m);
    return *opts.levels;
  }
  return select_levels(n, opts.rank_guess, 1, m);
}

CpcpResult ml_fwt_solve(const Matrix& d, const ObservationMask& mask,
                        const CpcpOptions& opts) {
  prepare(d, mask, opts);
  const Index n_h = resolve_cpcp_levels(d.rows(), d.cols(), opts);
  const CoarseOperator op(build_chain(d.cols(), n_h, /*normalize=*/true),
                          opts.coarse_basis);
  const double radius = 1.0 / op.spectral_norm();

  auto oracle = [&](const Matrix& g) {
    Oracle coarse = nuclear_lmo(op.restrict(g), radius);
    return Oracle{op.prolong(coarse.m), coarse.value};
  };
  CpcpResult res = run_fw(d, mask, opts, oracle);
  res.n_coarse = n_h;
  return res;
}

}  // namespace lrml
