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

// Frank-Wolfe thresholding for compressive PCP,
//
//   min 1/2 ||P[L + S - D]||_F^2 + lambda_L ||L||_* + lambda_S ||S||_1,
//
// posed over the epigraph variables (L, S, t_L, t_S) with
// ||L||_* <= t_L <= U_L and ||S||_1 <= t_S <= U_S, where P zeroes the
// unobserved entries. The smooth objective is
//
//   f = 1/2 ||P[L + S - D]||_F^2 + lambda_L t_L + lambda_S t_S.
//
// ml_fwt_solve swaps the nuclear-norm oracle for one computed on the
// restricted gradient G R and lifted back with R^T.

#ifndef LRML_CPCP_HPP_
#define LRML_CPCP_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "lrml/mask.hpp"
#include "lrml/matrix.hpp"
#include "lrml/multilevel.hpp"
#include "lrml/telemetry.hpp"

namespace lrml {

struct CpcpState {
  Matrix l;
  Matrix s;
  double t_l = 0.0;
  double t_s = 0.0;
  double u_l = 0.0;
  double u_s = 0.0;
  int iter = 0;
};

// Passed to CpcpOptions::observer after every iteration.
struct CpcpIterate {
  int iter;
  const CpcpState& state;
  const Matrix& m_l;  // nuclear oracle output at unit radius (lifted for ML)
  double objective;
};

struct CpcpOptions {
  // Defaults: lambda_l = 0.01, lambda_s = lambda_l / sqrt(max(m, n)).
  std::optional<double> lambda_l;
  std::optional<double> lambda_s;
  // Stop when (f[k - window] - f[k]) / f[k - window] <= tol.
  double tol = 1e-3;
  int window = 5;
  int max_iters = 1000;
  Index rank_guess = 1;
  std::optional<Index> levels;
  std::optional<double> time_budget_seconds;
  // Compute rank(L) for every history record (one SVD of L per iteration).
  bool track_rank = false;
  // Throw ConstraintViolation when a feasibility or descent invariant fails.
  bool check_invariants = false;
  CoarseBasis coarse_basis = CoarseBasis::kInterpolation;
  std::function<void(const CpcpIterate&)> observer;

  void validate() const;
};

struct CpcpResult {
  CpcpState state;
  double lambda_l = 0.0;
  double lambda_s = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  // Record 0 is the starting point; feasibility_gap is measured on the mask.
  std::vector<IterationRecord> history;
  double diameter = 0.0;
  Index n_coarse = 0;
  Index final_rank = 0;

  bool converged() const { return status == SolveStatus::kConverged; }
  const Matrix& l() const { return state.l; }
  const Matrix& s() const { return state.s; }
};

struct Bounds {
  double u_l = 0.0;
  double u_s = 0.0;
  double diameter = 0.0;  // sqrt(5) sqrt(U_L^2 + U_S^2)
};

struct Oracle {
  Matrix m;
  double value = 0.0;  // <G, m>
};

struct Vertex {
  Matrix v;
  double v_t = 0.0;
};

struct SegmentStep {
  double gamma_l = 0.0;
  double gamma_s = 0.0;
};

double default_cpcp_lambda_l();
double default_cpcp_lambda_s(Index m, Index n, double lambda_l);

// U = ||P[D]||_F^2 / (2 lambda).
Bounds initial_bounds(const Matrix& d, const ObservationMask& mask,
                      double lambda_l, double lambda_s);

double cpcp_objective(const CpcpState& state, const Matrix& d,
                      const ObservationMask& mask, double lambda_l,
                      double lambda_s);

// argmin <G, M> over ||M||_* <= radius: -radius u1 v1^T.
Oracle nuclear_lmo(const Matrix& g, double radius);

// argmin <G, M> over ||M||_1 <= radius: -radius sign(g_k) e_k at the first
// largest |g_k| in column-major order.
Oracle l1_lmo(const Matrix& g, double radius);

// (0, 0) when lambda >= -grad_inner, otherwise (u M, u).
Vertex corner_select(double grad_inner, double lambda, double u,
                     const Matrix& m);

// Moves (L, t_L) toward (v_l, v_tl) and (S, t_S) toward (v_s, v_ts) by the
// exact minimizer of f over (gamma_L, gamma_S) in [0, 1]^2.
SegmentStep segment_qp(CpcpState& state, const Matrix& v_l, double v_tl,
                       const Matrix& v_s, double v_ts, const Matrix& d,
                       const ObservationMask& mask, double lambda_l,
                       double lambda_s);

// S = soft(S - P[L + S - D], lambda_s); t_S = ||S||_1.
void threshold_step(CpcpState& state, const Matrix& d,
                    const ObservationMask& mask, double lambda_s);

// U = f / lambda, never increasing.
void update_bounds(CpcpState& state, const Matrix& d,
                   const ObservationMask& mask, double lambda_l,
                   double lambda_s);

CpcpResult fwt_solve(const Matrix& d, const ObservationMask& mask,
                     const CpcpOptions& opts = {});

// Throws ConstraintViolation when no admissible coarse level exists.
CpcpResult ml_fwt_solve(const Matrix& d, const ObservationMask& mask,
                        const CpcpOptions& opts = {});

Index resolve_cpcp_levels(Index m, Index n, const CpcpOptions& opts);

}  // namespace lrml

#endif  // LRML_CPCP_HPP_
