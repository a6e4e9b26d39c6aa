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

// Inexact augmented Lagrangian solvers for
//
//   min ||L||_* + lambda ||S||_1   s.t.  D = L + S.
//
// Each iteration:
//   M  = D - S + Y / mu
//   L  = U S_{1/mu}[Sigma] V^T            with U Sigma V^T = svd(M)
//   S  = S_{lambda/mu}[D - L + Y / mu]
//   Y += mu (D - L - S)
//   mu *= rho
//
// ml_ialm_solve replaces the L-step by a thresholded SVD of the m x n_H
// matrix M B followed by prolongation L = L_H B^T, where B is the coarse
// operator (see CoarseOperator).

#ifndef LRML_PCP_HPP_
#define LRML_PCP_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "lrml/matrix.hpp"
#include "lrml/multilevel.hpp"
#include "lrml/telemetry.hpp"

namespace lrml {

// State handed to PcpOptions::observer after every iteration.
struct PcpIterate {
  int iter;
  const Matrix& l;
  const Matrix& s;
  const Matrix& y;
  double mu;  // the mu used by this iteration
  double lambda;
};

struct PcpOptions {
  // Defaults resolved per problem: lambda = 1/sqrt(max(m, n)),
  // mu0 = 1.25 / ||D||_2.
  std::optional<double> lambda;
  std::optional<double> mu0;
  double rho = 1.5;
  double tol_feasibility = 1e-7;
  int max_iters = 1000;
  Index rank_guess = 1;
  // Explicit coarse size for ml_ialm_solve; chosen by select_levels if unset.
  std::optional<Index> levels;
  // Cap on the truncated-SVD rank of ialm_solve; 0 means min(m, n).
  Index svd_budget = 0;
  bool collect_diagnostics = false;
  // Stop after the first iteration that ends past this many seconds.
  std::optional<double> time_budget_seconds;
  CoarseBasis coarse_basis = CoarseBasis::kOrthonormal;
  std::function<void(const PcpIterate&)> observer;

  void validate() const;
};

struct PcpResult {
  Matrix l;
  Matrix s;
  Matrix y;
  double lambda = 0.0;
  double mu = 0.0;  // next mu, after the last update
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::vector<IterationRecord> history;
  std::vector<double> mu_history;  // mu used at each iteration
  Index n_coarse = 0;               // 0 for the single-level solver
  std::optional<MultilevelDiagnostics> diagnostics;

  bool converged() const { return status == SolveStatus::kConverged; }
};

double default_pcp_lambda(Index m, Index n);

PcpResult ialm_solve(const Matrix& d, const PcpOptions& opts = {});

// Throws ConstraintViolation when no admissible coarse level exists.
PcpResult ml_ialm_solve(const Matrix& d, const PcpOptions& opts = {});

// Coarse size ml_ialm_solve would use for a given shape.
Index resolve_pcp_levels(Index m, Index n, const PcpOptions& opts);

}  // namespace lrml

#endif  // LRML_PCP_HPP_
