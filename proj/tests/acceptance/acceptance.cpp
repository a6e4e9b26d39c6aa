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
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lrml/cpcp.hpp"
#include "lrml/errors.hpp"
#include "lrml/frames.hpp"
#include "lrml/io.hpp"
#include "lrml/matrix.hpp"
#include "lrml/multilevel.hpp"
#include "lrml/pcp.hpp"
#include "lrml/synthetic.hpp"
#include "oracles.hpp"

namespace {

using lrml::Index;
using lrml::Matrix;
using lrml::Vector;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double rel_err(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / b.norm();
}

// Soft threshold and singular value thresholding against their variational
// definitions.
Verdict ac1() {
  Verdict v;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> rows(3, 8);
  double st_err = 0.0, cert_err = 0.0, probe_gain = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Index m = rows(rng);
    const Index n = std::uniform_int_distribution<int>(3, std::min<int>(6, m))(rng);
    const Matrix x = oracle::random_matrix(m, n, rng);
    const Vector sx = oracle::singular_values_jacobi(x);
    const double tau = std::uniform_real_distribution<double>(0.0, sx[0])(rng);

    const Matrix y = lrml::soft_threshold(x, tau);
    for (Index k = 0; k < x.size(); ++k)
      st_err = std::max(st_err,
                        std::abs(y.data()[k] - oracle::prox_abs(x.data()[k], tau)));

    // Z minimizes tau ||Z||_* + ||Z - X||^2 / 2 iff W = (X - Z) / tau is a
    // subgradient of ||.||_* at Z: ||W||_2 <= 1 and <W, Z> = ||Z||_*.
    const Matrix z = lrml::svt(x, tau).value;
    const Matrix w = (x - z) / tau;
    const double zn = oracle::nuclear_jacobi(z);
    cert_err = std::max(cert_err, oracle::singular_values_jacobi(w)[0] - 1.0);
    cert_err = std::max(cert_err, std::abs(w.cwiseProduct(z).sum() - zn));

    // Random probes around Z never find a lower objective.
    auto obj = [&](const Matrix& c) {
      return tau * oracle::nuclear_jacobi(c) + 0.5 * (c - x).squaredNorm();
    };
    const double best = obj(z);
    for (double scale : {1e-1, 1e-3, 1e-5})
      for (int p = 0; p < 5; ++p) {
        const Matrix c = z + scale * oracle::random_matrix(m, n, rng);
        probe_gain = std::max(probe_gain, best - obj(c));
      }
  }
  v.require(st_err <= 1e-6, "soft_threshold off by " + num(st_err));
  v.require(cert_err <= 1e-6, "svt optimality certificate off by " + num(cert_err));
  v.require(probe_gain <= 1e-6, "probe improved svt objective by " + num(probe_gain));
  if (v.pass)
    v.detail = "200 instances; soft err " + num(st_err) + ", svt cert " +
               num(cert_err) + ", probe gain " + num(probe_gain);
  return v;
}

Verdict ac2() {
  Verdict v;
  Matrix worked(3, 6);
  worked << 2, 2, 1, 0, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 1, 2;
  worked *= 0.5;
  const Matrix r6(lrml::build_interpolation(6));
  v.require(r6.transpose() == worked, "R_6 differs from the worked example");
  v.require(Matrix(Matrix::Ones(4, 3) * r6.transpose()) == Matrix::Ones(4, 6),
            "ones(4x3) R_6^T != ones(4x6)");

  double worst_cond = 0.0, worst_sigma = 0.0, worst_inv = 0.0, worst_row = 0.0;
  for (Index n : {6, 8, 64, 400, 1024}) {
    const auto seq = oracle::halvings(n);
    const Index coarse = seq[seq.size() - 2];  // 2
    const lrml::RestrictionChain chain = lrml::build_chain(n, coarse, true);
    for (const auto& level : chain.levels()) {
      const Matrix f(level);
      worst_row = std::max(worst_row,
                           (f.rowwise().sum().array() - 1.0).abs().maxCoeff());
      const Vector s = oracle::singular_values_eig(f);
      worst_cond = std::max(worst_cond, s[0] / s[s.size() - 1]);
    }
    // Every intermediate coarse size as well, not only the deepest.
    for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
      const lrml::RestrictionChain c = lrml::build_chain(n, seq[i], true);
      const Matrix r = c.dense();
      worst_sigma = std::max(worst_sigma,
                             std::abs(oracle::singular_values_eig(r)[0] - 1.0));
      const Matrix pinv = r.completeOrthogonalDecomposition().pseudoInverse();
      const Index h = r.cols();
      worst_inv = std::max(
          worst_inv, (pinv * r - Matrix::Identity(h, h)).cwiseAbs().maxCoeff());
    }
  }
  v.require(worst_row == 0.0, "row sums off by " + num(worst_row));
  v.require(worst_cond <= 2.0, "level condition number " + num(worst_cond));
  v.require(worst_sigma <= 1e-10, "normalized sigma_1 off by " + num(worst_sigma));
  v.require(worst_inv <= 1e-10, "R^+ R - I = " + num(worst_inv));
  if (v.pass)
    v.detail = "max level cond " + num(worst_cond) + ", |sigma_1 - 1| " +
               num(worst_sigma) + ", |R^+R - I| " + num(worst_inv);
  return v;
}

Verdict ac3() {
  Verdict v;
  std::mt19937_64 rng(303);
  double upper = -1e300, lower = -1e300;
  const std::vector<Index> sizes{16, 24, 50, 64, 100};
  for (int t = 0; t < 200; ++t) {
    const Index n = sizes[rng() % sizes.size()];
    const auto seq = oracle::halvings(n);
    const Index h = seq[1 + rng() % (seq.size() - 2)];
    const lrml::RestrictionChain chain = lrml::build_chain(n, h, true);
    const Index m = 5 + static_cast<Index>(rng() % 20);
    const Index rank = 1 + static_cast<Index>(rng() % std::min(m, h));
    const Matrix lh = oracle::random_matrix(m, rank, rng) *
                      oracle::random_matrix(rank, h, rng);
    const double coarse = oracle::nuclear_jacobi(lh);
    const double fine = oracle::nuclear_jacobi(chain.prolong(lh));
    const double eps = lrml::epsilon_bound(lh, chain);
    upper = std::max(upper, fine - coarse);
    lower = std::max(lower, coarse - eps - fine);
  }
  v.require(upper <= 1e-8, "||L_H R^T||_* exceeds ||L_H||_* by " + num(upper));
  v.require(lower <= 1e-8, "lower bound violated by " + num(lower));
  if (v.pass)
    v.detail = "200 pairs; max upper slack " + num(upper) + ", max lower slack " +
               num(lower);
  return v;
}

Verdict ac4() {
  Verdict v;
  std::mt19937_64 rng(404);
  double worst = -1e300;
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 7);
    const Index m = n + static_cast<Index>(rng() % 5);
    const Index p = 1 + static_cast<Index>(rng() % 9);
    const Matrix a = oracle::random_matrix(m, n, rng);
    const Matrix b = oracle::random_matrix(n, p, rng);
    const Vector sa = oracle::singular_values_jacobi(a);
    Vector sb = Vector::Zero(n);
    const Vector sbr = oracle::singular_values_jacobi(b);
    sb.head(sbr.size()) = sbr;  // sigma_i(B) = 0 for i > min(n, p)
    const Vector sab = oracle::singular_values_jacobi(a * b);
    double lo = 0, mid = 0, hi = 0;
    // sigma_k(AB) = 0 past n, where both sides of the bound also vanish.
    for (Index k = 0; k < std::min(sab.size(), n); ++k) {
      lo += sa[k] * sb[n - 1 - k];
      mid += sab[k];
      hi += sa[k] * sb[k];
      worst = std::max({worst, lo - mid, mid - hi});
    }
  }
  v.require(worst <= 1e-8, "inequality violated by " + num(worst));
  if (v.pass) v.detail = "200 pairs, all k; max violation " + num(worst);
  return v;
}

Verdict ac5() {
  Verdict v;
  const lrml::SyntheticProblem p = lrml::synth_rpca(200, 100, 2, 0.05, 505);
  lrml::PcpOptions o;
  o.lambda = 1.0 / std::sqrt(200.0);
  o.max_iters = 100;
  const lrml::PcpResult r = lrml::ialm_solve(p.d, o);
  const double gap = r.history.back().feasibility_gap;
  const double err = rel_err(r.l, p.l_truth);
  v.require(r.converged() && gap <= 1e-7, "gap " + num(gap) + " after " +
                                              std::to_string(r.iterations));
  v.require(err <= 1e-4, "L error " + num(err));
  if (v.pass)
    v.detail = std::to_string(r.iterations) + " iterations, gap " + num(gap) +
               ", L error " + num(err);
  return v;
}

Verdict ac6() {
  Verdict v;
  const Index m = 2000, n = 512, rank = 2;
  const Index n_h = lrml::select_levels(n, rank, rank, m);
  const lrml::RestrictionChain chain = lrml::build_chain(n, n_h, true);
  const lrml::SyntheticProblem p =
      lrml::synth_rpca_coarse(m, rank, 0.05, 606, chain);

  lrml::PcpOptions o;
  o.rank_guess = rank;
  const lrml::PcpResult ml = lrml::ml_ialm_solve(p.d, o);
  const lrml::PcpResult base = lrml::ialm_solve(p.d, o);
  const double gap = ml.history.back().feasibility_gap;
  const double err = rel_err(ml.l, p.l_truth);
  const double t_ml = ml.history.back().wall_seconds / ml.iterations;
  const double t_base = base.history.back().wall_seconds / base.iterations;
  v.require(gap <= 1e-4, "ML gap " + num(gap));
  v.require(err <= 1e-3, "ML L error " + num(err));
  v.require(t_ml <= 0.5 * t_base,
            "per-iteration " + num(t_ml) + "s vs " + num(t_base) + "s");
  if (v.pass)
    v.detail = "n_H=" + std::to_string(ml.n_coarse) + ", gap " + num(gap) +
               ", L error " + num(err) + ", per-iteration " + num(t_ml) +
               "s vs " + num(t_base) + "s";
  return v;
}

Verdict ac7() {
  Verdict v;
  const lrml::SyntheticProblem p = lrml::synth_rpca(50, 40, 2, 0.05, 707);
  const lrml::ObservationMask full = lrml::ObservationMask::full(50, 40);
  lrml::CpcpOptions ref_opts;
  ref_opts.max_iters = 100000;
  ref_opts.tol = 1e-300;
  const lrml::CpcpResult ref = lrml::fwt_solve(p.d, full, ref_opts);
  const double f_ref = ref.history.back().objective;

  lrml::CpcpOptions o;
  o.max_iters = 500;
  o.tol = 1e-300;
  const lrml::CpcpResult r = lrml::fwt_solve(p.d, full, o);
  const double d2 = r.diameter * r.diameter;
  double worst = -1e300;
  int checked = 0;
  for (const auto& rec : r.history) {
    if (rec.iter > 500) break;
    const double envelope = 2.0 * 2.0 * d2 / (rec.iter + 2.0);
    worst = std::max(worst, (rec.objective - f_ref) - envelope);
    ++checked;
  }
  v.require(worst <= 0.0, "envelope exceeded by " + num(worst));
  if (v.pass)
    v.detail = std::to_string(checked) + " iterates, reference after " +
               std::to_string(ref.iterations) + " iterations, f_ref " +
               num(f_ref) + ", tightest margin " + num(-worst);
  return v;
}

Verdict ac8() {
  Verdict v;
  int runs = 0, iters = 0;
  for (std::uint64_t seed : {801, 802, 803, 804, 805}) {
    const std::optional<double> frac =
        seed % 2 ? std::optional<double>(0.75) : std::nullopt;
    const lrml::SyntheticProblem p =
        lrml::synth_rpca(120, 64, 2, 0.05, seed, frac);
    const lrml::ObservationMask mask =
        p.mask ? *p.mask : lrml::ObservationMask::full(120, 64);
    for (bool ml : {false, true}) {
      lrml::CpcpOptions o;
      o.check_invariants = true;
      o.max_iters = 300;
      o.lambda_l = seed % 3 ? 0.01 : 0.1;
      try {
        const lrml::CpcpResult r = ml ? lrml::ml_fwt_solve(p.d, mask, o)
                                      : lrml::fwt_solve(p.d, mask, o);
        for (std::size_t k = 1; k < r.history.size(); ++k)
          v.require(r.history[k].objective <= r.history[k - 1].objective,
                    "objective rose at iteration " + std::to_string(k));
        iters += r.iterations;
      } catch (const lrml::ConstraintViolation& e) {
        v.require(false, e.what());
      }
      ++runs;
    }
  }
  if (v.pass)
    v.detail = std::to_string(runs) + " instrumented runs, " +
               std::to_string(iters) + " iterations checked";
  return v;
}

Verdict ac9() {
  Verdict v;
  double worst = 0.0;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(900 + seed);
    const Index m = 40 + static_cast<Index>(rng() % 40);
    const Index n = 16 + static_cast<Index>(rng() % 24);
    const lrml::SyntheticProblem p =
        lrml::synth_rpca(m, n, 2, 0.05, 900 + seed, 0.8);
    lrml::CpcpOptions o;
    o.max_iters = 40;
    o.observer = [&](const lrml::CpcpIterate& it) {
      worst = std::max(worst, oracle::nuclear_jacobi(it.m_l));
      ++checked;
    };
    lrml::ml_fwt_solve(p.d, *p.mask, o);
  }
  v.require(worst <= 1.0 + 1e-8, "||M_L||_* reached " + num(worst));
  if (v.pass)
    v.detail = "20 runs, " + std::to_string(checked) +
               " oracle calls, max ||M_L||_* " + num(worst);
  return v;
}

Verdict ac10() {
  Verdict v;
  const lrml::SyntheticProblem p =
      lrml::synth_rpca(2000, 500, 2, 0.05, 1010, 0.75);
  lrml::CpcpOptions o;
  o.tol = 1e-3;
  o.rank_guess = 2;
  const lrml::CpcpResult base = lrml::fwt_solve(p.d, *p.mask, o);
  const lrml::CpcpResult ml = lrml::ml_fwt_solve(p.d, *p.mask, o);
  const double t_base = base.history.back().wall_seconds;
  const double t_ml = ml.history.back().wall_seconds;
  const double f_base = base.history.back().objective;
  const double f_ml = ml.history.back().objective;
  const double rel = std::abs(f_ml - f_base) / std::min(f_ml, f_base);
  v.require(base.converged() && ml.converged(), "a solver did not converge");
  v.require(t_ml < t_base, "ML-FWT " + num(t_ml) + "s vs FWT " + num(t_base) + "s");
  v.require(rel <= 0.10, "objectives differ by " + num(100 * rel) + "%");
  if (v.pass)
    v.detail = "FWT " + num(t_base) + "s/" + std::to_string(base.iterations) +
               " it, ML-FWT " + num(t_ml) + "s/" + std::to_string(ml.iterations) +
               " it (n_H=" + std::to_string(ml.n_coarse) + "), objective gap " +
               num(100 * rel) + "%";
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict ac11() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "lrml_acceptance_io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::mt19937_64 rng(1111);

  const Matrix x = oracle::random_matrix(100, 37, rng);
  lrml::save_matrix(x, dir / "x.lrml");
  const Matrix y = lrml::load_matrix(dir / "x.lrml");
  v.require(y.rows() == 100 && y.cols() == 37 &&
                std::memcmp(x.data(), y.data(), sizeof(double) * x.size()) == 0,
            ".lrml round trip not bit-exact");

  std::vector<fs::path> frames;
  for (int j = 0; j < 4; ++j) {
    const fs::path p = dir / ("in" + std::to_string(j) + ".pgm");
    std::ofstream out(p, std::ios::binary);
    out << "P5\n7 5\n255\n";
    for (int k = 0; k < 35; ++k) out.put(static_cast<char>(rng() % 256));
    out.close();
    frames.push_back(p);
  }
  const lrml::FrameStack st = lrml::ingest_frames(frames);
  const auto written = lrml::emit_frames(st, st.matrix,
                                         Matrix::Zero(st.matrix.rows(), 4),
                                         dir / "out");
  for (int j = 0; j < 4; ++j)
    v.require(slurp(frames[j]) == slurp(written[j]),
              "frame " + std::to_string(j) + " not byte-identical");

  std::vector<lrml::IterationRecord> h;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 1; k <= 40; ++k)
    h.push_back({k, u(rng) * 1e-6, u(rng) * 1e3, k % 4, u(rng), u(rng)});
  lrml::write_metrics(h, dir / "m.csv");
  v.require(lrml::read_metrics(dir / "m.csv") == h, "metrics parse-back differs");
  fs::remove_all(dir);
  if (v.pass) v.detail = ".lrml, PGM and metrics round trips exact";
  return v;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<Verdict()> run;
  double limit_seconds;  // 0 for no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "proximal operators", ac1, 10},
      {"AC2", "restriction operators", ac2, 30},
      {"AC3", "nuclear-norm preservation", ac3, 0},
      {"AC4", "singular-value product inequality", ac4, 0},
      {"AC5", "IALM recovery", ac5, 20},
      {"AC6", "ML-IALM approximate recovery", ac6, 180},
      {"AC7", "FW-T rate envelope", ac7, 60},
      {"AC8", "FW-T/ML-FWT descent and feasibility", ac8, 0},
      {"AC9", "ML-FWT oracle feasibility", ac9, 0},
      {"AC10", "ML-FWT vs FWT at desk scale", ac10, 300},
      {"AC11", "I/O golden tests", ac11, 0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds)
      v.require(false, "runtime " + num(secs) + "s over " +
                           num(c.limit_seconds) + "s limit");
    std::printf("%-5s %s  %s: %s [%.2fs]\n", c.id, v.pass ? "PASS" : "FAIL",
                c.title, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
