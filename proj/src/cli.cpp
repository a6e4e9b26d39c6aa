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
#include "lrml/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "lrml/cpcp.hpp"
#include "lrml/errors.hpp"
#include "lrml/frames.hpp"
#include "lrml/io.hpp"
#include "lrml/kernels.hpp"
#include "lrml/mask.hpp"
#include "lrml/pcp.hpp"
#include "lrml/synthetic.hpp"

namespace lrml::cli {
namespace {

namespace fs = std::filesystem;

bool is_pcp(const std::string& s) { return s == "ialm" || s == "ml-ialm"; }
bool is_cpcp(const std::string& s) { return s == "fwt" || s == "ml-fwt"; }

std::string fmt(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
T parse_value(const std::string& key, const std::string& s) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw FormatError("manifest: bad value for " + key + ": '" + s + "'");
  return v;
}

// ---------------------------------------------------------------- parsing

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "output directory");
  sub->add_option("--threads", cfg.threads, "solver threads (default 1)")
      ->check(CLI::PositiveNumber);
}

void add_synthetic(CLI::App* sub, RunConfig& cfg, bool required) {
  auto* m = sub->add_option_function<Index>(
      "--m", [&cfg](Index v) { cfg.m = v; }, "rows");
  auto* n = sub->add_option_function<Index>(
      "--n", [&cfg](Index v) { cfg.n = v; }, "columns");
  if (required) {
    m->required();
    n->required();
  }
  sub->add_option("--rank", cfg.rank, "rank of the low-rank part");
  sub->add_option("--eta", cfg.eta, "fraction of corrupted entries");
  sub->add_option("--seed", cfg.seed, "generator seed");
}

void add_observe(CLI::App* sub, RunConfig& cfg) {
  sub->add_option_function<double>(
      "--observe", [&cfg](double v) { cfg.observe = v; },
      "fraction of observed entries");
}

void add_shared_solver(CLI::App* sub, RunConfig& cfg) {
  sub->add_option_function<double>(
      "--tol", [&cfg](double v) { cfg.tol = v; }, "stopping tolerance");
  sub->add_option_function<int>(
      "--max-iters", [&cfg](int v) { cfg.max_iters = v; }, "iteration cap");
  sub->add_option("--rank-guess", cfg.rank_guess, "rank estimate");
  sub->add_option_function<Index>(
      "--levels", [&cfg](Index v) { cfg.levels = v; },
      "coarse column count for multilevel solvers");
  sub->add_option_function<double>(
      "--time", [&cfg](double v) { cfg.time_budget = v; },
      "wall-clock budget in seconds");
}

void add_pcp(CLI::App* sub, RunConfig& cfg) {
  sub->add_option_function<double>(
      "--lambda", [&cfg](double v) { cfg.lambda = v; }, "sparsity weight");
  sub->add_option_function<double>(
      "--mu0", [&cfg](double v) { cfg.mu0 = v; }, "initial penalty");
  sub->add_option("--rho", cfg.rho, "penalty growth factor");
}

void add_cpcp(CLI::App* sub, RunConfig& cfg) {
  sub->add_option_function<double>(
      "--lambda-l", [&cfg](double v) { cfg.lambda_l = v; },
      "nuclear-norm weight");
  sub->add_option_function<double>(
      "--lambda-s", [&cfg](double v) { cfg.lambda_s = v; }, "l1 weight");
  sub->add_option("--mask", cfg.mask_path,
                  ".lrml file whose nonzeros mark observed entries");
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& in) {
  if (in.size() != 1 || !fs::is_directory(in[0])) return in;
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(in[0]))
    if (e.is_regular_file() && e.path().extension() == ".pgm")
      out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw UsageError("no .pgm files in " + in[0]);
  return out;
}

// ---------------------------------------------------------------- solving

struct Problem {
  Matrix d;
  std::optional<ObservationMask> mask;
  std::optional<FrameStack> frames;
};

struct Outcome {
  std::string solver;
  Matrix l;
  Matrix s;
  std::vector<IterationRecord> history;
  SolveStatus status = SolveStatus::kMaxIterations;
  double seconds = 0.0;
  double objective = 0.0;
  Index rank = 0;
  double sparsity = 0.0;
  double fg = 0.0;
};

Problem load_problem(const RunConfig& cfg) {
  Problem p;
  if (cfg.command == "video") {
    std::vector<fs::path> paths;
    for (const auto& s : cfg.inputs) paths.emplace_back(s);
    p.frames = ingest_frames(paths);
    p.d = p.frames->matrix;
  } else if (!cfg.inputs.empty()) {
    p.d = load_matrix(cfg.inputs.front());
  } else {
    SyntheticProblem sp =
        synth_rpca(*cfg.m, *cfg.n, cfg.rank, cfg.eta, cfg.seed, cfg.observe);
    p.d = std::move(sp.d);
    p.mask = std::move(sp.mask);
  }
  if (!cfg.mask_path.empty()) {
    p.mask = ObservationMask::from_matrix(load_matrix(cfg.mask_path));
    if (p.mask->rows != p.d.rows() || p.mask->cols != p.d.cols())
      throw InvalidArgument("mask shape does not match the data matrix");
  }
  return p;
}

double masked_gap(const Matrix& d, const Matrix& l, const Matrix& s,
                  const ObservationMask& mask) {
  const double den = project_mask(d, mask).norm();
  if (den == 0.0) return 0.0;
  return project_mask(d - l - s, mask).norm() / den;
}

Outcome solve(const std::string& solver, const Problem& p, RunConfig& res,
              int max_iters) {
  Outcome o;
  o.solver = solver;
  if (is_pcp(solver)) {
    if (p.mask && !p.mask->is_full())
      throw UsageError(solver + " needs fully observed data; use fwt/ml-fwt");
    PcpOptions opts;
    opts.lambda = res.lambda;
    opts.mu0 = res.mu0;
    opts.rho = res.rho;
    if (res.tol) opts.tol_feasibility = *res.tol;
    opts.max_iters = max_iters;
    opts.rank_guess = res.rank_guess;
    opts.levels = res.levels;
    opts.time_budget_seconds = res.time_budget;
    PcpResult r = solver == "ialm" ? ialm_solve(p.d, opts)
                                   : ml_ialm_solve(p.d, opts);
    res.lambda = r.lambda;
    res.mu0 = r.mu_history.front();
    o.fg = p.d.isZero(0.0) ? 0.0 : feasibility_gap(p.d, r.l, r.s);
    o.l = std::move(r.l);
    o.s = std::move(r.s);
    o.history = std::move(r.history);
    o.status = r.status;
  } else {
    const ObservationMask mask =
        p.mask ? *p.mask : ObservationMask::full(p.d.rows(), p.d.cols());
    CpcpOptions opts;
    opts.lambda_l = res.lambda_l;
    opts.lambda_s = res.lambda_s;
    if (res.tol) opts.tol = *res.tol;
    opts.max_iters = max_iters;
    opts.rank_guess = res.rank_guess;
    opts.levels = res.levels;
    opts.time_budget_seconds = res.time_budget;
    CpcpResult r = solver == "fwt" ? fwt_solve(p.d, mask, opts)
                                   : ml_fwt_solve(p.d, mask, opts);
    res.lambda_l = r.lambda_l;
    res.lambda_s = r.lambda_s;
    o.fg = masked_gap(p.d, r.state.l, r.state.s, mask);
    o.l = std::move(r.state.l);
    o.s = std::move(r.state.s);
    o.history = std::move(r.history);
    o.status = r.status;
  }
  o.seconds = o.history.back().wall_seconds;
  o.objective = o.history.back().objective;
  o.rank = numerical_rank(o.l);
  o.sparsity = sparsity(o.s);
  return o;
}

constexpr const char* kSummaryHeader =
    "solver,seconds,objective,rank_l,sparsity_s,fg";

std::string summary_row(const Outcome& o) {
  return o.solver + "," + fmt17(o.seconds) + "," + fmt17(o.objective) + "," +
         std::to_string(o.rank) + "," + fmt17(o.sparsity) + "," + fmt17(o.fg);
}

void write_outcome(const Outcome& o, const fs::path& dir) {
  fs::create_directories(dir);
  save_matrix(o.l, dir / "L.lrml");
  save_matrix(o.s, dir / "S.lrml");
  write_metrics(o.history, dir / "metrics.csv");
  std::ofstream sum(dir / "summary.csv");
  sum << kSummaryHeader << '\n' << summary_row(o) << '\n';
  if (!sum) throw IoError("cannot write " + (dir / "summary.csv").string());
}

int exit_for(const Outcome& o) {
  return o.status == SolveStatus::kMaxIterations ? kExitNotConverged
                                                  : kExitOk;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

int run_synth(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir(cfg.out);
  make_dir(dir);
  const SyntheticProblem p =
      synth_rpca(*cfg.m, *cfg.n, cfg.rank, cfg.eta, cfg.seed, cfg.observe);
  save_matrix(p.d, dir / "D.lrml");
  save_matrix(p.l_truth, dir / "L.lrml");
  save_matrix(p.s_truth, dir / "S.lrml");
  if (p.mask) save_matrix(p.mask->to_matrix(), dir / "mask.lrml");
  write_manifest(cfg, dir / "manifest.txt");
  out << "wrote " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

// ------------------------------------------------------------ public API

std::optional<RunConfig> parse_args(int argc, const char* const* argv,
                                    std::ostream& out, std::ostream& err) {
  (void)err;
  RunConfig cfg;
  std::string manifest;
  CLI::App app{"Low-rank plus sparse matrix decomposition", "lrml"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);

  auto* synth = app.add_subcommand("synth", "generate a synthetic instance");
  add_synthetic(synth, cfg, true);
  add_observe(synth, cfg);
  add_output(synth, cfg);

  auto* pcp = app.add_subcommand("solve-pcp", "solve PCP (ialm, ml-ialm)");
  pcp->add_option("--solver", cfg.solver, "ialm or ml-ialm")
      ->default_str("ialm");
  pcp->add_option("--input", cfg.inputs, "data matrix (.lrml)")
      ->expected(1);
  add_synthetic(pcp, cfg, false);
  add_pcp(pcp, cfg);
  add_shared_solver(pcp, cfg);
  add_output(pcp, cfg);

  auto* cpcp = app.add_subcommand("solve-cpcp", "solve CPCP (fwt, ml-fwt)");
  cpcp->add_option("--solver", cfg.solver, "fwt or ml-fwt")
      ->default_str("fwt");
  cpcp->add_option("--input", cfg.inputs, "data matrix (.lrml)")
      ->expected(1);
  add_synthetic(cpcp, cfg, false);
  add_observe(cpcp, cfg);
  add_cpcp(cpcp, cfg);
  add_shared_solver(cpcp, cfg);
  add_output(cpcp, cfg);

  auto* video = app.add_subcommand("video", "decompose a PGM frame stack");
  video->add_option("--solver", cfg.solver, "ialm, ml-ialm, fwt or ml-fwt")
      ->required();
  video->add_option("--input", cfg.inputs, "frames in order, or a directory")
      ->required();
  add_pcp(video, cfg);
  add_cpcp(video, cfg);
  add_shared_solver(video, cfg);
  add_output(video, cfg);

  auto* compare = app.add_subcommand("compare", "run two solvers in turn");
  compare->add_option("--solver-a", cfg.solver_a, "first solver")->required();
  compare->add_option("--solver-b", cfg.solver_b, "second solver")
      ->required();
  compare->add_option("--input", cfg.inputs, "data matrix (.lrml)")
      ->expected(1);
  add_synthetic(compare, cfg, false);
  add_observe(compare, cfg);
  add_pcp(compare, cfg);
  add_cpcp(compare, cfg);
  add_shared_solver(compare, cfg);
  add_output(compare, cfg);

  auto* replay = app.add_subcommand("replay", "rerun a recorded manifest");
  replay->add_option("manifest", manifest, "manifest.txt of an earlier run")
      ->required();
  std::string replay_out;
  replay->add_option("--out", replay_out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    std::string synopsis = app.help();
    for (auto* sub : app.get_subcommands({}))
      if (argc > 1 && sub->get_name() == argv[1]) synopsis = sub->help();
    throw UsageError(std::string(e.what()) + "\n\n" + synopsis);
  }

  if (replay->parsed()) {
    RunConfig r = read_manifest(manifest);
    if (!replay_out.empty()) r.out = replay_out;
    validate(r);
    return r;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.solver.empty()) {
    if (cfg.command == "solve-pcp") cfg.solver = "ialm";
    if (cfg.command == "solve-cpcp") cfg.solver = "fwt";
  }
  if (cfg.command == "video") cfg.inputs = expand_inputs(cfg.inputs);
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c != "synth" && c != "solve-pcp" && c != "solve-cpcp" && c != "video" &&
      c != "compare")
    throw UsageError("unknown command '" + c + "'");
  if (cfg.threads < 1) throw UsageError("--threads must be >= 1");

  std::vector<std::string> solvers;
  if (c == "compare") {
    solvers = {cfg.solver_a, cfg.solver_b};
  } else if (c != "synth") {
    solvers = {cfg.solver};
  }
  for (const auto& s : solvers) {
    if (!is_pcp(s) && !is_cpcp(s))
      throw UsageError("unknown solver '" + s +
                       "' (expected ialm, ml-ialm, fwt or ml-fwt)");
    if (c == "solve-pcp" && !is_pcp(s))
      throw UsageError("solve-pcp accepts ialm or ml-ialm, got " + s);
    if (c == "solve-cpcp" && !is_cpcp(s))
      throw UsageError("solve-cpcp accepts fwt or ml-fwt, got " + s);
  }
  if (c == "compare" && is_pcp(cfg.solver_a) != is_pcp(cfg.solver_b))
    throw UsageError("compare needs two solvers for the same problem: " +
                     cfg.solver_a + " vs " + cfg.solver_b);

  if (!solvers.empty()) {
    const bool pcp = is_pcp(solvers.front());
    if (pcp && (cfg.lambda_l || cfg.lambda_s || !cfg.mask_path.empty()))
      throw UsageError("--lambda-l, --lambda-s and --mask apply to fwt/ml-fwt");
    if (!pcp && (cfg.lambda || cfg.mu0 || cfg.rho != 1.5))
      throw UsageError("--lambda, --mu0 and --rho apply to ialm/ml-ialm");
    if (pcp && cfg.observe && c != "synth")
      throw UsageError("--observe applies to fwt/ml-fwt");
  }

  if (c == "synth" || ((c == "solve-pcp" || c == "solve-cpcp" ||
                        c == "compare") &&
                       cfg.inputs.empty())) {
    if (!cfg.m) throw UsageError("--m is required without --input");
    if (!cfg.n) throw UsageError("--n is required without --input");
  }
  if (c == "video" && cfg.inputs.empty())
    throw UsageError("video needs --input frames");
}

std::map<std::string, std::string> to_manifest(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["lrml_version"] = kVersion;
  kv["command"] = cfg.command;
  if (!cfg.solver.empty()) kv["solver"] = cfg.solver;
  if (!cfg.solver_a.empty()) kv["solver_a"] = cfg.solver_a;
  if (!cfg.solver_b.empty()) kv["solver_b"] = cfg.solver_b;
  kv["input_count"] = std::to_string(cfg.inputs.size());
  for (std::size_t i = 0; i < cfg.inputs.size(); ++i)
    kv["input." + std::to_string(i)] = cfg.inputs[i];
  if (!cfg.mask_path.empty()) kv["mask"] = cfg.mask_path;
  kv["out"] = cfg.out;
  if (cfg.m) kv["m"] = std::to_string(*cfg.m);
  if (cfg.n) kv["n"] = std::to_string(*cfg.n);
  kv["rank"] = std::to_string(cfg.rank);
  kv["eta"] = fmt(cfg.eta);
  kv["seed"] = std::to_string(cfg.seed);
  if (cfg.observe) kv["observe"] = fmt(*cfg.observe);
  if (cfg.lambda) kv["lambda"] = fmt(*cfg.lambda);
  if (cfg.mu0) kv["mu0"] = fmt(*cfg.mu0);
  kv["rho"] = fmt(cfg.rho);
  if (cfg.lambda_l) kv["lambda_l"] = fmt(*cfg.lambda_l);
  if (cfg.lambda_s) kv["lambda_s"] = fmt(*cfg.lambda_s);
  if (cfg.tol) kv["tol"] = fmt(*cfg.tol);
  if (cfg.max_iters) kv["max_iters"] = std::to_string(*cfg.max_iters);
  kv["rank_guess"] = std::to_string(cfg.rank_guess);
  if (cfg.levels) kv["levels"] = std::to_string(*cfg.levels);
  if (cfg.time_budget) kv["time_budget_seconds"] = fmt(*cfg.time_budget);
  kv["threads"] = std::to_string(cfg.threads);
  return kv;
}

RunConfig from_manifest(const std::map<std::string, std::string>& kv) {
  RunConfig cfg;
  auto get = [&kv](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto dbl = [&](const std::string& k, auto& field) {
    if (const auto* v = get(k)) field = parse_value<double>(k, *v);
  };
  auto idx = [&](const std::string& k, auto& field) {
    if (const auto* v = get(k)) field = parse_value<Index>(k, *v);
  };
  const auto* command = get("command");
  if (!command) throw FormatError("manifest: missing command");
  cfg.command = *command;
  if (const auto* v = get("solver")) cfg.solver = *v;
  if (const auto* v = get("solver_a")) cfg.solver_a = *v;
  if (const auto* v = get("solver_b")) cfg.solver_b = *v;
  std::size_t count = 0;
  if (const auto* v = get("input_count"))
    count = parse_value<std::size_t>("input_count", *v);
  for (std::size_t i = 0; i < count; ++i) {
    const auto* v = get("input." + std::to_string(i));
    if (!v) throw FormatError("manifest: missing input." + std::to_string(i));
    cfg.inputs.push_back(*v);
  }
  if (const auto* v = get("mask")) cfg.mask_path = *v;
  if (const auto* v = get("out")) cfg.out = *v;
  idx("m", cfg.m);
  idx("n", cfg.n);
  idx("rank", cfg.rank);
  dbl("eta", cfg.eta);
  if (const auto* v = get("seed"))
    cfg.seed = parse_value<std::uint64_t>("seed", *v);
  dbl("observe", cfg.observe);
  dbl("lambda", cfg.lambda);
  dbl("mu0", cfg.mu0);
  dbl("rho", cfg.rho);
  dbl("lambda_l", cfg.lambda_l);
  dbl("lambda_s", cfg.lambda_s);
  dbl("tol", cfg.tol);
  if (const auto* v = get("max_iters"))
    cfg.max_iters = parse_value<int>("max_iters", *v);
  idx("rank_guess", cfg.rank_guess);
  idx("levels", cfg.levels);
  dbl("time_budget_seconds", cfg.time_budget);
  if (const auto* v = get("threads"))
    cfg.threads = parse_value<int>("threads", *v);
  return cfg;
}

void write_manifest(const RunConfig& cfg, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& [k, v] : to_manifest(cfg)) out << k << '=' << v << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

RunConfig read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key=value");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return from_manifest(kv);
}

int run(const RunConfig& cfg_in, std::ostream& out, std::ostream& err) {
  RunConfig cfg = cfg_in;
  kernels::set_num_threads(cfg.threads);
  Eigen::setNbThreads(cfg.threads);
  if (cfg.command == "synth") return run_synth(cfg, out);

  int max_iters = cfg.max_iters.value_or(1000);
  if (cfg.time_budget) {
    if (cfg.max_iters)
      err << "warning: --time and --max-iters both given; the time budget "
             "wins\n";
    cfg.max_iters.reset();
    max_iters = std::numeric_limits<int>::max();
  }

  const Problem problem = load_problem(cfg);
  const fs::path dir(cfg.out);
  make_dir(dir);

  std::vector<Outcome> outcomes;
  if (cfg.command == "compare") {
    const bool same = cfg.solver_a == cfg.solver_b;
    for (const auto& [solver, tag] :
         {std::pair{cfg.solver_a, "-a"}, std::pair{cfg.solver_b, "-b"}}) {
      Outcome o = solve(solver, problem, cfg, max_iters);
      write_outcome(o, dir / (same ? solver + tag : solver));
      outcomes.push_back(std::move(o));
    }
  } else {
    outcomes.push_back(solve(cfg.solver, problem, cfg, max_iters));
    write_outcome(outcomes.back(), dir);
    if (problem.frames)
      emit_frames(*problem.frames, outcomes.back().l, outcomes.back().s,
                  dir / "frames");
  }
  write_manifest(cfg, dir / "manifest.txt");

  out << kSummaryHeader << '\n';
  int code = kExitOk;
  for (const Outcome& o : outcomes) {
    out << summary_row(o) << '\n';
    if (exit_for(o) != kExitOk) {
      err << o.solver << ": stopped at the iteration cap without converging\n";
      code = kExitNotConverged;
    }
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  try {
    const std::optional<RunConfig> cfg = parse_args(argc, argv, out, err);
    if (!cfg) return kExitOk;
    return run(*cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace lrml::cli
