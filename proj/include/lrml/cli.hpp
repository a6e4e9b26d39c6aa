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
// Command-line front end.
//
//   lrml synth       --m M --n N [--rank R --eta E --seed S --observe F] --out DIR
//   lrml solve-pcp   [--solver ialm|ml-ialm] (--input D.lrml | --m M --n N ...)
//   lrml solve-cpcp  [--solver fwt|ml-fwt]  (--input D.lrml [--mask Q.lrml] | ...)
//   lrml video       --solver S --input f0.pgm f1.pgm ... | --input DIR
//   lrml compare     --solver-a S --solver-b S ...
//   lrml replay      DIR/manifest.txt [--out DIR]
//
// Exit codes: 0 success, 1 solver did not converge (outputs still written),
// 2 usage or constraint error, 3 runtime failure (I/O, format, numerics).

#ifndef LRML_CLI_HPP_
#define LRML_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrml/matrix.hpp"

namespace lrml::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitNotConverged = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

struct RunConfig {
  std::string command;  // synth | solve-pcp | solve-cpcp | video | compare
  std::string solver;   // ialm | ml-ialm | fwt | ml-fwt
  std::string solver_a;
  std::string solver_b;
  std::vector<std::string> inputs;
  std::string mask_path;
  std::string out = ".";

  // Synthetic instance, used when no input is given.
  std::optional<Index> m;
  std::optional<Index> n;
  Index rank = 2;
  double eta = 0.05;
  std::uint64_t seed = 0;
  std::optional<double> observe;

  std::optional<double> lambda;  // PCP
  std::optional<double> mu0;
  double rho = 1.5;
  std::optional<double> lambda_l;  // CPCP
  std::optional<double> lambda_s;
  std::optional<double> tol;
  std::optional<int> max_iters;
  Index rank_guess = 1;
  std::optional<Index> levels;
  std::optional<double> time_budget;
  int threads = 1;

  bool operator==(const RunConfig&) const = default;
};

// Raised for bad flags or flag combinations; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// argv[0] is the program name. Throws UsageError. Prints help to out and
// returns nullopt when --help was requested.
std::optional<RunConfig> parse_args(int argc, const char* const* argv,
                                    std::ostream& out, std::ostream& err);

// Checks command/solver compatibility and required inputs.
void validate(const RunConfig& cfg);

std::map<std::string, std::string> to_manifest(const RunConfig& cfg);
RunConfig from_manifest(const std::map<std::string, std::string>& kv);
void write_manifest(const RunConfig& cfg, const std::filesystem::path& path);
RunConfig read_manifest(const std::filesystem::path& path);

// Executes a validated config; returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run with every error mapped to its exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace lrml::cli

#endif  // LRML_CLI_HPP_
