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
// Matrix files and metrics CSV.
//
// .lrml layout (all little-endian):
//   bytes 0-3   "LRML"
//   u32         version (1)
//   u64         rows
//   u64         cols
//   f64[rows*cols] entries, column-major

#ifndef LRML_IO_HPP_
#define LRML_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "lrml/matrix.hpp"
#include "lrml/telemetry.hpp"

namespace lrml {

inline constexpr std::uint32_t kMatrixFormatVersion = 1;

void save_matrix(const Matrix& x, const std::filesystem::path& path);
Matrix load_matrix(const std::filesystem::path& path);

// Rows separated by '\n', entries by ',', shortest round-trip formatting.
std::string to_csv(const Matrix& x);
void save_csv(const Matrix& x, const std::filesystem::path& path);

inline constexpr const char* kMetricsHeader =
    "iter,feasibility_gap,objective,rank_l,sparsity_s,wall_seconds";

void write_metrics(const std::vector<IterationRecord>& history,
                   const std::filesystem::path& path);
std::vector<IterationRecord> read_metrics(const std::filesystem::path& path);

}  // namespace lrml

#endif  // LRML_IO_HPP_
