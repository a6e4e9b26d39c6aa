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
#include "lrml/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lrml/errors.hpp"

namespace lrml {
namespace {

static_assert(std::endian::native == std::endian::little,
              "the .lrml reader assumes a little-endian host");

constexpr std::array<char, 4> kMagic = {'L', 'R', 'M', 'L'};

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw FormatError(path.string() + ": truncated " + what);
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string shortest(double v) {
  std::array<char, 32> buf;
  auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

template <typename T>
T parse(const std::string& s, const std::filesystem::path& path, int line) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw FormatError(path.string() + ":" + std::to_string(line) +
                      ": cannot parse '" + s + "'");
  return v;
}

}  // namespace

void save_matrix(const Matrix& x, const std::filesystem::path& path) {
  if (x.rows() == 0 || x.cols() == 0)
    throw InvalidArgument("save_matrix: empty matrix");
  std::ofstream out = open_out(path, true);
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kMatrixFormatVersion);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(x.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(x.cols()));
  out.write(reinterpret_cast<const char*>(x.data()),
            static_cast<std::streamsize>(x.size() * sizeof(double)));
  finish(out, path);
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()))
    throw FormatError(path.string() + ": truncated header");
  if (magic != kMagic) throw FormatError(path.string() + ": bad magic");
  const auto version = get<std::uint32_t>(in, path, "header");
  if (version != kMatrixFormatVersion)
    throw FormatError(path.string() + ": unsupported version " +
                      std::to_string(version));
  const auto rows = get<std::uint64_t>(in, path, "header");
  const auto cols = get<std::uint64_t>(in, path, "header");
  if (rows == 0 || cols == 0)
    throw FormatError(path.string() + ": zero-sized matrix");
  if (rows > (std::uint64_t{1} << 31) || cols > (std::uint64_t{1} << 31))
    throw FormatError(path.string() + ": implausible dimensions");
  Matrix x(static_cast<Index>(rows), static_cast<Index>(cols));
  const auto bytes = static_cast<std::streamsize>(x.size() * sizeof(double));
  if (!in.read(reinterpret_cast<char*>(x.data()), bytes))
    throw FormatError(path.string() + ": truncated payload");
  return x;
}

std::string to_csv(const Matrix& x) {
  std::string s;
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j) s += ',';
      s += shortest(x(i, j));
    }
    s += '\n';
  }
  return s;
}

void save_csv(const Matrix& x, const std::filesystem::path& path) {
  std::ofstream out = open_out(path, false);
  out << to_csv(x);
  finish(out, path);
}

void write_metrics(const std::vector<IterationRecord>& history,
                   const std::filesystem::path& path) {
  std::ofstream out = open_out(path, false);
  out << kMetricsHeader << '\n';
  char buf[256];
  for (const IterationRecord& r : history) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%lld,%.17g,%.17g\n",
                  r.iter, r.feasibility_gap, r.objective,
                  static_cast<long long>(r.rank_l), r.sparsity_s,
                  r.wall_seconds);
    out << buf;
  }
  finish(out, path);
}

std::vector<IterationRecord> read_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw FormatError(path.string() + ": missing metrics header");
  std::vector<IterationRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 6)
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 6 fields");
    IterationRecord r;
    r.iter = parse<int>(cells[0], path, lineno);
    r.feasibility_gap = parse<double>(cells[1], path, lineno);
    r.objective = parse<double>(cells[2], path, lineno);
    r.rank_l = static_cast<Index>(parse<long long>(cells[3], path, lineno));
    r.sparsity_s = parse<double>(cells[4], path, lineno);
    r.wall_seconds = parse<double>(cells[5], path, lineno);
    out.push_back(r);
  }
  return out;
}

}  // namespace lrml
