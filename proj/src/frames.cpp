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
#include "lrml/frames.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "lrml/errors.hpp"

namespace lrml {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string token(std::istream& in, const std::filesystem::path& path) {
  std::string t;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!t.empty()) return t;
      continue;
    }
    t.push_back(static_cast<char>(ch));
  }
  if (t.empty()) throw FormatError(path.string() + ": truncated PGM header");
  return t;
}

long header_int(std::istream& in, const std::filesystem::path& path,
                const char* what) {
  const std::string t = token(in, path);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || v <= 0)
    throw FormatError(path.string() + ": bad PGM " + what + " '" + t + "'");
  return v;
}

std::string frame_name(char prefix, Index j) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c_%04lld.pgm", prefix,
                static_cast<long long>(j));
  return buf;
}

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  if (token(in, path) != "P5")
    throw FormatError(path.string() + ": not a binary PGM (P5) file");
  Image img;
  img.width = header_int(in, path, "width");
  img.height = header_int(in, path, "height");
  img.maxval = static_cast<int>(header_int(in, path, "maxval"));
  if (img.maxval > 65535)
    throw FormatError(path.string() + ": maxval above 65535");
  // token() consumed the single whitespace byte after maxval.
  const std::size_t n = static_cast<std::size_t>(img.width * img.height);
  img.pixels.resize(n);
  if (img.maxval < 256) {
    std::vector<unsigned char> raw(n);
    if (!in.read(reinterpret_cast<char*>(raw.data()),
                 static_cast<std::streamsize>(n)))
      throw FormatError(path.string() + ": truncated pixel data");
    std::copy(raw.begin(), raw.end(), img.pixels.begin());
  } else {
    std::vector<unsigned char> raw(2 * n);
    if (!in.read(reinterpret_cast<char*>(raw.data()),
                 static_cast<std::streamsize>(2 * n)))
      throw FormatError(path.string() + ": truncated pixel data");
    for (std::size_t i = 0; i < n; ++i)
      img.pixels[i] = static_cast<std::uint16_t>(raw[2 * i] << 8 | raw[2 * i + 1]);
  }
  for (std::uint16_t p : img.pixels)
    if (p > img.maxval)
      throw FormatError(path.string() + ": pixel value exceeds maxval");
  return img;
}

void write_pgm(const Image& img, const std::filesystem::path& path) {
  if (img.height < 1 || img.width < 1 || img.maxval < 1 || img.maxval > 65535 ||
      img.pixels.size() != static_cast<std::size_t>(img.height * img.width))
    throw InvalidArgument("write_pgm: inconsistent image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  std::vector<unsigned char> raw;
  if (img.maxval < 256) {
    raw.assign(img.pixels.begin(), img.pixels.end());
  } else {
    raw.reserve(2 * img.pixels.size());
    for (std::uint16_t p : img.pixels) {
      raw.push_back(static_cast<unsigned char>(p >> 8));
      raw.push_back(static_cast<unsigned char>(p & 0xff));
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

FrameStack ingest_frames(const std::vector<std::filesystem::path>& paths) {
  if (paths.empty()) throw InvalidArgument("ingest_frames: no frames given");
  FrameStack st;
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const Image img = read_pgm(paths[j]);
    if (j == 0) {
      st.frame_height = img.height;
      st.frame_width = img.width;
      st.matrix.resize(img.height * img.width,
                       static_cast<Index>(paths.size()));
    } else if (img.height != st.frame_height || img.width != st.frame_width) {
      throw InvalidArgument(
          "ingest_frames: " + paths[j].string() + " is " +
          std::to_string(img.width) + "x" + std::to_string(img.height) +
          ", expected " + std::to_string(st.frame_width) + "x" +
          std::to_string(st.frame_height));
    }
    const double scale = 1.0 / img.maxval;
    const Index col = static_cast<Index>(j);
    for (Index r = 0; r < img.height; ++r)
      for (Index c = 0; c < img.width; ++c)
        st.matrix(r + c * img.height, col) =
            img.pixels[static_cast<std::size_t>(r * img.width + c)] * scale;
  }
  return st;
}

Image column_to_image(const Matrix& x, Index j, Index height, Index width) {
  if (x.rows() != height * width || j < 0 || j >= x.cols())
    throw InvalidArgument("column_to_image: shape mismatch");
  Image img;
  img.height = height;
  img.width = width;
  img.maxval = 255;
  img.pixels.resize(static_cast<std::size_t>(height * width));
  for (Index r = 0; r < height; ++r)
    for (Index c = 0; c < width; ++c) {
      const double v = std::clamp(x(r + c * height, j), 0.0, 1.0);
      img.pixels[static_cast<std::size_t>(r * width + c)] =
          static_cast<std::uint16_t>(std::floor(v * 255.0 + 0.5));
    }
  return img;
}

std::vector<std::filesystem::path> emit_frames(
    const FrameStack& stack, const Matrix& l, const Matrix& s,
    const std::filesystem::path& out_dir) {
  const Index rows = stack.frame_height * stack.frame_width;
  for (const Matrix* x : {&l, &s})
    if (x->rows() != rows || x->cols() != stack.count())
      throw InvalidArgument("emit_frames: L and S must match the frame stack");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& [prefix, x] : {std::pair<char, const Matrix*>{'L', &l},
                                  std::pair<char, const Matrix*>{'S', &s}}) {
    for (Index j = 0; j < x->cols(); ++j) {
      const auto path = out_dir / frame_name(prefix, j);
      write_pgm(column_to_image(*x, j, stack.frame_height, stack.frame_width),
                path);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace lrml
