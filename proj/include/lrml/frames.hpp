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
// Grayscale frame stacks backed by binary PGM (P5) files.
//
// Frame j becomes column j of the stacked matrix; pixel (r, c) of a frame
// sits at row r + c * height. Pixels are scaled to [0, 1] by 1/maxval.

#ifndef LRML_FRAMES_HPP_
#define LRML_FRAMES_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lrml/matrix.hpp"

namespace lrml {

struct Image {
  Index height = 0;
  Index width = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;  // row-major
};

Image read_pgm(const std::filesystem::path& path);
// Writes 8-bit when maxval < 256, 16-bit big-endian samples otherwise.
void write_pgm(const Image& img, const std::filesystem::path& path);

struct FrameStack {
  Index frame_height = 0;
  Index frame_width = 0;
  Matrix matrix;  // (height * width) x count

  Index count() const { return matrix.cols(); }
};

FrameStack ingest_frames(const std::vector<std::filesystem::path>& paths);

// Column j of x as an 8-bit frame: clamp to [0, 1], then floor(255 v + 0.5).
Image column_to_image(const Matrix& x, Index j, Index height, Index width);

// Writes L_0000.pgm ... and S_0000.pgm ... into out_dir and returns the
// paths in that order (all L frames, then all S frames).
std::vector<std::filesystem::path> emit_frames(
    const FrameStack& stack, const Matrix& l, const Matrix& s,
    const std::filesystem::path& out_dir);

}  // namespace lrml

#endif  // LRML_FRAMES_HPP_
