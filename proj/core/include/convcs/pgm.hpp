// Copyright 2026 The convcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace convcs {

/// Grayscale raster, row-major, values in [0, maxval].
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 255;
  std::vector<double> pixels;
};

/// Reads binary (P5) or ASCII (P2) PGM with maxval <= 255. Throws
/// std::runtime_error on malformed input.
GrayImage read_pgm(const std::string& path);

/// Writes binary P5; pixel values are rounded and clamped to [0, maxval].
void write_pgm(const std::string& path, const GrayImage& img);

}  // namespace convcs
