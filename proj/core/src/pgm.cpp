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

#include "convcs/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace convcs {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string token(std::istream& in) {
  std::string t;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!t.empty()) break;
      continue;
    }
    t.push_back(static_cast<char>(c));
  }
  return t;
}

std::size_t number(std::istream& in, const char* what) {
  const std::string t = token(in);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw std::runtime_error(std::string("pgm: bad ") + what);
  return std::stoul(t);
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("pgm: cannot open " + path);
  const std::string magic = token(in);
  if (magic != "P5" && magic != "P2") throw std::runtime_error("pgm: unsupported magic '" + magic + "'");
  GrayImage img;
  img.width = number(in, "width");
  img.height = number(in, "height");
  const std::size_t maxval = number(in, "maxval");
  if (img.width == 0 || img.height == 0) throw std::runtime_error("pgm: empty image");
  if (maxval == 0 || maxval > 255) throw std::runtime_error("pgm: maxval must be in [1, 255]");
  img.maxval = static_cast<int>(maxval);
  const std::size_t count = img.width * img.height;
  img.pixels.resize(count);
  if (magic == "P5") {
    std::vector<unsigned char> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) throw std::runtime_error("pgm: truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) img.pixels[i] = raw[i];
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t v = number(in, "pixel");
      if (v > maxval) throw std::runtime_error("pgm: pixel above maxval");
      img.pixels[i] = static_cast<double>(v);
    }
  }
  return img;
}

void write_pgm(const std::string& path, const GrayImage& img) {
  if (img.pixels.size() != img.width * img.height) throw std::invalid_argument("pgm: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("pgm: cannot write " + path);
  out << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  for (double v : img.pixels) {
    const double c = std::clamp(std::round(v), 0.0, static_cast<double>(img.maxval));
    out.put(static_cast<char>(static_cast<unsigned char>(c)));
  }
}

}  // namespace convcs
