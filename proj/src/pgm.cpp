// Copyright 2026 The aaeal Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dataset.hpp"
#include "error.hpp"

namespace aaeal {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string header_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (is_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  const std::size_t begin = pos;
  while (pos < bytes.size() && !is_space(bytes[pos]) && bytes[pos] != '#') ++pos;
  return bytes.substr(begin, pos - begin);
}

std::size_t header_number(const std::string& bytes, std::size_t& pos,
                          const std::string& id, const char* field) {
  const std::string tok = header_token(bytes, pos);
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size()) {
    fail(ErrorKind::kFormat, id + ": invalid PGM " + field + " '" + tok + "'");
  }
  return value;
}

}  // namespace

ImageRecord parse_pgm(const std::string& bytes, const std::string& id) {
  std::size_t pos = 0;
  const std::string magic = header_token(bytes, pos);
  if (magic != "P5") {
    fail(ErrorKind::kFormat, id + ": bad PGM magic '" + magic + "' (expected P5)");
  }
  ImageRecord img;
  img.id = id;
  img.width = header_number(bytes, pos, id, "width");
  img.height = header_number(bytes, pos, id, "height");
  const std::size_t maxval = header_number(bytes, pos, id, "maxval");
  if (img.width == 0) fail(ErrorKind::kFormat, id + ": PGM width must be positive");
  if (img.height == 0) fail(ErrorKind::kFormat, id + ": PGM height must be positive");
  if (maxval != 255) {
    fail(ErrorKind::kFormat, id + ": unsupported PGM maxval " +
                                 std::to_string(maxval) + " (expected 255)");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() || !is_space(bytes[pos])) {
    fail(ErrorKind::kFormat, id + ": PGM payload truncated (missing raster)");
  }
  ++pos;
  const std::size_t n = img.width * img.height;
  if (bytes.size() - pos < n) {
    fail(ErrorKind::kFormat, id + ": PGM payload truncated (expected " +
                                 std::to_string(n) + " bytes, found " +
                                 std::to_string(bytes.size() - pos) + ")");
  }
  img.pixels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    img.pixels[i] = static_cast<unsigned char>(bytes[pos + i]) / 255.0;
  }
  return img;
}

ImageRecord load_pgm(const std::filesystem::path& path) {
  return parse_pgm(read_file(path), path.stem().string());
}

std::string encode_pgm(const ImageRecord& image) {
  if (image.pixels.size() != image.width * image.height || image.width == 0 ||
      image.height == 0) {
    fail(ErrorKind::kShape, image.id + ": pixel count does not match width x height");
  }
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.pixels.size());
  for (double v : image.pixels) {
    if (!(v >= 0.0 && v <= 1.0)) {
      fail(ErrorKind::kInput, image.id + ": pixel outside [0, 1]");
    }
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
  }
  return out;
}

void write_pgm(const ImageRecord& image, const std::filesystem::path& path) {
  const std::string bytes = encode_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace aaeal
