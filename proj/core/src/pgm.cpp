/*
 * Copyright 2026 The frostpix authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "frostpix/pgm.hpp"

#include <fstream>
#include <limits>
#include <string>

#include "frostpix/error.hpp"

namespace frostpix::pgm {

namespace {

// Skips whitespace and '#' comment lines between header tokens.
int next_header_int(std::istream& in, const std::string& path, const char* what) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) {
    throw InputError(path + ": malformed PGM header (missing " + what + ")");
  }
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > std::numeric_limits<int>::max()) {
      throw InputError(path + ": PGM header value out of range");
    }
    c = in.get();
  }
  if (c != EOF) in.unget();
  return static_cast<int>(value);
}

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') {
    if (magic[0] == 'P' && (magic[1] == '6' || magic[1] == '7')) {
      throw InputError(path.string() + ": multi-band image rejected (expected single-band P5)");
    }
    throw InputError(path.string() + ": not a binary PGM (P5) file");
  }

  Image img;
  img.width = next_header_int(in, path.string(), "width");
  img.height = next_header_int(in, path.string(), "height");
  const int maxval = next_header_int(in, path.string(), "maxval");
  if (img.width < 1 || img.height < 1) {
    throw InputError(path.string() + ": empty raster");
  }
  if (maxval != 255) {
    throw InputError(path.string() + ": unsupported maxval " + std::to_string(maxval) +
                     " (expected 255)");
  }
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) {
    throw InputError(path.string() + ": malformed PGM header (missing separator)");
  }

  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(count);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(in.gcount()) != count) {
    throw InputError(path.string() + ": truncated pixel data");
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw InputError(path.string() + ": write failed");
}

}  // namespace frostpix::pgm
