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

#ifndef FROSTPIX_PGM_HPP
#define FROSTPIX_PGM_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

namespace frostpix::pgm {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, height*width
};

/// Reads a binary PGM (P5, maxval 255). Anything else — ASCII P2, color
/// P6/P7, 16-bit maxval — is rejected with an InputError rather than
/// converted.
Image read_pgm(const std::filesystem::path& path);

void write_pgm(const std::filesystem::path& path, const Image& image);

}  // namespace frostpix::pgm

#endif  // FROSTPIX_PGM_HPP
