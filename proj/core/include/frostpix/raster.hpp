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

#ifndef FROSTPIX_RASTER_HPP
#define FROSTPIX_RASTER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "frostpix/types.hpp"

namespace frostpix::raster {

/// A map-projected single-band observation. Pixel value 0 is the no-data
/// fill by convention; an optional mask (same dimensions, 0 = invalid)
/// overrides that convention for the subframe validity rule.
struct Observation {
  std::string id;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
  std::string site_id;
  double center_lat = 0.0;
  double center_lon = 0.0;
  SeasonTag season = SeasonTag::unspecified;
  std::vector<std::uint8_t> mask;  // empty unless a sidecar mask was given

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  /// Validity for the subframe discard rule: mask wins when present.
  bool pixel_valid(int row, int col) const {
    if (!mask.empty()) return mask[static_cast<std::size_t>(row) * width + col] != 0;
    return at(row, col) != 0;
  }
  void validate() const;
};

/// One cell of the regular subframe grid laid over an observation,
/// origin-anchored at pixel (0,0). Edge cells may be partial.
struct Subframe {
  std::string id;
  std::string observation_id;
  int row_index = 0;
  int col_index = 0;
  int origin_row = 0;
  int origin_col = 0;
  int actual_rows = 0;
  int actual_cols = 0;
  double valid_fraction = 1.0;

  double invalid_fraction() const { return 1.0 - valid_fraction; }
};

/// A full classifier-input window inside a retained subframe. Origin is
/// absolute (observation coordinates); row/col_index are grid positions
/// within the subframe.
struct TileGeometry {
  std::string id;
  std::string subframe_id;
  int row_index = 0;
  int col_index = 0;
  int origin_row = 0;
  int origin_col = 0;
  int size = 0;
  double black_fraction = 0.0;
};

std::string subframe_id(const std::string& observation_id, int row_index, int col_index);
std::string tile_id(const std::string& subframe_id, int row_index, int col_index);

/// Cuts the observation into a row-major grid of size x size subframes
/// (partial at the right/bottom edges) and drops any cell whose invalid
/// fraction exceeds max_invalid. `discarded`, when non-null, receives the
/// dropped cells for the exclusions report.
std::vector<Subframe> partition_subframes(const Observation& obs, int size = 5120,
                                          double max_invalid = 0.75,
                                          std::vector<Subframe>* discarded = nullptr);

/// Cuts a retained subframe into non-overlapping full tiles in row-major
/// order: floor(rows/size) * floor(cols/size) of them. Partial edge tiles
/// are dropped since the classifier input must be exactly size x size.
/// black_fraction counts zero-valued pixels over size^2.
std::vector<TileGeometry> partition_tiles(const Observation& obs, const Subframe& sf,
                                          int size = 299);

struct BlackPixelRule {
  double max_black = 0.10;
  /// The discard rule applies to frost tiles per the dataset definition;
  /// set this to extend it to background tiles as well.
  bool apply_to_all_labels = false;
};

/// Keep/discard decision for a labeled tile.
bool apply_black_pixel_rule(const TileGeometry& tile, TileLabel label,
                            const BlackPixelRule& rule = {});

}  // namespace frostpix::raster

#endif  // FROSTPIX_RASTER_HPP
