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

#include "frostpix/raster.hpp"

#include <stdexcept>

#include "frostpix/error.hpp"

namespace frostpix::raster {

void Observation::validate() const {
  if (id.empty()) throw InputError("observation with empty id");
  if (width < 1 || height < 1) {
    throw InputError("observation " + id + ": empty raster");
  }
  const auto expected = static_cast<std::size_t>(width) * height;
  if (pixels.size() != expected) {
    throw InputError("observation " + id + ": pixel buffer size " +
                     std::to_string(pixels.size()) + " != width*height " +
                     std::to_string(expected));
  }
  if (!mask.empty() && mask.size() != expected) {
    throw InputError("observation " + id + ": mask dimensions differ from raster");
  }
}

std::string subframe_id(const std::string& observation_id, int row_index, int col_index) {
  return observation_id + "_sf" + std::to_string(row_index) + "_" + std::to_string(col_index);
}

std::string tile_id(const std::string& subframe_id, int row_index, int col_index) {
  return subframe_id + "_t" + std::to_string(row_index) + "_" + std::to_string(col_index);
}

std::vector<Subframe> partition_subframes(const Observation& obs, int size,
                                          double max_invalid,
                                          std::vector<Subframe>* discarded) {
  obs.validate();
  if (size < 1) throw std::invalid_argument("subframe size must be >= 1");

  const int grid_rows = (obs.height + size - 1) / size;
  const int grid_cols = (obs.width + size - 1) / size;

  std::vector<Subframe> kept;
  kept.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
  for (int gr = 0; gr < grid_rows; ++gr) {
    for (int gc = 0; gc < grid_cols; ++gc) {
      Subframe sf;
      sf.observation_id = obs.id;
      sf.row_index = gr;
      sf.col_index = gc;
      sf.origin_row = gr * size;
      sf.origin_col = gc * size;
      sf.actual_rows = std::min(size, obs.height - sf.origin_row);
      sf.actual_cols = std::min(size, obs.width - sf.origin_col);
      sf.id = subframe_id(obs.id, gr, gc);

      std::int64_t invalid = 0;
      for (int r = sf.origin_row; r < sf.origin_row + sf.actual_rows; ++r) {
        for (int c = sf.origin_col; c < sf.origin_col + sf.actual_cols; ++c) {
          if (!obs.pixel_valid(r, c)) ++invalid;
        }
      }
      const auto total = static_cast<double>(sf.actual_rows) * sf.actual_cols;
      sf.valid_fraction = 1.0 - static_cast<double>(invalid) / total;

      if (sf.invalid_fraction() <= max_invalid) {
        kept.push_back(std::move(sf));
      } else if (discarded != nullptr) {
        discarded->push_back(std::move(sf));
      }
    }
  }
  return kept;
}

std::vector<TileGeometry> partition_tiles(const Observation& obs, const Subframe& sf,
                                          int size) {
  if (size < 1) throw std::invalid_argument("tile size must be >= 1");
  const int tile_rows = sf.actual_rows / size;
  const int tile_cols = sf.actual_cols / size;

  std::vector<TileGeometry> tiles;
  tiles.reserve(static_cast<std::size_t>(std::max(tile_rows, 0)) * std::max(tile_cols, 0));
  for (int tr = 0; tr < tile_rows; ++tr) {
    for (int tc = 0; tc < tile_cols; ++tc) {
      TileGeometry t;
      t.subframe_id = sf.id;
      t.row_index = tr;
      t.col_index = tc;
      t.origin_row = sf.origin_row + tr * size;
      t.origin_col = sf.origin_col + tc * size;
      t.size = size;
      t.id = tile_id(sf.id, tr, tc);

      std::int64_t black = 0;
      for (int r = t.origin_row; r < t.origin_row + size; ++r) {
        for (int c = t.origin_col; c < t.origin_col + size; ++c) {
          if (obs.at(r, c) == 0) ++black;
        }
      }
      t.black_fraction =
          static_cast<double>(black) / (static_cast<double>(size) * size);
      tiles.push_back(std::move(t));
    }
  }
  return tiles;
}

bool apply_black_pixel_rule(const TileGeometry& tile, TileLabel label,
                            const BlackPixelRule& rule) {
  if (label != TileLabel::frost && !rule.apply_to_all_labels) return true;
  return tile.black_fraction <= rule.max_black;
}

}  // namespace frostpix::raster
