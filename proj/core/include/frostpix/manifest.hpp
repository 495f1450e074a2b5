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

#ifndef FROSTPIX_MANIFEST_HPP
#define FROSTPIX_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frostpix/healpix.hpp"
#include "frostpix/types.hpp"

namespace frostpix::manifest {

/// One ML-ready tile: identity, location, provenance, and (as stages
/// run) label, spatial pixel and fold. Fields that a stage has not yet
/// produced serialize as empty columns.
struct TileRecord {
  std::string tile_id;
  std::string observation_id;
  std::string subframe_id;
  std::string site_id;
  double center_lat = 0.0;
  double center_lon = 0.0;
  SeasonTag season = SeasonTag::unspecified;
  int origin_row = 0;
  int origin_col = 0;
  int tile_size = 0;
  double black_fraction = 0.0;

  std::optional<TileLabel> label;           // label stage
  std::optional<GeologicContext> context;   // label stage, frost tiles only
  std::vector<std::string> annotators;      // contributing annotator ids
  int vote_count = 0;
  int vote_total = 0;

  std::optional<healpix::Scheme> scheme;    // split stage
  std::optional<std::int64_t> healpix_pixel;
  std::optional<Fold> fold;

  std::string config_hash;
};

/// Geometry of a retained subframe; companion table to the tile manifest
/// so later stages can validate annotation coordinates and reconstruct
/// tile windows without the rasters.
struct SubframeRecord {
  std::string subframe_id;
  std::string observation_id;
  std::string site_id;
  double center_lat = 0.0;
  double center_lon = 0.0;
  SeasonTag season = SeasonTag::unspecified;
  int row_index = 0;
  int col_index = 0;
  int origin_row = 0;
  int origin_col = 0;
  int actual_rows = 0;
  int actual_cols = 0;
  double valid_fraction = 1.0;
  std::string config_hash;
};

/// A discarded subframe or tile with a machine-readable reason:
/// invalid_subframe, ambiguous_vote, black_rule, or zero_overlap.
struct ExclusionRecord {
  std::string kind;    // "subframe" | "tile"
  std::string id;
  std::string reason;
  std::string detail;
};

extern const char* const kManifestHeader;
extern const char* const kSubframesHeader;
extern const char* const kExclusionsHeader;

void write_manifest_csv(const std::filesystem::path& path,
                        std::span<const TileRecord> records);
std::vector<TileRecord> read_manifest_csv(const std::filesystem::path& path);

void write_subframes_csv(const std::filesystem::path& path,
                         std::span<const SubframeRecord> records);
std::vector<SubframeRecord> read_subframes_csv(const std::filesystem::path& path);

void write_exclusions_csv(const std::filesystem::path& path,
                          std::span<const ExclusionRecord> records);
std::vector<ExclusionRecord> read_exclusions_csv(const std::filesystem::path& path);

/// All rows must carry the same config hash; returns it. Mixed or empty
/// hashes mean the file was stitched together from different runs.
std::string uniform_config_hash(std::span<const TileRecord> records);

}  // namespace frostpix::manifest

#endif  // FROSTPIX_MANIFEST_HPP
