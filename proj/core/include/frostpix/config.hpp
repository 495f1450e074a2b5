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

#ifndef FROSTPIX_CONFIG_HPP
#define FROSTPIX_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "frostpix/healpix.hpp"
#include "frostpix/labels.hpp"
#include "frostpix/raster.hpp"

namespace frostpix {

/// Every knob of the pipeline in one place. Defaults are the dataset
/// definition's constants; the canonical hash of the effective config is
/// stamped into every output so artifacts can be traced to the settings
/// that produced them.
struct PipelineConfig {
  // raster stage
  int subframe_size = 5120;
  double max_invalid = 0.75;
  int tile_size = 299;
  double max_black = 0.10;
  bool black_rule_all_tiles = false;

  // label stage
  int annotator_count = 3;
  int majority_threshold = 2;
  std::string overlap_rule = "any_intersection";  // or "min_area_fraction"
  double overlap_fraction = 0.5;                  // read only under min_area_fraction
  std::string zero_overlap_policy = "background";  // or "exclude"

  // split stage
  double ratio_train = 0.70;
  double ratio_val = 0.10;
  double ratio_test = 0.20;
  std::int64_t nside = 8;
  std::string scheme = "ring";  // or "nested"
  std::uint64_t seed = 0;

  // eval stage
  int threshold_grid_points = 101;
  double accuracy_threshold = 0.5;
  bool histogram_include_invalid = false;

  void validate() const;

  labels::VoteConfig vote_config() const;
  raster::BlackPixelRule black_rule() const;
  healpix::Nside nside_value() const { return healpix::Nside(nside); }
  healpix::Scheme scheme_value() const { return healpix::scheme_from_string(scheme); }

  /// Canonical single-line JSON with sorted keys; input to hash().
  std::string canonical_json() const;
  /// 16-hex-digit FNV-1a fingerprint of canonical_json().
  std::string hash() const;
};

/// Loads overrides from a config file. `.json` files are parsed as a flat
/// JSON object; anything else is treated as flat TOML (`key = value`
/// lines, `#` comments, optional section headers which are ignored).
/// Unknown keys are errors.
PipelineConfig load_config_file(const std::filesystem::path& path,
                                PipelineConfig base = {});

}  // namespace frostpix

#endif  // FROSTPIX_CONFIG_HPP
