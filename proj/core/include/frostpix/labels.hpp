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

#ifndef FROSTPIX_LABELS_HPP
#define FROSTPIX_LABELS_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "frostpix/geometry.hpp"
#include "frostpix/raster.hpp"
#include "frostpix/types.hpp"

namespace frostpix::labels {

/// One annotator's frost region. Vertices are subframe-relative pixel
/// coordinates; the polygon must be simple with at least 3 vertices and
/// carry exactly one geologic context plus a non-empty indicator set.
struct AnnotationPolygon {
  std::string subframe_id;
  std::string annotator_id;
  std::vector<geom::Vertex> vertices;
  GeologicContext context = GeologicContext::other;
  std::set<VisibleIndicator> indicators;
};

struct OverlapRule {
  enum class Kind { any_intersection, min_area_fraction };
  Kind kind = Kind::any_intersection;
  /// Only read under min_area_fraction.
  double fraction = 0.0;

  static OverlapRule any_intersection() { return {}; }
  static OverlapRule min_area_fraction(double f);
};

/// What to do with winter-subframe tiles no annotator marked at all:
/// treat the unmarked region as implicitly frost-free (background), or
/// exclude such tiles from the dataset.
enum class ZeroOverlapPolicy { background, exclude };

struct VoteConfig {
  int annotator_count = 3;
  int majority_threshold = 2;
  OverlapRule overlap = OverlapRule::any_intersection();
  ZeroOverlapPolicy zero_overlap = ZeroOverlapPolicy::background;

  void validate() const;
};

/// Decides whether a polygon overlaps the tile window under the rule.
/// any_intersection requires strictly positive intersection area (corner
/// contact does not count); min_area_fraction(f) requires area >=
/// f * tile area. A degenerate (zero-area) polygon never overlaps; the
/// caller can surface the warning via `warnings`.
bool polygon_overlaps_tile(const AnnotationPolygon& poly,
                           const raster::TileGeometry& tile,
                           const raster::Subframe& subframe,
                           const OverlapRule& rule,
                           std::vector<std::string>* warnings = nullptr);

/// Vote outcome for one tile.
struct TileVote {
  TileLabel label = TileLabel::background;
  /// Number of distinct annotators with at least one overlapping polygon.
  int overlap_count = 0;
  /// Annotators that contributed an overlap, sorted by id.
  std::vector<std::string> contributors;
  /// Majority geologic context; set only when label == frost.
  std::optional<GeologicContext> context;
};

/// Majority vote across annotators. With k = number of distinct
/// annotators owning at least one overlapping polygon:
///   k >= majority_threshold          -> frost
///   0 < k < majority_threshold       -> excluded_ambiguous
///   k == 0                           -> background or exclude, per policy
/// Tiles from summer (frost-free) subframes are background unconditionally.
/// Each annotator votes once regardless of polygon count.
TileVote aggregate_tile_label(const raster::TileGeometry& tile,
                              const raster::Subframe& subframe,
                              std::span<const AnnotationPolygon> polygons,
                              const VoteConfig& cfg, SeasonTag season,
                              std::vector<std::string>* warnings = nullptr);

/// Plurality context over the contributing annotators of a frost tile.
/// An annotator with several overlapping polygons votes with the one of
/// largest intersection area; ties between contexts break by the fixed
/// priority dunes > gullies > crater_rim_wall > other.
GeologicContext aggregate_tile_context(const raster::TileGeometry& tile,
                                       const raster::Subframe& subframe,
                                       std::span<const AnnotationPolygon> polygons,
                                       const VoteConfig& cfg);

/// Tile window in subframe-relative coordinates, as a geometry rect.
geom::Rect tile_rect_in_subframe(const raster::TileGeometry& tile,
                                 const raster::Subframe& subframe);

/// Parses one polygon per line:
///   {"subframe_id": ..., "annotator_id": ..., "vertices": [[row, col], ...],
///    "context": ..., "indicators": [...]}
/// Malformed lines, self-intersecting polygons, or empty indicator sets
/// raise InputError naming the line number.
std::vector<AnnotationPolygon> parse_annotations_jsonl(std::istream& in,
                                                       const std::string& source_name);

}  // namespace frostpix::labels

#endif  // FROSTPIX_LABELS_HPP
