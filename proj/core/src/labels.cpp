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

#include "frostpix/labels.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "frostpix/error.hpp"

namespace frostpix::labels {

namespace {

// Fixed plurality tie-break priority; earlier wins.
constexpr GeologicContext kContextPriority[] = {
    GeologicContext::dunes,
    GeologicContext::gullies,
    GeologicContext::crater_rim_wall,
    GeologicContext::other,
};

int priority_rank(GeologicContext c) {
  for (int i = 0; i < 4; ++i) {
    if (kContextPriority[i] == c) return i;
  }
  return 4;
}

void check_same_subframe(const raster::TileGeometry& tile,
                         const raster::Subframe& subframe,
                         std::span<const AnnotationPolygon> polygons) {
  if (tile.subframe_id != subframe.id) {
    throw std::invalid_argument("tile " + tile.id + " does not belong to subframe " +
                                subframe.id);
  }
  for (const auto& p : polygons) {
    if (p.subframe_id != subframe.id) {
      throw std::invalid_argument("polygon by " + p.annotator_id +
                                  " references unknown subframe " + p.subframe_id +
                                  " (expected " + subframe.id + ")");
    }
  }
}

// Per annotator: whether any polygon overlaps, and the context of the
// polygon with the largest intersection area (area ties resolved by
// context priority so the outcome is annotator-order independent).
struct AnnotatorVote {
  double best_area = -1.0;
  GeologicContext context = GeologicContext::other;
  bool overlaps = false;
};

std::map<std::string, AnnotatorVote> collect_votes(
    const raster::TileGeometry& tile, const raster::Subframe& subframe,
    std::span<const AnnotationPolygon> polygons, const VoteConfig& cfg,
    std::vector<std::string>* warnings) {
  const geom::Rect rect = tile_rect_in_subframe(tile, subframe);
  std::map<std::string, AnnotatorVote> votes;
  for (const auto& poly : polygons) {
    if (geom::polygon_area(poly.vertices) <= 0.0) {
      if (warnings != nullptr) {
        warnings->push_back("degenerate zero-area polygon by " + poly.annotator_id +
                            " on " + poly.subframe_id + " ignored");
      }
      continue;
    }
    const double area = geom::intersection_area(poly.vertices, rect);
    bool overlaps = false;
    switch (cfg.overlap.kind) {
      case OverlapRule::Kind::any_intersection:
        overlaps = area > 0.0;
        break;
      case OverlapRule::Kind::min_area_fraction:
        overlaps = area >= cfg.overlap.fraction * rect.area();
        break;
    }
    if (!overlaps) continue;
    AnnotatorVote& v = votes[poly.annotator_id];
    v.overlaps = true;
    if (area > v.best_area ||
        (area == v.best_area && priority_rank(poly.context) < priority_rank(v.context))) {
      v.best_area = area;
      v.context = poly.context;
    }
  }
  return votes;
}

GeologicContext plurality_context(const std::map<std::string, AnnotatorVote>& votes) {
  int counts[4] = {0, 0, 0, 0};
  for (const auto& [id, v] : votes) ++counts[priority_rank(v.context)];
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (counts[i] > counts[best]) best = i;  // ties keep the higher priority
  }
  return kContextPriority[best];
}

}  // namespace

OverlapRule OverlapRule::min_area_fraction(double f) {
  if (!(f > 0.0) || f > 1.0) {
    throw std::invalid_argument("min_area_fraction requires a fraction in (0, 1]");
  }
  return OverlapRule{Kind::min_area_fraction, f};
}

void VoteConfig::validate() const {
  if (annotator_count < 1) {
    throw std::invalid_argument("annotator_count must be >= 1");
  }
  if (majority_threshold < 1 || majority_threshold > annotator_count) {
    throw std::invalid_argument("majority_threshold must lie in [1, annotator_count]");
  }
}

geom::Rect tile_rect_in_subframe(const raster::TileGeometry& tile,
                                 const raster::Subframe& subframe) {
  const double r0 = tile.origin_row - subframe.origin_row;
  const double c0 = tile.origin_col - subframe.origin_col;
  return geom::Rect{r0, c0, r0 + tile.size, c0 + tile.size};
}

bool polygon_overlaps_tile(const AnnotationPolygon& poly,
                           const raster::TileGeometry& tile,
                           const raster::Subframe& subframe,
                           const OverlapRule& rule,
                           std::vector<std::string>* warnings) {
  if (poly.subframe_id != subframe.id || tile.subframe_id != subframe.id) {
    throw std::invalid_argument("polygon and tile must share a subframe");
  }
  if (geom::polygon_area(poly.vertices) <= 0.0) {
    if (warnings != nullptr) {
      warnings->push_back("degenerate zero-area polygon by " + poly.annotator_id +
                          " on " + poly.subframe_id + " ignored");
    }
    return false;
  }
  const geom::Rect rect = tile_rect_in_subframe(tile, subframe);
  const double area = geom::intersection_area(poly.vertices, rect);
  switch (rule.kind) {
    case OverlapRule::Kind::any_intersection:
      return area > 0.0;
    case OverlapRule::Kind::min_area_fraction:
      return area >= rule.fraction * rect.area();
  }
  return false;
}

TileVote aggregate_tile_label(const raster::TileGeometry& tile,
                              const raster::Subframe& subframe,
                              std::span<const AnnotationPolygon> polygons,
                              const VoteConfig& cfg, SeasonTag season,
                              std::vector<std::string>* warnings) {
  cfg.validate();
  check_same_subframe(tile, subframe, polygons);

  TileVote result;
  if (season == SeasonTag::summer_negative) {
    result.label = TileLabel::background;
    return result;
  }

  const auto votes = collect_votes(tile, subframe, polygons, cfg, warnings);
  result.overlap_count = static_cast<int>(votes.size());
  for (const auto& [id, v] : votes) result.contributors.push_back(id);

  if (result.overlap_count >= cfg.majority_threshold) {
    result.label = TileLabel::frost;
    result.context = plurality_context(votes);
  } else if (result.overlap_count > 0) {
    result.label = TileLabel::excluded_ambiguous;
  } else {
    result.label = cfg.zero_overlap == ZeroOverlapPolicy::background
                       ? TileLabel::background
                       : TileLabel::excluded_ambiguous;
  }
  return result;
}

GeologicContext aggregate_tile_context(const raster::TileGeometry& tile,
                                       const raster::Subframe& subframe,
                                       std::span<const AnnotationPolygon> polygons,
                                       const VoteConfig& cfg) {
  cfg.validate();
  check_same_subframe(tile, subframe, polygons);
  const auto votes = collect_votes(tile, subframe, polygons, cfg, nullptr);
  if (static_cast<int>(votes.size()) < cfg.majority_threshold) {
    throw std::invalid_argument("aggregate_tile_context called on non-frost tile " +
                                tile.id);
  }
  return plurality_context(votes);
}

std::vector<AnnotationPolygon> parse_annotations_jsonl(std::istream& in,
                                                       const std::string& source_name) {
  std::vector<AnnotationPolygon> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": invalid JSON: " + e.what());
    }

    try {
      AnnotationPolygon poly;
      poly.subframe_id = j.at("subframe_id").get<std::string>();
      poly.annotator_id = j.at("annotator_id").get<std::string>();
      poly.context = context_from_string(j.at("context").get<std::string>());
      for (const auto& name : j.at("indicators")) {
        poly.indicators.insert(indicator_from_string(name.get<std::string>()));
      }
      if (poly.indicators.empty()) {
        throw InputError(where + ": empty indicator set");
      }
      for (const auto& v : j.at("vertices")) {
        if (!v.is_array() || v.size() != 2) {
          throw InputError(where + ": vertex must be a [row, col] pair");
        }
        const geom::Vertex vertex{v[0].get<double>(), v[1].get<double>()};
        // drop exact consecutive duplicates; not a geometry repair
        if (poly.vertices.empty() || poly.vertices.back().row != vertex.row ||
            poly.vertices.back().col != vertex.col) {
          poly.vertices.push_back(vertex);
        }
      }
      if (poly.vertices.size() >= 2 &&
          poly.vertices.front().row == poly.vertices.back().row &&
          poly.vertices.front().col == poly.vertices.back().col) {
        poly.vertices.pop_back();  // accept explicitly closed rings
      }
      if (poly.vertices.size() < 3) {
        throw InputError(where + ": polygon needs at least 3 distinct vertices");
      }
      if (!geom::is_simple_polygon(poly.vertices)) {
        throw InputError(where + ": self-intersecting polygon by " + poly.annotator_id +
                         " on " + poly.subframe_id + " rejected (fix the geometry; " +
                         "auto-repair is deliberately not performed)");
      }
      out.push_back(std::move(poly));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace frostpix::labels
