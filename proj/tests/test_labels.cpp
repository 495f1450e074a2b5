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
#include <sstream>

#include <doctest.h>

#include "frostpix/error.hpp"
#include "oracles.hpp"

using namespace frostpix;
using labels::AnnotationPolygon;
using labels::OverlapRule;
using labels::VoteConfig;
using labels::ZeroOverlapPolicy;

namespace {

raster::Subframe test_subframe() {
  raster::Subframe sf;
  sf.id = "obs_sf0_0";
  sf.observation_id = "obs";
  sf.actual_rows = 1000;
  sf.actual_cols = 1000;
  return sf;
}

// 299-pixel tile at the subframe origin
raster::TileGeometry test_tile() {
  raster::TileGeometry t;
  t.id = "obs_sf0_0_t0_0";
  t.subframe_id = "obs_sf0_0";
  t.size = 299;
  return t;
}

AnnotationPolygon poly_square(const std::string& annotator, double r0, double c0,
                              double side,
                              GeologicContext ctx = GeologicContext::other) {
  AnnotationPolygon p;
  p.subframe_id = "obs_sf0_0";
  p.annotator_id = annotator;
  p.vertices = {{r0, c0}, {r0, c0 + side}, {r0 + side, c0 + side}, {r0 + side, c0}};
  p.context = ctx;
  p.indicators = {VisibleIndicator::uniform_albedo};
  return p;
}

// independent plurality-with-priority reference
GeologicContext plurality_oracle(std::vector<GeologicContext> votes) {
  const GeologicContext priority[] = {GeologicContext::dunes, GeologicContext::gullies,
                                      GeologicContext::crater_rim_wall,
                                      GeologicContext::other};
  int best_count = -1;
  GeologicContext best = GeologicContext::other;
  for (const auto c : priority) {
    const int count = static_cast<int>(std::count(votes.begin(), votes.end(), c));
    if (count > best_count) {
      best_count = count;
      best = c;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("overlap: containment, corner touch, area fraction") {
  const auto sf = test_subframe();
  const auto tile = test_tile();

  // polygon fully containing the tile
  CHECK(labels::polygon_overlaps_tile(poly_square("a", -10, -10, 400), tile, sf,
                                      OverlapRule::any_intersection()));
  // single-corner contact has zero area
  CHECK_FALSE(labels::polygon_overlaps_tile(poly_square("a", 299, 299, 50), tile, sf,
                                            OverlapRule::any_intersection()));
  // disjoint
  CHECK_FALSE(labels::polygon_overlaps_tile(poly_square("a", 600, 600, 50), tile, sf,
                                            OverlapRule::any_intersection()));

  // triangle covering exactly 37% of the tile: any_intersection yes,
  // min_area_fraction(0.5) no, with the area cross-checked by the oracle
  AnnotationPolygon tri;
  tri.subframe_id = sf.id;
  tri.annotator_id = "a";
  tri.vertices = {{0, 0}, {299, 0}, {0, 2 * 0.37 * 299}};
  tri.context = GeologicContext::other;
  tri.indicators = {VisibleIndicator::halos};
  const auto rect = labels::tile_rect_in_subframe(tile, sf);
  CHECK(oracles::clip_area_halfplanes(tri.vertices, rect) ==
        doctest::Approx(0.37 * rect.area()).epsilon(1e-12));
  CHECK(labels::polygon_overlaps_tile(tri, tile, sf, OverlapRule::any_intersection()));
  CHECK_FALSE(
      labels::polygon_overlaps_tile(tri, tile, sf, OverlapRule::min_area_fraction(0.5)));
  CHECK(labels::polygon_overlaps_tile(tri, tile, sf, OverlapRule::min_area_fraction(0.25)));
}

TEST_CASE("degenerate polygons never overlap and record a warning") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  AnnotationPolygon degenerate;
  degenerate.subframe_id = sf.id;
  degenerate.annotator_id = "a";
  degenerate.vertices = {{10, 10}, {20, 20}, {30, 30}};  // collinear
  degenerate.context = GeologicContext::other;
  degenerate.indicators = {VisibleIndicator::halos};
  std::vector<std::string> warnings;
  CHECK_FALSE(labels::polygon_overlaps_tile(degenerate, tile, sf,
                                            OverlapRule::any_intersection(), &warnings));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("degenerate") != std::string::npos);
}

TEST_CASE("mismatched subframe is an error") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  auto poly = poly_square("a", 0, 0, 50);
  poly.subframe_id = "other_sf";
  CHECK_THROWS_AS(
      labels::polygon_overlaps_tile(poly, tile, sf, OverlapRule::any_intersection()),
      std::invalid_argument);
  CHECK_THROWS_AS(labels::aggregate_tile_label(tile, sf, std::vector{poly}, VoteConfig{},
                                               SeasonTag::winter_candidate),
                  std::invalid_argument);
}

TEST_CASE("vote truth table over k distinct annotators") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  const char* names[] = {"ann1", "ann2", "ann3"};

  for (const auto policy : {ZeroOverlapPolicy::background, ZeroOverlapPolicy::exclude}) {
    VoteConfig cfg;
    cfg.zero_overlap = policy;
    for (int k = 0; k <= 3; ++k) {
      std::vector<AnnotationPolygon> polys;
      for (int a = 0; a < k; ++a) polys.push_back(poly_square(names[a], 0, 0, 100));
      const auto vote = labels::aggregate_tile_label(tile, sf, polys, cfg,
                                                     SeasonTag::winter_candidate);
      CAPTURE(k);
      CHECK(vote.overlap_count == k);
      if (k >= 2) {
        CHECK(vote.label == TileLabel::frost);
        CHECK(vote.context.has_value());
      } else if (k == 1) {
        CHECK(vote.label == TileLabel::excluded_ambiguous);
      } else {
        CHECK(vote.label == (policy == ZeroOverlapPolicy::background
                                 ? TileLabel::background
                                 : TileLabel::excluded_ambiguous));
      }
    }
  }
}

TEST_CASE("summer subframes are background regardless of polygons") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  std::vector<AnnotationPolygon> polys = {poly_square("ann1", 0, 0, 100),
                                          poly_square("ann2", 0, 0, 100),
                                          poly_square("ann3", 0, 0, 100)};
  const auto vote = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                 SeasonTag::summer_negative);
  CHECK(vote.label == TileLabel::background);
  CHECK(vote.overlap_count == 0);
}

TEST_CASE("one vote per annotator, not per polygon") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  // one annotator with three overlapping polygons is still a single vote
  std::vector<AnnotationPolygon> polys = {poly_square("solo", 0, 0, 50),
                                          poly_square("solo", 50, 50, 50),
                                          poly_square("solo", 100, 100, 50)};
  const auto vote = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                 SeasonTag::winter_candidate);
  CHECK(vote.overlap_count == 1);
  CHECK(vote.label == TileLabel::excluded_ambiguous);
}

TEST_CASE("non-overlapping polygons do not contribute votes") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  std::vector<AnnotationPolygon> polys = {poly_square("ann1", 0, 0, 100),
                                          poly_square("ann2", 700, 700, 100)};
  const auto vote = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                 SeasonTag::winter_candidate);
  CHECK(vote.overlap_count == 1);
  CHECK(vote.label == TileLabel::excluded_ambiguous);
}

TEST_CASE("context plurality and the fixed tie-break priority") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  const auto run = [&](std::vector<GeologicContext> contexts) {
    std::vector<AnnotationPolygon> polys;
    const char* names[] = {"ann1", "ann2", "ann3"};
    for (std::size_t i = 0; i < contexts.size(); ++i) {
      polys.push_back(poly_square(names[i], 0, 0, 100, contexts[i]));
    }
    VoteConfig cfg;
    cfg.majority_threshold = static_cast<int>(contexts.size() >= 2 ? 2 : 1);
    return labels::aggregate_tile_context(tile, sf, polys, cfg);
  };

  CHECK(run({GeologicContext::dunes, GeologicContext::dunes, GeologicContext::other}) ==
        GeologicContext::dunes);
  CHECK(run({GeologicContext::dunes, GeologicContext::gullies}) == GeologicContext::dunes);
  CHECK(run({GeologicContext::other, GeologicContext::other, GeologicContext::other}) ==
        GeologicContext::other);

  // exhaustive: all 1-, 2- and 3-vote combinations match the reference
  const GeologicContext all[] = {GeologicContext::dunes, GeologicContext::gullies,
                                 GeologicContext::crater_rim_wall, GeologicContext::other};
  for (const auto a : all) {
    CHECK(run({a}) == plurality_oracle({a}));
    for (const auto b : all) {
      CHECK(run({a, b}) == plurality_oracle({a, b}));
      for (const auto c : all) {
        CHECK(run({a, b, c}) == plurality_oracle({a, b, c}));
      }
    }
  }
}

TEST_CASE("annotator with several polygons votes with its largest overlap") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  std::vector<AnnotationPolygon> polys = {
      poly_square("ann1", 0, 0, 20, GeologicContext::gullies),    // small overlap
      poly_square("ann1", 0, 0, 250, GeologicContext::dunes),     // large overlap
      poly_square("ann2", 0, 0, 100, GeologicContext::gullies),
      poly_square("ann3", 0, 0, 100, GeologicContext::gullies),
  };
  // ann1's dunes polygon is its vote, but gullies wins 2:1
  CHECK(labels::aggregate_tile_context(tile, sf, polys, VoteConfig{}) ==
        GeologicContext::gullies);
  // drop one gullies annotator: 1:1 tie -> dunes by priority
  polys.pop_back();
  CHECK(labels::aggregate_tile_context(tile, sf, polys, VoteConfig{}) ==
        GeologicContext::dunes);
}

TEST_CASE("context query on a non-frost tile is an error") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  std::vector<AnnotationPolygon> polys = {poly_square("ann1", 0, 0, 100)};
  CHECK_THROWS_AS(labels::aggregate_tile_context(tile, sf, polys, VoteConfig{}),
                  std::invalid_argument);
}

TEST_CASE("label monotonicity: a new annotator's overlap never demotes a tile") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  oracles::Rng rng(0xF00DULL);
  const char* names[] = {"ann1", "ann2", "ann3"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AnnotationPolygon> polys;
    const int k = static_cast<int>(rng.range(0, 2));
    for (int a = 0; a < k; ++a) {
      polys.push_back(poly_square(names[a], rng.uniform(0, 250), rng.uniform(0, 250),
                                  rng.uniform(10, 200)));
    }
    const auto before = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                     SeasonTag::winter_candidate);
    polys.push_back(poly_square(names[k], 0, 0, 299));  // guaranteed overlap
    const auto after = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                    SeasonTag::winter_candidate);
    REQUIRE(after.overlap_count == before.overlap_count + 1);
    if (before.label == TileLabel::frost) REQUIRE(after.label == TileLabel::frost);
    // and never frost -> background/excluded by adding an overlap
    if (after.label == TileLabel::background) {
      REQUIRE(before.label == TileLabel::background);
    }
  }
}

TEST_CASE("permutation invariance of label and context") {
  const auto sf = test_subframe();
  const auto tile = test_tile();
  std::vector<AnnotationPolygon> polys = {
      poly_square("ann1", 0, 0, 120, GeologicContext::dunes),
      poly_square("ann2", 10, 10, 150, GeologicContext::gullies),
      poly_square("ann3", 20, 20, 90, GeologicContext::gullies),
  };
  const auto base = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                 SeasonTag::winter_candidate);
  std::sort(polys.begin(), polys.end(),
            [](const auto& a, const auto& b) { return a.annotator_id > b.annotator_id; });
  const auto flipped = labels::aggregate_tile_label(tile, sf, polys, VoteConfig{},
                                                    SeasonTag::winter_candidate);
  CHECK(base.label == flipped.label);
  CHECK(base.context == flipped.context);
  CHECK(base.contributors == flipped.contributors);
}

TEST_CASE("vote config validation") {
  VoteConfig cfg;
  cfg.majority_threshold = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.majority_threshold = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(OverlapRule::min_area_fraction(0.0), std::invalid_argument);
  CHECK_THROWS_AS(OverlapRule::min_area_fraction(1.5), std::invalid_argument);
}

TEST_CASE("annotations JSONL parsing") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return labels::parse_annotations_jsonl(in, "test.jsonl");
  };

  const auto good = parse(
      R"({"subframe_id":"s","annotator_id":"a","vertices":[[0,0],[0,10],[10,10],[10,0]],"context":"dunes","indicators":["halos","defrosting_marks"]})"
      "\n\n"
      R"({"subframe_id":"s","annotator_id":"b","vertices":[[0,0],[0,5],[5,5],[0,0]],"context":"other","indicators":["uniform_albedo"]})"
      "\n");
  REQUIRE(good.size() == 2);
  CHECK(good[0].context == GeologicContext::dunes);
  CHECK(good[0].indicators.size() == 2);
  CHECK(good[1].vertices.size() == 3);  // closing vertex dropped

  CHECK_THROWS_WITH_AS(parse("not json\n"), doctest::Contains("invalid JSON"),
                       InputError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"subframe_id":"s","annotator_id":"a","vertices":[[0,0],[1,1]],"context":"other","indicators":["halos"]})"),
      doctest::Contains("at least 3"), InputError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"subframe_id":"s","annotator_id":"a","vertices":[[0,0],[2,2],[0,2],[2,0]],"context":"other","indicators":["halos"]})"),
      doctest::Contains("self-intersecting"), InputError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"subframe_id":"s","annotator_id":"a","vertices":[[0,0],[0,2],[2,2]],"context":"other","indicators":[]})"),
      doctest::Contains("indicator"), InputError);
  CHECK_THROWS_AS(
      parse(R"({"subframe_id":"s","annotator_id":"a","vertices":[[0,0],[0,2],[2,2]],"context":"lava","indicators":["halos"]})"),
      InputError);
  CHECK_THROWS_AS(
      parse(R"({"annotator_id":"a","vertices":[[0,0],[0,2],[2,2]],"context":"other","indicators":["halos"]})"),
      InputError);
}
