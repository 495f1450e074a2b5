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

#include "frostpix/geometry.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"

using frostpix::geom::Rect;
using frostpix::geom::Vertex;

namespace {

std::vector<Vertex> square(double r0, double c0, double side) {
  return {{r0, c0}, {r0, c0 + side}, {r0 + side, c0 + side}, {r0 + side, c0}};
}

// star-shaped (often concave) polygon around a center
std::vector<Vertex> random_star(oracles::Rng& rng, double cr, double cc, int n) {
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0.0, 2 * std::numbers::pi));
  std::sort(angles.begin(), angles.end());
  std::vector<Vertex> pts;
  for (const double a : angles) {
    const double radius = rng.uniform(0.5, 8.0);
    pts.push_back(Vertex{cr + radius * std::cos(a), cc + radius * std::sin(a)});
  }
  return pts;
}

}  // namespace

TEST_CASE("polygon_area basics") {
  CHECK(frostpix::geom::polygon_area(square(0, 0, 2)) == doctest::Approx(4.0));
  CHECK(frostpix::geom::polygon_area({{0, 0}, {0, 4}, {3, 0}}) == doctest::Approx(6.0));
  CHECK(frostpix::geom::polygon_area({{0, 0}, {1, 1}}) == 0.0);
  // collinear "triangle" has zero area
  CHECK(frostpix::geom::polygon_area({{0, 0}, {1, 1}, {2, 2}}) == 0.0);
}

TEST_CASE("simplicity detection") {
  CHECK(frostpix::geom::is_simple_polygon(square(0, 0, 2)));
  // bowtie
  CHECK_FALSE(frostpix::geom::is_simple_polygon({{0, 0}, {2, 2}, {0, 2}, {2, 0}}));
  // duplicate consecutive vertex => degenerate edge
  CHECK_FALSE(frostpix::geom::is_simple_polygon({{0, 0}, {0, 0}, {1, 1}, {0, 1}}));
  CHECK_FALSE(frostpix::geom::is_simple_polygon({{0, 0}, {1, 1}}));
  // concave but simple
  CHECK(frostpix::geom::is_simple_polygon({{0, 0}, {0, 4}, {4, 4}, {4, 0}, {2, 2}}));
}

TEST_CASE("clipping: containment, disjoint, corner touch") {
  const Rect tile{0, 0, 10, 10};
  // polygon fully containing the tile clips to the whole tile
  CHECK(frostpix::geom::intersection_area(square(-5, -5, 20), tile) ==
        doctest::Approx(100.0));
  // fully inside
  CHECK(frostpix::geom::intersection_area(square(2, 2, 3), tile) == doctest::Approx(9.0));
  // disjoint
  CHECK(frostpix::geom::intersection_area(square(20, 20, 3), tile) == 0.0);
  // touching at exactly one corner point: measure zero
  CHECK(frostpix::geom::intersection_area(square(10, 10, 3), tile) == 0.0);
  // sharing an edge but no interior
  CHECK(frostpix::geom::intersection_area(square(10, 0, 5), tile) == 0.0);
}

TEST_CASE("clipped area equals the half-plane oracle on fixed shapes") {
  const Rect tile{0, 0, 299, 299};
  // right triangle engineered to cover exactly 37% of the tile
  const std::vector<Vertex> tri{{0, 0}, {299, 0}, {0, 2 * 0.37 * 299}};
  const double got = frostpix::geom::intersection_area(tri, tile);
  CHECK(got == doctest::Approx(0.37 * 299 * 299).epsilon(1e-12));
  CHECK(got == doctest::Approx(oracles::clip_area_halfplanes(tri, tile)).epsilon(1e-12));
}

TEST_CASE("clipped area matches oracle routes on random polygons") {
  oracles::Rng rng(0xC11BULL);
  const Rect tile{0, 0, 10, 10};
  int checked_mc = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto poly = random_star(rng, rng.uniform(-2, 12), rng.uniform(-2, 12),
                                  static_cast<int>(rng.range(3, 9)));
    if (!frostpix::geom::is_simple_polygon(poly)) continue;
    const double got = frostpix::geom::intersection_area(poly, tile);
    const double want = oracles::clip_area_halfplanes(poly, tile);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));

    // Monte Carlo cross-check when the overlap is substantial
    if (want > 5.0 && checked_mc < 40) {
      ++checked_mc;
      const double mc = oracles::clip_area_monte_carlo(poly, tile, 200000,
                                                       0x9999ULL + trial);
      CHECK(got == doctest::Approx(mc).epsilon(0.01));
    }
  }
  CHECK(checked_mc > 10);
}
