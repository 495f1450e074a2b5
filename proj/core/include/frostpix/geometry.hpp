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

#ifndef FROSTPIX_GEOMETRY_HPP
#define FROSTPIX_GEOMETRY_HPP

#include <vector>

namespace frostpix::geom {

/// A vertex in raster coordinates (row grows down, col grows right).
struct Vertex {
  double row = 0.0;
  double col = 0.0;
};

/// Axis-aligned rectangle [row0, row1] x [col0, col1].
struct Rect {
  double row0 = 0.0;
  double col0 = 0.0;
  double row1 = 0.0;
  double col1 = 0.0;

  double area() const { return (row1 - row0) * (col1 - col0); }
};

/// Unsigned shoelace area of the (closed) polygon.
double polygon_area(const std::vector<Vertex>& vertices);

/// True when no two non-adjacent edges touch or cross and no edge is
/// degenerate. Quadratic in the vertex count.
bool is_simple_polygon(const std::vector<Vertex>& vertices);

/// Sutherland-Hodgman clip against a rectangle. The returned chain may
/// contain zero-width bridge edges for concave subjects; these cancel in
/// the shoelace sum, so intersection_area() is exact for any simple
/// polygon.
std::vector<Vertex> clip_polygon_to_rect(const std::vector<Vertex>& vertices,
                                         const Rect& rect);

/// Area of polygon ∩ rect.
double intersection_area(const std::vector<Vertex>& vertices, const Rect& rect);

}  // namespace frostpix::geom

#endif  // FROSTPIX_GEOMETRY_HPP
