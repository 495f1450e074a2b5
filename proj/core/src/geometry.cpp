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

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace frostpix::geom {

namespace {

double cross(const Vertex& o, const Vertex& a, const Vertex& b) {
  return (a.row - o.row) * (b.col - o.col) - (a.col - o.col) * (b.row - o.row);
}

int orientation_sign(const Vertex& o, const Vertex& a, const Vertex& b) {
  const double c = cross(o, a, b);
  if (c > 0) return 1;
  if (c < 0) return -1;
  return 0;
}

bool on_segment(const Vertex& a, const Vertex& b, const Vertex& p) {
  return std::min(a.row, b.row) <= p.row && p.row <= std::max(a.row, b.row) &&
         std::min(a.col, b.col) <= p.col && p.col <= std::max(a.col, b.col);
}

// Touching counts as intersecting: polygons whose edges merely graze each
// other are still rejected as non-simple.
bool segments_intersect(const Vertex& p1, const Vertex& p2, const Vertex& q1,
                        const Vertex& q2) {
  const int o1 = orientation_sign(p1, p2, q1);
  const int o2 = orientation_sign(p1, p2, q2);
  const int o3 = orientation_sign(q1, q2, p1);
  const int o4 = orientation_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

enum class Side { RowMin, RowMax, ColMin, ColMax };

bool inside(const Vertex& v, Side side, const Rect& r) {
  switch (side) {
    case Side::RowMin: return v.row >= r.row0;
    case Side::RowMax: return v.row <= r.row1;
    case Side::ColMin: return v.col >= r.col0;
    case Side::ColMax: return v.col <= r.col1;
  }
  return false;
}

Vertex edge_intersection(const Vertex& a, const Vertex& b, Side side, const Rect& r) {
  if (side == Side::RowMin || side == Side::RowMax) {
    const double row = side == Side::RowMin ? r.row0 : r.row1;
    const double t = (row - a.row) / (b.row - a.row);
    return Vertex{row, a.col + t * (b.col - a.col)};
  }
  const double col = side == Side::ColMin ? r.col0 : r.col1;
  const double t = (col - a.col) / (b.col - a.col);
  return Vertex{a.row + t * (b.row - a.row), col};
}

std::vector<Vertex> clip_one_side(const std::vector<Vertex>& pts, Side side,
                                  const Rect& r) {
  std::vector<Vertex> out;
  out.reserve(pts.size() + 4);
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& cur = pts[i];
    const Vertex& nxt = pts[(i + 1) % n];
    const bool cur_in = inside(cur, side, r);
    const bool nxt_in = inside(nxt, side, r);
    if (cur_in) {
      out.push_back(cur);
      if (!nxt_in) out.push_back(edge_intersection(cur, nxt, side, r));
    } else if (nxt_in) {
      out.push_back(edge_intersection(cur, nxt, side, r));
    }
  }
  return out;
}

}  // namespace

double polygon_area(const std::vector<Vertex>& vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& a = vertices[i];
    const Vertex& b = vertices[(i + 1) % n];
    twice += a.row * b.col - b.row * a.col;
  }
  return std::fabs(twice) * 0.5;
}

bool is_simple_polygon(const std::vector<Vertex>& vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& a = vertices[i];
    const Vertex& b = vertices[(i + 1) % n];
    if (a.row == b.row && a.col == b.col) return false;  // degenerate edge
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edge pairs (they share one endpoint by construction)
      if ((j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(a, b, vertices[j], vertices[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Vertex> clip_polygon_to_rect(const std::vector<Vertex>& vertices,
                                         const Rect& rect) {
  if (vertices.size() < 3) return {};
  std::vector<Vertex> pts = clip_one_side(vertices, Side::RowMin, rect);
  if (pts.empty()) return pts;
  pts = clip_one_side(pts, Side::RowMax, rect);
  if (pts.empty()) return pts;
  pts = clip_one_side(pts, Side::ColMin, rect);
  if (pts.empty()) return pts;
  return clip_one_side(pts, Side::ColMax, rect);
}

double intersection_area(const std::vector<Vertex>& vertices, const Rect& rect) {
  return polygon_area(clip_polygon_to_rect(vertices, rect));
}

}  // namespace frostpix::geom
