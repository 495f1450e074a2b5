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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kFaceRing[12] = {2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4};
constexpr int kFacePhi[12] = {1, 3, 5, 7, 0, 2, 4, 6, 1, 3, 5, 7};

// Forward equal-area projection of the sphere: equatorial cylindrical
// band for |z| <= 2/3, interrupted collignon-style caps beyond it.
void project(double theta, double phi, double* x, double* y) {
  const double z = std::cos(theta);
  phi = std::fmod(phi, 2 * kPi);
  if (phi < 0) phi += 2 * kPi;
  if (std::fabs(z) <= 2.0 / 3.0) {
    *x = phi;
    *y = 3.0 * kPi / 8.0 * z;
    return;
  }
  const double sigma = std::sqrt(3.0 * (1.0 - std::fabs(z)));
  int quad = static_cast<int>(phi / (kPi / 2));
  if (quad > 3) quad = 3;
  const double phic = (quad + 0.5) * (kPi / 2);
  *x = phic + (phi - phic) * sigma;
  *y = std::copysign(kPi / 4.0 * (2.0 - sigma), z);
}

void face_center(int f, double* xf, double* yf) {
  *xf = kFacePhi[f] * kPi / 4.0;
  *yf = (3 - kFaceRing[f]) * kPi / 4.0;
}

std::uint64_t interleave(std::uint64_t ix, std::uint64_t iy) {
  std::uint64_t out = 0;
  for (int b = 0; b < 32; ++b) {
    out |= ((ix >> b) & 1ULL) << (2 * b);
    out |= ((iy >> b) & 1ULL) << (2 * b + 1);
  }
  return out;
}

}  // namespace

FaceCell ang_to_cell(std::int64_t nside, double theta, double phi) {
  double x, y;
  project(theta, phi, &x, &y);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int f = 0; f < 12; ++f) {
      double xf, yf;
      face_center(f, &xf, &yf);
      double dx = x - xf;
      while (dx <= -kPi) dx += 2 * kPi;
      while (dx > kPi) dx -= 2 * kPi;
      const double dy = y - yf;
      const double u_ne = (dx + dy) / (kPi / 2) + 0.5;
      const double u_nw = (dy - dx) / (kPi / 2) + 0.5;
      if (u_ne >= 0.0 && u_ne < 1.0 && u_nw >= 0.0 && u_nw < 1.0) {
        FaceCell cell;
        cell.face = f;
        cell.ix = std::min<std::int64_t>(
            static_cast<std::int64_t>(u_ne * static_cast<double>(nside)), nside - 1);
        cell.iy = std::min<std::int64_t>(
            static_cast<std::int64_t>(u_nw * static_cast<double>(nside)), nside - 1);
        return cell;
      }
    }
    // exactly on a face seam: nudge off the measure-zero boundary
    project(theta + 3e-14, phi + 3e-14, &x, &y);
    theta += 3e-14;
    phi += 3e-14;
  }
  throw std::logic_error("oracle ang_to_cell: no face found");
}

std::int64_t cell_to_nested(std::int64_t nside, const FaceCell& cell) {
  return cell.face * nside * nside +
         static_cast<std::int64_t>(interleave(static_cast<std::uint64_t>(cell.ix),
                                              static_cast<std::uint64_t>(cell.iy)));
}

std::int64_t cell_to_ring(std::int64_t nside, const FaceCell& cell) {
  const std::int64_t npix = 12 * nside * nside;
  const std::int64_t nl4 = 4 * nside;
  const std::int64_t ring = kFaceRing[cell.face] * nside - cell.ix - cell.iy - 1;

  std::int64_t in_ring, before, shift;
  if (ring < nside) {  // north cap: ring i holds 4i pixels
    in_ring = ring;
    before = 2 * ring * (ring - 1);
    shift = 0;
  } else if (ring > 3 * nside) {  // south cap mirrored
    in_ring = nl4 - ring;
    before = npix - 2 * (in_ring + 1) * in_ring;
    shift = 0;
  } else {  // equatorial belt: 4*nside per ring with parity shift
    in_ring = nside;
    before = 2 * nside * (nside - 1) + (ring - nside) * nl4;
    shift = (ring - nside) & 1;
  }
  std::int64_t j = (kFacePhi[cell.face] * in_ring + cell.ix - cell.iy + 1 + shift) / 2;
  if (j > nl4) j -= nl4;
  if (j < 1) j += nl4;
  return before + j - 1;
}

std::int64_t ang2pix_ring(std::int64_t nside, double theta, double phi) {
  return cell_to_ring(nside, ang_to_cell(nside, theta, phi));
}

std::int64_t ang2pix_nested(std::int64_t nside, double theta, double phi) {
  return cell_to_nested(nside, ang_to_cell(nside, theta, phi));
}

void cell_center(std::int64_t nside, const FaceCell& cell, double* theta, double* phi) {
  const double u_ne = (static_cast<double>(cell.ix) + 0.5) / static_cast<double>(nside);
  const double u_nw = (static_cast<double>(cell.iy) + 0.5) / static_cast<double>(nside);
  double xf, yf;
  face_center(cell.face, &xf, &yf);
  const double x = xf + (u_ne - u_nw) * kPi / 4.0;
  const double y = yf + (u_ne + u_nw - 1.0) * kPi / 4.0;

  double z, ph;
  if (std::fabs(y) <= kPi / 4.0) {
    z = y * 8.0 / (3.0 * kPi);
    ph = x;
  } else {
    const double sigma = 2.0 - std::fabs(y) * 4.0 / kPi;
    z = std::copysign(1.0 - sigma * sigma / 3.0, y);
    ph = sigma == 0.0 ? xf : xf + (x - xf) / sigma;
  }
  *theta = std::acos(std::clamp(z, -1.0, 1.0));
  ph = std::fmod(ph, 2 * kPi);
  if (ph < 0) ph += 2 * kPi;
  *phi = ph;
}

// ---- polygon areas ----

namespace {

struct HalfPlane {
  // points (r, c) with a*r + b*c <= d are kept
  double a, b, d;
};

std::vector<frostpix::geom::Vertex> clip_halfplane(
    const std::vector<frostpix::geom::Vertex>& pts, const HalfPlane& hp) {
  std::vector<frostpix::geom::Vertex> out;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % n];
    const double fp = hp.a * p.row + hp.b * p.col - hp.d;
    const double fq = hp.a * q.row + hp.b * q.col - hp.d;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double t = fp / (fp - fq);
      out.push_back(frostpix::geom::Vertex{p.row + t * (q.row - p.row),
                                           p.col + t * (q.col - p.col)});
    }
  }
  return out;
}

double shoelace(const std::vector<frostpix::geom::Vertex>& pts) {
  if (pts.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    twice += a.row * b.col - b.row * a.col;
  }
  return std::fabs(twice) / 2.0;
}

bool point_in_polygon(const std::vector<frostpix::geom::Vertex>& poly, double r,
                      double c) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.col > c) != (b.col > c)) {
      const double t = (c - a.col) / (b.col - a.col);
      if (r < a.row + t * (b.row - a.row)) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double clip_area_halfplanes(const std::vector<frostpix::geom::Vertex>& poly,
                            const frostpix::geom::Rect& rect) {
  auto pts = poly;
  pts = clip_halfplane(pts, HalfPlane{-1, 0, -rect.row0});  // row >= row0
  pts = clip_halfplane(pts, HalfPlane{1, 0, rect.row1});    // row <= row1
  pts = clip_halfplane(pts, HalfPlane{0, -1, -rect.col0});  // col >= col0
  pts = clip_halfplane(pts, HalfPlane{0, 1, rect.col1});    // col <= col1
  return shoelace(pts);
}

double clip_area_monte_carlo(const std::vector<frostpix::geom::Vertex>& poly,
                             const frostpix::geom::Rect& rect, int samples,
                             std::uint64_t seed) {
  Rng rng(seed);
  std::int64_t hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double r = rng.uniform(rect.row0, rect.row1);
    const double c = rng.uniform(rect.col0, rect.col1);
    if (point_in_polygon(poly, r, c)) ++hits;
  }
  return rect.area() * static_cast<double>(hits) / static_cast<double>(samples);
}

// ---- exhaustive tiler ----

std::vector<BruteSubframe> brute_subframes(const frostpix::raster::Observation& obs,
                                           int size, double max_invalid) {
  std::vector<BruteSubframe> out;
  for (int r0 = 0; r0 < obs.height; r0 += size) {
    for (int c0 = 0; c0 < obs.width; c0 += size) {
      BruteSubframe sf;
      sf.origin_row = r0;
      sf.origin_col = c0;
      sf.rows = std::min(size, obs.height - r0);
      sf.cols = std::min(size, obs.width - c0);
      std::int64_t bad = 0, all = 0;
      for (int r = r0; r < r0 + sf.rows; ++r) {
        for (int c = c0; c < c0 + sf.cols; ++c) {
          ++all;
          if (!obs.pixel_valid(r, c)) ++bad;
        }
      }
      sf.invalid_fraction = static_cast<double>(bad) / static_cast<double>(all);
      sf.retained = sf.invalid_fraction <= max_invalid;
      out.push_back(sf);
    }
  }
  return out;
}

std::vector<BruteTile> brute_tiles(const frostpix::raster::Observation& obs,
                                   const BruteSubframe& sf, int tile_size) {
  std::vector<BruteTile> out;
  for (int r0 = sf.origin_row; r0 + tile_size <= sf.origin_row + sf.rows;
       r0 += tile_size) {
    for (int c0 = sf.origin_col; c0 + tile_size <= sf.origin_col + sf.cols;
         c0 += tile_size) {
      BruteTile t;
      t.origin_row = r0;
      t.origin_col = c0;
      for (int r = r0; r < r0 + tile_size; ++r) {
        for (int c = c0; c < c0 + tile_size; ++c) {
          if (obs.at(r, c) == 0) ++t.black_pixels;
        }
      }
      out.push_back(t);
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace oracles
