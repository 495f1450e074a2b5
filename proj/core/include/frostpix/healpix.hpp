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

#ifndef FROSTPIX_HEALPIX_HPP
#define FROSTPIX_HEALPIX_HPP

#include <cstdint>
#include <string>

namespace frostpix::healpix {

/// Pixel index ordering on the sphere tessellation.
///
/// `Ring` counts pixels along isolatitude rings from the north pole;
/// `Nested` follows the hierarchical quad-tree within each of the 12 base
/// faces. Both orderings address the same pixels; see ring_to_nested().
enum class Scheme { Ring, Nested };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Resolution parameter. Each of the 12 base faces is subdivided
/// `value` times along each side, so value must be a power of two.
class Nside {
 public:
  explicit Nside(std::int64_t value);

  std::int64_t value() const { return value_; }
  /// log2(value).
  int order() const { return order_; }
  /// Total pixel count, 12 * value^2.
  std::int64_t npix() const { return 12 * value_ * value_; }

 private:
  std::int64_t value_;
  int order_;
};

/// A point on the unit sphere: colatitude theta in [0, pi], east
/// longitude phi normalized to [0, 2*pi).
struct UnitSphereCoord {
  double theta = 0.0;
  double phi = 0.0;

  /// Validates and normalizes. theta outside [0, pi] by more than 1e-12
  /// is an error; smaller violations are clamped. phi is reduced mod 2*pi.
  static UnitSphereCoord from_radians(double theta, double phi);

  /// Planetographic degrees north latitude / east longitude:
  /// theta = (90 - lat) * pi/180, phi = lon * pi/180 reduced mod 2*pi.
  static UnitSphereCoord from_degrees(double lat_deg, double lon_east_deg);
};

/// A pixel index together with the scheme it is expressed in.
struct PixelId {
  std::int64_t index = 0;
  Scheme scheme = Scheme::Ring;
};

/// 12 * nside^2.
std::int64_t npix(Nside nside);

/// Maps a sphere point to the pixel containing it. The pixel areas
/// partition the sphere, so every valid coordinate maps to exactly one
/// index; points exactly on pixel edges (a measure-zero set) resolve by
/// the floor conventions of the construction.
PixelId ang2pix(Nside nside, UnitSphereCoord coord, Scheme scheme);

/// Center of a pixel, on its isolatitude ring. Inverse of ang2pix on
/// centers: ang2pix(nside, pix2ang(nside, p), p.scheme) == p.
UnitSphereCoord pix2ang(Nside nside, PixelId pixel);

/// Scheme conversions; mutually inverse bijections on [0, npix).
PixelId ring_to_nested(Nside nside, PixelId pixel);
PixelId nested_to_ring(Nside nside, PixelId pixel);

/// Degree-based convenience wrapper around ang2pix. lat must lie in
/// [-90, 90]; lon is reduced mod 360. Non-finite input is an error.
PixelId latlon_to_pixel(Nside nside, double lat_deg, double lon_east_deg,
                        Scheme scheme);

struct LatLon {
  double lat_deg = 0.0;
  double lon_east_deg = 0.0;
};

/// Pixel center expressed in degrees, for diagnostics and reports.
LatLon pixel_center_latlon(Nside nside, PixelId pixel);

}  // namespace frostpix::healpix

#endif  // FROSTPIX_HEALPIX_HPP
