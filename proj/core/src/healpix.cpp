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

#include "frostpix/healpix.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frostpix::healpix {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;
constexpr double kTwoThirds = 2.0 / 3.0;

// Ring index of the northernmost ring touching each base face, in units
// of nside, and the phi offset of each face center in units of pi/4.
constexpr int kFaceRing[12] = {2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4};
constexpr int kFacePhi[12] = {1, 3, 5, 7, 0, 2, 4, 6, 1, 3, 5, 7};

std::int64_t isqrt64(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v) + 0.5));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t floor_div(double x) {
  return static_cast<std::int64_t>(std::floor(x));
}

std::int64_t pos_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Interleaves the lower 32 bits of x into even bit positions.
std::uint64_t spread_bits(std::uint64_t v) {
  v &= 0xffffffffULL;
  v = (v ^ (v << 16)) & 0x0000ffff0000ffffULL;
  v = (v ^ (v << 8)) & 0x00ff00ff00ff00ffULL;
  v = (v ^ (v << 4)) & 0x0f0f0f0f0f0f0f0fULL;
  v = (v ^ (v << 2)) & 0x3333333333333333ULL;
  v = (v ^ (v << 1)) & 0x5555555555555555ULL;
  return v;
}

std::uint64_t compress_bits(std::uint64_t v) {
  v &= 0x5555555555555555ULL;
  v = (v ^ (v >> 1)) & 0x3333333333333333ULL;
  v = (v ^ (v >> 2)) & 0x0f0f0f0f0f0f0f0fULL;
  v = (v ^ (v >> 4)) & 0x00ff00ff00ff00ffULL;
  v = (v ^ (v >> 8)) & 0x0000ffff0000ffffULL;
  v = (v ^ (v >> 16)) & 0x00000000ffffffffULL;
  return v;
}

struct Xyf {
  int face;
  std::int64_t ix;
  std::int64_t iy;
};

std::int64_t xyf_to_nested(Nside n, const Xyf& p) {
  return (static_cast<std::int64_t>(p.face) << (2 * n.order())) +
         static_cast<std::int64_t>(spread_bits(static_cast<std::uint64_t>(p.ix)) |
                                   (spread_bits(static_cast<std::uint64_t>(p.iy)) << 1));
}

Xyf nested_to_xyf(Nside n, std::int64_t pix) {
  const int face = static_cast<int>(pix >> (2 * n.order()));
  const auto within = static_cast<std::uint64_t>(pix & (n.value() * n.value() - 1));
  return {face, static_cast<std::int64_t>(compress_bits(within)),
          static_cast<std::int64_t>(compress_bits(within >> 1))};
}

std::int64_t xyf_to_ring(Nside n, const Xyf& p) {
  const std::int64_t ns = n.value();
  const std::int64_t nl4 = 4 * ns;
  const std::int64_t ncap = 2 * ns * (ns - 1);
  const std::int64_t jr = kFaceRing[p.face] * ns - p.ix - p.iy - 1;

  std::int64_t nr, before, kshift;
  if (jr < ns) {  // north polar cap
    nr = jr;
    before = 2 * nr * (nr - 1);
    kshift = 0;
  } else if (jr > 3 * ns) {  // south polar cap
    nr = nl4 - jr;
    before = n.npix() - 2 * (nr + 1) * nr;
    kshift = 0;
  } else {  // equatorial belt
    nr = ns;
    before = ncap + (jr - ns) * nl4;
    kshift = (jr - ns) & 1;
  }

  std::int64_t jp = (kFacePhi[p.face] * nr + p.ix - p.iy + 1 + kshift) / 2;
  if (jp > nl4) jp -= nl4;
  if (jp < 1) jp += nl4;
  return before + jp - 1;
}

Xyf ring_to_xyf(Nside n, std::int64_t pix) {
  const std::int64_t ns = n.value();
  const std::int64_t ncap = 2 * ns * (ns - 1);
  const std::int64_t nl2 = 2 * ns;

  std::int64_t iring, iphi, kshift, nr;
  int face;
  if (pix < ncap) {  // north polar cap
    iring = (1 + isqrt64(1 + 2 * pix)) / 2;
    iphi = pix + 1 - 2 * iring * (iring - 1);
    kshift = 0;
    nr = iring;
    face = static_cast<int>((iphi - 1) / iring);
  } else if (pix < n.npix() - ncap) {  // equatorial belt
    const std::int64_t ip = pix - ncap;
    iring = ip / (4 * ns) + ns;
    iphi = ip % (4 * ns) + 1;
    kshift = (iring + ns) & 1;
    nr = ns;
    const std::int64_t ire = iring - ns + 1;
    const std::int64_t irm = nl2 + 2 - ire;
    const std::int64_t ifm = (iphi - ire / 2 + ns - 1) / ns;
    const std::int64_t ifp = (iphi - irm / 2 + ns - 1) / ns;
    if (ifp == ifm) {  // faces 4..7
      face = static_cast<int>(ifp == 4 ? 4 : ifp + 4);
    } else if (ifp < ifm) {  // faces 0..3
      face = static_cast<int>(ifp);
    } else {  // faces 8..11
      face = static_cast<int>(ifm + 8);
    }
  } else {  // south polar cap
    const std::int64_t ip = n.npix() - pix;
    iring = (1 + isqrt64(2 * ip - 1)) / 2;
    iphi = 4 * iring + 1 - (ip - 2 * iring * (iring - 1));
    kshift = 0;
    nr = iring;
    face = static_cast<int>(8 + (iphi - 1) / iring);
    iring = 2 * nl2 - iring;
  }

  const std::int64_t irt = iring - kFaceRing[face] * ns + 1;
  std::int64_t ipt = 2 * iphi - kFacePhi[face] * nr - kshift - 1;
  if (ipt >= nl2) ipt -= 8 * ns;

  return {face, (ipt - irt) >> 1, (-(ipt + irt)) >> 1};
}

// z/phi form of ang2pix in the ring scheme: polar-cap and equatorial-belt
// cases of the isolatitude construction.
std::int64_t ang2pix_ring_zphi(Nside n, double z, double phi) {
  const std::int64_t ns = n.value();
  const double za = std::fabs(z);
  double tt = std::fmod(phi, kTwoPi);
  if (tt < 0) tt += kTwoPi;
  tt /= kHalfPi;  // in [0, 4)

  if (za <= kTwoThirds) {
    const double temp1 = ns * (0.5 + tt);
    const double temp2 = ns * z * 0.75;
    const std::int64_t jp = floor_div(temp1 - temp2);  // ascending edge line
    const std::int64_t jm = floor_div(temp1 + temp2);  // descending edge line

    const std::int64_t ir = ns + 1 + jp - jm;  // ring number, 1..2n+1
    const std::int64_t kshift = 1 - (ir & 1);
    const std::int64_t ip = pos_mod((jp + jm - ns + kshift + 1) / 2, 4 * ns);
    return 2 * ns * (ns - 1) + (ir - 1) * 4 * ns + ip;
  }

  const double tp = tt - std::floor(tt);
  const double tmp = ns * std::sqrt(3.0 * (1.0 - za));
  const std::int64_t jp = floor_div(tp * tmp);
  const std::int64_t jm = floor_div((1.0 - tp) * tmp);

  const std::int64_t ir = jp + jm + 1;  // ring number from the nearer pole
  const std::int64_t ip = pos_mod(floor_div(tt * static_cast<double>(ir)), 4 * ir);
  return z > 0 ? 2 * ir * (ir - 1) + ip : n.npix() - 2 * ir * (ir + 1) + ip;
}

std::int64_t ang2pix_nested_zphi(Nside n, double z, double phi) {
  const std::int64_t ns = n.value();
  const double za = std::fabs(z);
  double tt = std::fmod(phi, kTwoPi);
  if (tt < 0) tt += kTwoPi;
  tt /= kHalfPi;

  Xyf p;
  if (za <= kTwoThirds) {
    const double temp1 = ns * (0.5 + tt);
    const double temp2 = ns * z * 0.75;
    const std::int64_t jp = floor_div(temp1 - temp2);
    const std::int64_t jm = floor_div(temp1 + temp2);
    const std::int64_t ifp = jp >> n.order();
    const std::int64_t ifm = jm >> n.order();
    if (ifp == ifm) {
      p.face = static_cast<int>(ifp == 4 ? 4 : ifp + 4);
    } else if (ifp < ifm) {
      p.face = static_cast<int>(ifp);
    } else {
      p.face = static_cast<int>(ifm + 8);
    }
    p.ix = jm & (ns - 1);
    p.iy = ns - (jp & (ns - 1)) - 1;
  } else {
    std::int64_t ntt = static_cast<std::int64_t>(tt);
    if (ntt >= 4) ntt = 3;
    const double tp = tt - static_cast<double>(ntt);
    const double tmp = ns * std::sqrt(3.0 * (1.0 - za));
    std::int64_t jp = floor_div(tp * tmp);
    std::int64_t jm = floor_div((1.0 - tp) * tmp);
    if (jp >= ns) jp = ns - 1;  // points exactly on the cap boundary
    if (jm >= ns) jm = ns - 1;
    if (z >= 0) {
      p.face = static_cast<int>(ntt);
      p.ix = ns - jm - 1;
      p.iy = ns - jp - 1;
    } else {
      p.face = static_cast<int>(ntt + 8);
      p.ix = jp;
      p.iy = jm;
    }
  }
  return xyf_to_nested(n, p);
}

// Ring-scheme pixel center as (z, phi); closed forms per cap/belt case.
void ring_pix_center(Nside n, std::int64_t pix, double* z, double* phi) {
  const std::int64_t ns = n.value();
  const std::int64_t ncap = 2 * ns * (ns - 1);

  if (pix < ncap) {
    const std::int64_t iring = (1 + isqrt64(1 + 2 * pix)) / 2;
    const std::int64_t iphi = pix + 1 - 2 * iring * (iring - 1);
    *z = 1.0 - static_cast<double>(iring * iring) / (3.0 * static_cast<double>(ns * ns));
    *phi = (static_cast<double>(iphi) - 0.5) * kHalfPi / static_cast<double>(iring);
  } else if (pix < n.npix() - ncap) {
    const std::int64_t ip = pix - ncap;
    const std::int64_t iring = ip / (4 * ns) + ns;
    const std::int64_t iphi = ip % (4 * ns) + 1;
    const double fodd = ((iring + ns) & 1) ? 1.0 : 0.5;
    *z = static_cast<double>(2 * ns - iring) * 2.0 / (3.0 * static_cast<double>(ns));
    *phi = (static_cast<double>(iphi) - fodd) * kPi / static_cast<double>(2 * ns);
  } else {
    const std::int64_t ip = n.npix() - pix;
    const std::int64_t iring = (1 + isqrt64(2 * ip - 1)) / 2;
    const std::int64_t iphi = 4 * iring + 1 - (ip - 2 * iring * (iring - 1));
    *z = -1.0 + static_cast<double>(iring * iring) / (3.0 * static_cast<double>(ns * ns));
    *phi = (static_cast<double>(iphi) - 0.5) * kHalfPi / static_cast<double>(iring);
  }
}

void check_index(Nside nside, std::int64_t index) {
  if (index < 0 || index >= nside.npix()) {
    throw std::invalid_argument("healpix: pixel index " + std::to_string(index) +
                                " out of range for nside " +
                                std::to_string(nside.value()));
  }
}

}  // namespace

std::string to_string(Scheme s) {
  return s == Scheme::Ring ? "ring" : "nested";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "ring") return Scheme::Ring;
  if (s == "nested") return Scheme::Nested;
  throw std::invalid_argument("healpix: unknown scheme '" + s + "' (expected ring|nested)");
}

Nside::Nside(std::int64_t value) : value_(value), order_(0) {
  if (value < 1 || value > (std::int64_t{1} << 29) || (value & (value - 1)) != 0) {
    throw std::invalid_argument("healpix: nside must be a power of two in [1, 2^29], got " +
                                std::to_string(value));
  }
  while ((std::int64_t{1} << order_) < value_) ++order_;
}

UnitSphereCoord UnitSphereCoord::from_radians(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("healpix: non-finite sphere coordinate");
  }
  if (theta < 0.0 || theta > kPi) {
    if (theta >= -1e-12 && theta <= kPi + 1e-12) {
      theta = theta < 0.0 ? 0.0 : kPi;
    } else {
      throw std::invalid_argument("healpix: colatitude " + std::to_string(theta) +
                                  " outside [0, pi]");
    }
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  if (phi == kTwoPi) phi = 0.0;  // fmod can land on the closed edge
  return UnitSphereCoord{theta, phi};
}

UnitSphereCoord UnitSphereCoord::from_degrees(double lat_deg, double lon_east_deg) {
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_east_deg)) {
    throw std::invalid_argument("healpix: non-finite lat/lon");
  }
  if (lat_deg < -90.0 || lat_deg > 90.0) {
    throw std::invalid_argument("healpix: latitude " + std::to_string(lat_deg) +
                                " outside [-90, 90]");
  }
  return from_radians((90.0 - lat_deg) * kPi / 180.0, lon_east_deg * kPi / 180.0);
}

std::int64_t npix(Nside nside) { return nside.npix(); }

PixelId ang2pix(Nside nside, UnitSphereCoord coord, Scheme scheme) {
  if (!std::isfinite(coord.theta) || !std::isfinite(coord.phi)) {
    throw std::invalid_argument("healpix: non-finite sphere coordinate");
  }
  const double z = std::cos(coord.theta);
  if (scheme == Scheme::Ring) {
    return PixelId{ang2pix_ring_zphi(nside, z, coord.phi), Scheme::Ring};
  }
  return PixelId{ang2pix_nested_zphi(nside, z, coord.phi), Scheme::Nested};
}

UnitSphereCoord pix2ang(Nside nside, PixelId pixel) {
  check_index(nside, pixel.index);
  const std::int64_t ring =
      pixel.scheme == Scheme::Ring ? pixel.index : xyf_to_ring(nside, nested_to_xyf(nside, pixel.index));
  double z, phi;
  ring_pix_center(nside, ring, &z, &phi);
  if (z > 1.0) z = 1.0;
  if (z < -1.0) z = -1.0;
  return UnitSphereCoord{std::acos(z), phi};
}

PixelId ring_to_nested(Nside nside, PixelId pixel) {
  check_index(nside, pixel.index);
  if (pixel.scheme != Scheme::Ring) {
    throw std::invalid_argument("healpix: ring_to_nested expects a ring-scheme pixel");
  }
  return PixelId{xyf_to_nested(nside, ring_to_xyf(nside, pixel.index)), Scheme::Nested};
}

PixelId nested_to_ring(Nside nside, PixelId pixel) {
  check_index(nside, pixel.index);
  if (pixel.scheme != Scheme::Nested) {
    throw std::invalid_argument("healpix: nested_to_ring expects a nested-scheme pixel");
  }
  return PixelId{xyf_to_ring(nside, nested_to_xyf(nside, pixel.index)), Scheme::Ring};
}

PixelId latlon_to_pixel(Nside nside, double lat_deg, double lon_east_deg, Scheme scheme) {
  return ang2pix(nside, UnitSphereCoord::from_degrees(lat_deg, lon_east_deg), scheme);
}

LatLon pixel_center_latlon(Nside nside, PixelId pixel) {
  const UnitSphereCoord c = pix2ang(nside, pixel);
  return LatLon{90.0 - c.theta * 180.0 / kPi, c.phi * 180.0 / kPi};
}

}  // namespace frostpix::healpix
