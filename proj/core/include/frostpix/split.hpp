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

#ifndef FROSTPIX_SPLIT_HPP
#define FROSTPIX_SPLIT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "frostpix/healpix.hpp"
#include "frostpix/manifest.hpp"
#include "frostpix/types.hpp"

namespace frostpix::split {

struct FoldSpec {
  /// (train, val, test) target fractions; non-negative, summing to 1
  /// within 1e-9. A zero-ratio fold receives nothing.
  std::array<double, 3> ratios{0.70, 0.10, 0.20};
  healpix::Nside nside{8};
  healpix::Scheme scheme = healpix::Scheme::Ring;
  /// 0 orders equal-count pixels by pixel id; any other value shuffles
  /// those ties deterministically.
  std::uint64_t seed = 0;

  void validate() const;
};

/// The pixel -> fold map plus bookkeeping. Every pixel maps to exactly
/// one fold, which is what makes leakage impossible by construction.
struct FoldAssignment {
  std::map<std::int64_t, Fold> pixel_fold;
  std::array<std::int64_t, 3> fold_tile_counts{0, 0, 0};
  std::array<double, 3> target_fraction{0, 0, 0};
  std::array<double, 3> achieved_fraction{0, 0, 0};
  std::int64_t total_tiles = 0;
  std::int64_t max_pixel_tile_count = 0;

  Fold fold_of(std::int64_t pixel) const;
};

/// Greedy deterministic packing: pixels sorted by descending tile count
/// (ties by pixel id, or seed-shuffled), each assigned to the fold with
/// the largest remaining deficit against its target. The achieved
/// fraction of every fold deviates from target by at most
/// max_pixel_tile_count / total_tiles.
///
/// Records locate tiles by their observation's site center; the pixel is
/// computed here from center_lat/center_lon at the spec's resolution.
FoldAssignment assign_folds(std::span<const manifest::TileRecord> records,
                            const FoldSpec& spec);

struct AuditViolation {
  std::int64_t pixel = 0;
  std::array<std::int64_t, 3> fold_counts{0, 0, 0};  // records seen per fold
  std::string note;
};

struct AuditReport {
  bool pass = false;
  std::int64_t records_checked = 0;
  std::int64_t pixels_checked = 0;
  std::vector<AuditViolation> violations;
};

/// PASS iff each pixel's records sit in exactly one fold and that fold
/// matches the assignment. Violations are report content, not errors.
/// Records must already carry healpix_pixel and fold columns.
AuditReport leakage_audit(std::span<const manifest::TileRecord> records,
                          const FoldAssignment& assignment);

}  // namespace frostpix::split

#endif  // FROSTPIX_SPLIT_HPP
