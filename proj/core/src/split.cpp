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

#include "frostpix/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frostpix/error.hpp"

namespace frostpix::split {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::size_t fold_index(Fold f) { return static_cast<std::size_t>(f); }

}  // namespace

void FoldSpec::validate() const {
  double sum = 0.0;
  for (const double r : ratios) {
    if (!(r >= 0.0)) throw std::invalid_argument("fold ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("fold ratios must sum to 1 (got " + std::to_string(sum) +
                                ")");
  }
}

Fold FoldAssignment::fold_of(std::int64_t pixel) const {
  const auto it = pixel_fold.find(pixel);
  if (it == pixel_fold.end()) {
    throw std::invalid_argument("pixel " + std::to_string(pixel) +
                                " has no fold assignment");
  }
  return it->second;
}

FoldAssignment assign_folds(std::span<const manifest::TileRecord> records,
                            const FoldSpec& spec) {
  spec.validate();
  if (records.empty()) throw std::invalid_argument("assign_folds: empty record list");

  // Tile counts per pixel, located by the observation's site center.
  std::map<std::int64_t, std::int64_t> pixel_count;
  for (const auto& r : records) {
    const auto pix =
        healpix::latlon_to_pixel(spec.nside, r.center_lat, r.center_lon, spec.scheme);
    ++pixel_count[pix.index];
  }

  std::vector<Fold> active;
  for (const Fold f : kAllFolds) {
    if (spec.ratios[fold_index(f)] > 0.0) active.push_back(f);
  }
  if (pixel_count.size() < active.size()) {
    throw std::invalid_argument("assign_folds: " + std::to_string(pixel_count.size()) +
                                " distinct pixels cannot fill " +
                                std::to_string(active.size()) + " folds");
  }

  struct Entry {
    std::int64_t pixel;
    std::int64_t count;
    std::uint64_t tie_rank;
  };
  std::vector<Entry> order;
  order.reserve(pixel_count.size());
  for (const auto& [pixel, count] : pixel_count) {
    const std::uint64_t rank =
        spec.seed == 0 ? 0 : splitmix64(spec.seed ^ static_cast<std::uint64_t>(pixel));
    order.push_back(Entry{pixel, count, rank});
  }
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.tie_rank != b.tie_rank) return a.tie_rank < b.tie_rank;
    return a.pixel < b.pixel;
  });

  FoldAssignment out;
  const double ratio_sum = spec.ratios[0] + spec.ratios[1] + spec.ratios[2];
  for (const auto& e : order) {
    out.total_tiles += e.count;
    out.max_pixel_tile_count = std::max(out.max_pixel_tile_count, e.count);
  }
  for (const Fold f : kAllFolds) {
    out.target_fraction[fold_index(f)] = spec.ratios[fold_index(f)] / ratio_sum;
  }

  for (const auto& e : order) {
    Fold best = active.front();
    double best_deficit = -std::numeric_limits<double>::infinity();
    for (const Fold f : active) {
      const std::size_t i = fold_index(f);
      const double deficit = out.target_fraction[i] * static_cast<double>(out.total_tiles) -
                             static_cast<double>(out.fold_tile_counts[i]);
      if (deficit > best_deficit) {  // ties keep the earlier fold, train first
        best = f;
        best_deficit = deficit;
      }
    }
    out.pixel_fold.emplace(e.pixel, best);
    out.fold_tile_counts[fold_index(best)] += e.count;
  }

  for (const Fold f : kAllFolds) {
    const std::size_t i = fold_index(f);
    out.achieved_fraction[i] =
        static_cast<double>(out.fold_tile_counts[i]) / static_cast<double>(out.total_tiles);
  }
  return out;
}

AuditReport leakage_audit(std::span<const manifest::TileRecord> records,
                          const FoldAssignment& assignment) {
  AuditReport report;
  std::map<std::int64_t, AuditViolation> by_pixel;

  for (const auto& r : records) {
    if (!r.healpix_pixel || !r.fold) {
      throw InputError("leakage_audit: record " + r.tile_id +
                       " is missing healpix_pixel/fold columns");
    }
    ++report.records_checked;
    auto& v = by_pixel[*r.healpix_pixel];
    v.pixel = *r.healpix_pixel;
    ++v.fold_counts[fold_index(*r.fold)];
  }

  report.pixels_checked = static_cast<std::int64_t>(by_pixel.size());
  for (auto& [pixel, v] : by_pixel) {
    int folds_seen = 0;
    for (const auto c : v.fold_counts) {
      if (c > 0) ++folds_seen;
    }
    const auto assigned = assignment.pixel_fold.find(pixel);
    if (folds_seen > 1) {
      v.note = "pixel appears in " + std::to_string(folds_seen) + " folds";
      report.violations.push_back(v);
    } else if (assigned == assignment.pixel_fold.end()) {
      v.note = "pixel missing from assignment";
      report.violations.push_back(v);
    } else if (v.fold_counts[fold_index(assigned->second)] == 0) {
      v.note = "records disagree with assigned fold " + to_string(assigned->second);
      report.violations.push_back(v);
    }
  }

  report.pass = report.violations.empty();
  return report;
}

}  // namespace frostpix::split
