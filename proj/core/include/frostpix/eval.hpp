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

#ifndef FROSTPIX_EVAL_HPP
#define FROSTPIX_EVAL_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frostpix/manifest.hpp"
#include "frostpix/types.hpp"

namespace frostpix::eval {

struct PredictionRecord {
  std::string tile_id;
  double score = 0.0;  // probability of the frost class, in [0, 1]
};

/// Parses `tile_id,score` CSV with a mandatory header. Non-finite or
/// out-of-range scores are errors.
std::vector<PredictionRecord> read_predictions_csv(std::istream& in,
                                                   const std::string& source_name);
std::vector<PredictionRecord> read_predictions_file(const std::filesystem::path& path);

/// Fold records joined 1:1 with their scores. Construction fails loudly,
/// listing tile ids, when a fold tile lacks a prediction, a prediction is
/// duplicated, or a prediction references a tile the manifest has never
/// heard of.
struct ScoredFold {
  Fold fold = Fold::train;
  std::vector<const manifest::TileRecord*> records;
  std::vector<double> scores;  // parallel to records

  std::size_t size() const { return records.size(); }
};

ScoredFold join_predictions(std::span<const manifest::TileRecord> all_records,
                            std::span<const PredictionRecord> predictions, Fold fold);

/// `points` evenly spaced thresholds spanning [0, 1] inclusive.
std::vector<double> threshold_grid(int points = 101);

/// Fraction of tiles where (score >= threshold) agrees with (label == frost).
double accuracy(const ScoredFold& fold, double threshold = 0.5);

/// Step curve of recall against classification threshold for one context
/// (or all frost tiles when context is empty). Counts are kept alongside
/// the derived ratios so identities can be checked in integer arithmetic.
struct RecallCurve {
  std::optional<GeologicContext> context;
  std::vector<double> thresholds;
  std::vector<std::int64_t> hits;  // frost tiles of the context with score >= t
  std::int64_t support = 0;

  double recall_at(std::size_t i) const {
    return static_cast<double>(hits[i]) / static_cast<double>(support);
  }
};

struct RecallReport {
  std::vector<RecallCurve> curves;  // ALL first, then contexts with support
  std::vector<GeologicContext> absent;  // contexts with zero frost support
};

RecallReport recall_by_context(const ScoredFold& fold, std::span<const double> grid);

/// Percentage of frost tiles per geologic context within one fold.
struct ContextDistribution {
  Fold fold = Fold::train;
  std::array<std::int64_t, 4> counts{0, 0, 0, 0};  // indexed like kAllContexts
  std::int64_t frost_total = 0;
  std::vector<GeologicContext> absent;

  double percent(GeologicContext c) const;
};

ContextDistribution context_distribution(std::span<const manifest::TileRecord> records,
                                         Fold fold);

/// 256-bin intensity census. Intensity 0 encodes no-data in map-projected
/// products and is skipped unless include_invalid is set.
struct IntensityHistogram {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;

  void add_pixels(std::span<const std::uint8_t> pixels, bool include_invalid = false);
  std::array<double, 256> frequencies() const;
  /// Count of local maxima after 5-bin moving-average smoothing; plateaus
  /// collapse to a single maximum.
  int modality() const;
};

struct ShiftMetrics {
  /// sum_i min(p_i, q_i); 1 for identical distributions, 0 for disjoint.
  double histogram_intersection = 0.0;
  /// 1-D Wasserstein-1 distance in intensity units: sum_i |CDF_p - CDF_q|.
  double wasserstein1 = 0.0;
};

/// Computed in integer count space, so identical inputs give exactly
/// HI = 1 and W = 0.
ShiftMetrics shift_metrics(const IntensityHistogram& a, const IntensityHistogram& b);

/// Resolves a tile id to its pixels; backed by a crops directory or any
/// other raster source the caller has.
using TilePixelSource =
    std::function<std::vector<std::uint8_t>(const std::string& tile_id)>;

struct ShiftReport {
  Fold fold_a = Fold::train;
  Fold fold_b = Fold::test;
  std::optional<GeologicContext> context_filter;
  IntensityHistogram hist_a;
  IntensityHistogram hist_b;
  ShiftMetrics metrics;
  int modality_a = 0;
  int modality_b = 0;
};

/// Histograms over all tiles of each fold (or only frost tiles of one
/// context when a filter is given), plus the shift scalars. Empty folds
/// and unreadable crops are errors.
ShiftReport intensity_shift(std::span<const manifest::TileRecord> records,
                            const TilePixelSource& source, Fold fold_a, Fold fold_b,
                            std::optional<GeologicContext> context_filter = {},
                            bool include_invalid = false);

}  // namespace frostpix::eval

#endif  // FROSTPIX_EVAL_HPP
