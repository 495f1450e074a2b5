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

#include "frostpix/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "frostpix/error.hpp"
#include "frostpix/text.hpp"

namespace frostpix::eval {

namespace {

std::size_t context_index(GeologicContext c) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (kAllContexts[i] == c) return i;
  }
  throw std::logic_error("unreachable GeologicContext");
}

std::string enumerate_ids(const std::vector<std::string>& ids) {
  constexpr std::size_t kMax = 20;
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kMax; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > kMax) {
    out += ", ... (" + std::to_string(ids.size() - kMax) + " more)";
  }
  return out;
}

// Ascending scores allow hits(t) = n - lower_bound(t) per threshold.
std::int64_t count_at_or_above(const std::vector<double>& sorted_scores, double t) {
  const auto it = std::lower_bound(sorted_scores.begin(), sorted_scores.end(), t);
  return static_cast<std::int64_t>(sorted_scores.end() - it);
}

}  // namespace

std::vector<PredictionRecord> read_predictions_csv(std::istream& in,
                                                   const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError(source_name + ": empty predictions file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tile_id,score") {
    throw InputError(source_name + ": expected header 'tile_id,score', got '" + line +
                     "'");
  }
  std::vector<PredictionRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = text::split(line, ',');
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (fields.size() != 2 || fields[0].empty()) {
      throw InputError(where + ": expected 'tile_id,score'");
    }
    const double score = text::parse_double(fields[1], where + ": score");
    if (score < 0.0 || score > 1.0) {
      throw InputError(where + ": score " + fields[1] + " outside [0, 1]");
    }
    out.push_back(PredictionRecord{fields[0], score});
  }
  return out;
}

std::vector<PredictionRecord> read_predictions_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  return read_predictions_csv(in, path.string());
}

ScoredFold join_predictions(std::span<const manifest::TileRecord> all_records,
                            std::span<const PredictionRecord> predictions, Fold fold) {
  std::set<std::string> known_ids;
  for (const auto& r : all_records) known_ids.insert(r.tile_id);

  std::map<std::string, double> by_id;
  std::vector<std::string> duplicates, unknown;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.tile_id, p.score).second) duplicates.push_back(p.tile_id);
    if (known_ids.find(p.tile_id) == known_ids.end()) unknown.push_back(p.tile_id);
  }
  if (!duplicates.empty()) {
    throw InputError("duplicate predictions for tiles: " + enumerate_ids(duplicates));
  }
  if (!unknown.empty()) {
    throw InputError("predictions reference tiles absent from the manifest: " +
                     enumerate_ids(unknown));
  }

  ScoredFold out;
  out.fold = fold;
  std::vector<std::string> missing;
  for (const auto& r : all_records) {
    if (!r.fold || *r.fold != fold) continue;
    if (!r.label) {
      throw InputError("tile " + r.tile_id + " has no label; run the label stage first");
    }
    const auto it = by_id.find(r.tile_id);
    if (it == by_id.end()) {
      missing.push_back(r.tile_id);
      continue;
    }
    out.records.push_back(&r);
    out.scores.push_back(it->second);
  }
  if (!missing.empty()) {
    throw InputError("missing predictions for " + std::to_string(missing.size()) +
                     " tiles of fold " + to_string(fold) + ": " + enumerate_ids(missing));
  }
  return out;
}

std::vector<double> threshold_grid(int points) {
  if (points < 2) throw std::invalid_argument("threshold grid needs >= 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  }
  return grid;
}

double accuracy(const ScoredFold& fold, double threshold) {
  if (fold.records.empty()) {
    throw std::invalid_argument("accuracy: empty fold");
  }
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < fold.records.size(); ++i) {
    const bool predicted_frost = fold.scores[i] >= threshold;
    const bool is_frost = *fold.records[i]->label == TileLabel::frost;
    if (predicted_frost == is_frost) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(fold.records.size());
}

RecallReport recall_by_context(const ScoredFold& fold, std::span<const double> grid) {
  if (grid.size() < 1) throw std::invalid_argument("empty threshold grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 1.0 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw std::invalid_argument("threshold grid must be ascending within [0, 1]");
    }
  }

  std::vector<double> all_scores;
  std::array<std::vector<double>, 4> context_scores;
  for (std::size_t i = 0; i < fold.records.size(); ++i) {
    const auto& r = *fold.records[i];
    if (*r.label != TileLabel::frost) continue;
    if (!r.context) {
      throw InputError("frost tile " + r.tile_id + " lacks a geologic context");
    }
    all_scores.push_back(fold.scores[i]);
    context_scores[context_index(*r.context)].push_back(fold.scores[i]);
  }
  if (all_scores.empty()) {
    throw std::invalid_argument("recall_by_context: fold " + to_string(fold.fold) +
                                " has no frost tiles");
  }

  const auto make_curve = [&grid](std::optional<GeologicContext> ctx,
                                  std::vector<double>& scores) {
    std::sort(scores.begin(), scores.end());
    RecallCurve curve;
    curve.context = ctx;
    curve.support = static_cast<std::int64_t>(scores.size());
    curve.thresholds.assign(grid.begin(), grid.end());
    curve.hits.reserve(grid.size());
    for (const double t : grid) curve.hits.push_back(count_at_or_above(scores, t));
    return curve;
  };

  RecallReport report;
  report.curves.push_back(make_curve(std::nullopt, all_scores));
  for (const GeologicContext c : kAllContexts) {
    auto& scores = context_scores[context_index(c)];
    if (scores.empty()) {
      report.absent.push_back(c);
    } else {
      report.curves.push_back(make_curve(c, scores));
    }
  }
  return report;
}

double ContextDistribution::percent(GeologicContext c) const {
  if (frost_total == 0) return 0.0;
  return 100.0 * static_cast<double>(counts[context_index(c)]) /
         static_cast<double>(frost_total);
}

ContextDistribution context_distribution(std::span<const manifest::TileRecord> records,
                                         Fold fold) {
  ContextDistribution dist;
  dist.fold = fold;
  for (const auto& r : records) {
    if (!r.fold || *r.fold != fold) continue;
    if (!r.label || *r.label != TileLabel::frost) continue;
    if (!r.context) {
      throw InputError("frost tile " + r.tile_id + " lacks a geologic context");
    }
    ++dist.counts[context_index(*r.context)];
    ++dist.frost_total;
  }
  for (const GeologicContext c : kAllContexts) {
    if (dist.counts[context_index(c)] == 0) dist.absent.push_back(c);
  }
  return dist;
}

void IntensityHistogram::add_pixels(std::span<const std::uint8_t> pixels,
                                    bool include_invalid) {
  for (const std::uint8_t v : pixels) {
    if (v == 0 && !include_invalid) continue;
    ++counts[v];
    ++total;
  }
}

std::array<double, 256> IntensityHistogram::frequencies() const {
  std::array<double, 256> freq{};
  if (total == 0) return freq;
  for (std::size_t i = 0; i < 256; ++i) {
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return freq;
}

int IntensityHistogram::modality() const {
  const auto freq = frequencies();
  std::array<double, 256> smooth{};
  for (int i = 0; i < 256; ++i) {
    const int lo = std::max(0, i - 2);
    const int hi = std::min(255, i + 2);
    double sum = 0.0;
    for (int k = lo; k <= hi; ++k) sum += freq[static_cast<std::size_t>(k)];
    smooth[static_cast<std::size_t>(i)] = sum / (hi - lo + 1);
  }

  // Count runs of equal value that sit strictly above both neighbors.
  int maxima = 0;
  int i = 0;
  while (i < 256) {
    int j = i;
    while (j + 1 < 256 && smooth[static_cast<std::size_t>(j + 1)] ==
                              smooth[static_cast<std::size_t>(i)]) {
      ++j;
    }
    const double value = smooth[static_cast<std::size_t>(i)];
    const bool left_lower = i == 0 || smooth[static_cast<std::size_t>(i - 1)] < value;
    const bool right_lower = j == 255 || smooth[static_cast<std::size_t>(j + 1)] < value;
    if (value > 0.0 && left_lower && right_lower) ++maxima;
    i = j + 1;
  }
  return maxima;
}

ShiftMetrics shift_metrics(const IntensityHistogram& a, const IntensityHistogram& b) {
  if (a.total == 0 || b.total == 0) {
    throw std::invalid_argument("shift_metrics: empty histogram");
  }
  // Cross-multiplied integer arithmetic; division happens exactly once.
  using Wide = unsigned __int128;
  const Wide na = a.total;
  const Wide nb = b.total;
  const Wide denom = na * nb;

  Wide hi_num = 0;
  Wide w_num = 0;
  std::uint64_t cum_a = 0, cum_b = 0;
  for (std::size_t i = 0; i < 256; ++i) {
    hi_num += std::min(Wide{a.counts[i]} * nb, Wide{b.counts[i]} * na);
    cum_a += a.counts[i];
    cum_b += b.counts[i];
    const Wide pa = Wide{cum_a} * nb;
    const Wide pb = Wide{cum_b} * na;
    w_num += pa > pb ? pa - pb : pb - pa;
  }

  ShiftMetrics m;
  m.histogram_intersection =
      hi_num == denom ? 1.0
                      : static_cast<double>(hi_num) / static_cast<double>(denom);
  m.wasserstein1 =
      w_num == 0 ? 0.0 : static_cast<double>(w_num) / static_cast<double>(denom);
  return m;
}

ShiftReport intensity_shift(std::span<const manifest::TileRecord> records,
                            const TilePixelSource& source, Fold fold_a, Fold fold_b,
                            std::optional<GeologicContext> context_filter,
                            bool include_invalid) {
  if (!source) throw std::invalid_argument("intensity_shift: no tile pixel source");

  ShiftReport report;
  report.fold_a = fold_a;
  report.fold_b = fold_b;
  report.context_filter = context_filter;

  const auto select = [&](Fold fold, IntensityHistogram& hist) {
    std::int64_t tiles = 0;
    for (const auto& r : records) {
      if (!r.fold || *r.fold != fold) continue;
      if (context_filter) {
        if (!r.label || *r.label != TileLabel::frost) continue;
        if (!r.context || *r.context != *context_filter) continue;
      }
      const auto pixels = source(r.tile_id);
      hist.add_pixels(pixels, include_invalid);
      ++tiles;
    }
    if (tiles == 0) {
      std::string what = "intensity_shift: fold " + to_string(fold);
      if (context_filter) what += " has no frost tiles of context " + to_string(*context_filter);
      else what += " is empty";
      throw InputError(what);
    }
  };
  select(fold_a, report.hist_a);
  select(fold_b, report.hist_b);

  report.metrics = shift_metrics(report.hist_a, report.hist_b);
  report.modality_a = report.hist_a.modality();
  report.modality_b = report.hist_b.modality();
  return report;
}

}  // namespace frostpix::eval
