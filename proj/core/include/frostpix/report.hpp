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

#ifndef FROSTPIX_REPORT_HPP
#define FROSTPIX_REPORT_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frostpix/eval.hpp"
#include "frostpix/manifest.hpp"

namespace frostpix::report {

using Json = nlohmann::ordered_json;

struct MetricsOptions {
  std::vector<double> grid;
  double accuracy_threshold = 0.5;
  std::string config_hash;
};

/// Accuracy and per-context recall curves for every fold present in the
/// manifest. Folds without frost tiles get empty curve lists and an
/// explicit note instead of an error.
Json build_metrics(std::span<const manifest::TileRecord> records,
                   std::span<const eval::PredictionRecord> predictions,
                   const MetricsOptions& options);

struct ReportBundleOptions {
  std::vector<double> grid;
  double accuracy_threshold = 0.5;
  Fold hist_fold_a = Fold::train;
  Fold hist_fold_b = Fold::test;
  bool include_invalid = false;
  std::string config_hash;
};

/// The full evaluation document: context-distribution table (one row per
/// fold, one column per context), recall-vs-threshold curves, and
/// intensity histograms with shift scalars overall plus per context
/// represented in both folds.
Json build_report(std::span<const manifest::TileRecord> records,
                  std::span<const eval::PredictionRecord> predictions,
                  const ReportBundleOptions& options,
                  const eval::TilePixelSource& pixels);

/// One data series of a line plot.
struct PlotSeries {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct PlotAxes {
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
};

/// Minimal deterministic SVG line plot (fixed palette, legend, ticks).
std::string line_plot_svg(const std::string& title, const PlotAxes& axes,
                          std::span<const PlotSeries> series);

/// Wide CSV: first column x, one column per series.
std::string series_csv(const std::string& x_name, std::span<const PlotSeries> series);

}  // namespace frostpix::report

#endif  // FROSTPIX_REPORT_HPP
