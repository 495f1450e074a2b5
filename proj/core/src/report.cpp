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

#include "frostpix/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "frostpix/text.hpp"

namespace frostpix::report {

namespace {

// Table column order follows the published layout: other first, dunes last.
constexpr GeologicContext kTableOrder[] = {
    GeologicContext::other,
    GeologicContext::crater_rim_wall,
    GeologicContext::gullies,
    GeologicContext::dunes,
};

std::vector<Fold> folds_present(std::span<const manifest::TileRecord> records) {
  std::set<Fold> seen;
  for (const auto& r : records) {
    if (r.fold) seen.insert(*r.fold);
  }
  std::vector<Fold> out;
  for (const Fold f : kAllFolds) {
    if (seen.count(f) > 0) out.push_back(f);
  }
  return out;
}

std::int64_t frost_count(std::span<const manifest::TileRecord> records, Fold fold) {
  std::int64_t n = 0;
  for (const auto& r : records) {
    if (r.fold && *r.fold == fold && r.label && *r.label == TileLabel::frost) ++n;
  }
  return n;
}

Json curve_to_json(const eval::RecallCurve& curve) {
  Json j;
  j["context"] = curve.context ? to_string(*curve.context) : "ALL";
  j["support"] = curve.support;
  j["thresholds"] = curve.thresholds;
  j["hits"] = curve.hits;
  Json::array_t recall;
  recall.reserve(curve.thresholds.size());
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    recall.push_back(curve.recall_at(i));
  }
  j["recall"] = std::move(recall);
  return j;
}

Json fold_metrics(const eval::ScoredFold& scored, std::span<const double> grid,
                  double accuracy_threshold) {
  Json j;
  j["tiles"] = static_cast<std::int64_t>(scored.size());
  std::int64_t frost = 0;
  for (const auto* r : scored.records) {
    if (*r->label == TileLabel::frost) ++frost;
  }
  j["frost_tiles"] = frost;
  j["accuracy_threshold"] = accuracy_threshold;
  j["accuracy"] = eval::accuracy(scored, accuracy_threshold);

  if (frost == 0) {
    j["recall_curves"] = Json::array();
    Json::array_t absent;
    for (const GeologicContext c : kAllContexts) absent.push_back(to_string(c));
    j["absent_contexts"] = std::move(absent);
    j["note"] = "no frost tiles in fold; recall undefined";
    return j;
  }

  const auto recall = eval::recall_by_context(scored, grid);
  Json::array_t curves;
  for (const auto& curve : recall.curves) curves.push_back(curve_to_json(curve));
  j["recall_curves"] = std::move(curves);
  Json::array_t absent;
  for (const GeologicContext c : recall.absent) absent.push_back(to_string(c));
  j["absent_contexts"] = std::move(absent);
  return j;
}

Json histogram_to_json(const eval::IntensityHistogram& h) {
  Json j;
  j["pixel_count"] = h.total;
  j["frequencies"] = h.frequencies();
  j["modality"] = h.modality();
  return j;
}

Json shift_to_json(const eval::ShiftReport& shift) {
  Json j;
  j["fold_a"] = to_string(shift.fold_a);
  j["fold_b"] = to_string(shift.fold_b);
  if (shift.context_filter) j["context"] = to_string(*shift.context_filter);
  j["histogram_intersection"] = shift.metrics.histogram_intersection;
  j["wasserstein1"] = shift.metrics.wasserstein1;
  j["histogram_a"] = histogram_to_json(shift.hist_a);
  j["histogram_b"] = histogram_to_json(shift.hist_b);
  return j;
}

}  // namespace

Json build_metrics(std::span<const manifest::TileRecord> records,
                   std::span<const eval::PredictionRecord> predictions,
                   const MetricsOptions& options) {
  Json doc;
  doc["schema"] = "frostpix-metrics-v1";
  doc["config_hash"] = options.config_hash;
  Json folds = Json::object();
  for (const Fold f : folds_present(records)) {
    const auto scored = eval::join_predictions(records, predictions, f);
    folds[to_string(f)] = fold_metrics(scored, options.grid, options.accuracy_threshold);
  }
  doc["folds"] = std::move(folds);
  return doc;
}

Json build_report(std::span<const manifest::TileRecord> records,
                  std::span<const eval::PredictionRecord> predictions,
                  const ReportBundleOptions& options,
                  const eval::TilePixelSource& pixels) {
  Json doc;
  doc["schema"] = "frostpix-report-v1";
  doc["config_hash"] = options.config_hash;

  const auto folds = folds_present(records);

  // Table-shaped context distribution: one row per fold, fixed columns.
  Json table;
  Json::array_t columns;
  for (const GeologicContext c : kTableOrder) columns.push_back(to_string(c));
  table["columns"] = std::move(columns);
  Json::array_t rows;
  for (const Fold f : folds) {
    const auto dist = eval::context_distribution(records, f);
    Json row;
    row["fold"] = to_string(f);
    row["frost_tiles"] = dist.frost_total;
    Json percent, counts;
    for (const GeologicContext c : kTableOrder) {
      percent[to_string(c)] = dist.percent(c);
      counts[to_string(c)] =
          dist.counts[static_cast<std::size_t>(std::find(std::begin(kAllContexts),
                                                         std::end(kAllContexts), c) -
                                               std::begin(kAllContexts))];
    }
    row["percent"] = std::move(percent);
    row["counts"] = std::move(counts);
    Json::array_t absent;
    for (const GeologicContext c : dist.absent) absent.push_back(to_string(c));
    row["absent"] = std::move(absent);
    if (dist.frost_total == 0) row["note"] = "zero frost support in this fold";
    rows.push_back(std::move(row));
  }
  table["rows"] = std::move(rows);
  doc["context_distribution"] = std::move(table);

  Json metrics = Json::object();
  for (const Fold f : folds) {
    const auto scored = eval::join_predictions(records, predictions, f);
    metrics[to_string(f)] = fold_metrics(scored, options.grid, options.accuracy_threshold);
  }
  doc["folds"] = std::move(metrics);

  // Intensity shift between the two requested folds, overall and per
  // context with frost support on both sides.
  Json shift;
  const auto overall =
      eval::intensity_shift(records, pixels, options.hist_fold_a, options.hist_fold_b,
                            std::nullopt, options.include_invalid);
  shift["overall"] = shift_to_json(overall);
  Json by_context = Json::object();
  for (const GeologicContext c : kTableOrder) {
    const auto in_fold = [&](Fold f) {
      for (const auto& r : records) {
        if (r.fold && *r.fold == f && r.label && *r.label == TileLabel::frost &&
            r.context && *r.context == c) {
          return true;
        }
      }
      return false;
    };
    if (in_fold(options.hist_fold_a) && in_fold(options.hist_fold_b)) {
      by_context[to_string(c)] = shift_to_json(
          eval::intensity_shift(records, pixels, options.hist_fold_a, options.hist_fold_b,
                                c, options.include_invalid));
    }
  }
  shift["by_context"] = std::move(by_context);
  doc["intensity_shift"] = std::move(shift);
  return doc;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                    "#d62728", "#9467bd", "#8c564b"};
constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string fmt(double v) { return text::format_double(v); }

}  // namespace

std::string line_plot_svg(const std::string& title, const PlotAxes& axes,
                          std::span<const PlotSeries> series) {
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double x) {
    return kMarginLeft + (x - axes.x_min) / (axes.x_max - axes.x_min) * plot_w;
  };
  const auto sy = [&](double y) {
    return kMarginTop + plot_h - (y - axes.y_min) / (axes.y_max - axes.y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // axes box and ticks
  svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double tx = axes.x_min + (axes.x_max - axes.x_min) * i / kTicks;
    const double ty = axes.y_min + (axes.y_max - axes.y_min) * i / kTicks;
    svg << "<line x1=\"" << fmt(sx(tx)) << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << fmt(sx(tx)) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5)
        << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << fmt(sx(tx)) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(tx) << "</text>\n";
    svg << "<line x1=\"" << fmt(kMarginLeft - 5.0) << "\" y1=\"" << fmt(sy(ty))
        << "\" x2=\"" << kMarginLeft << "\" y2=\"" << fmt(sy(ty))
        << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << fmt(kMarginLeft - 8.0) << "\" y=\"" << fmt(sy(ty) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(ty) << "</text>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << axes.x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << axes.y_label
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ser.xs.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << fmt(sx(ser.xs[i])) << ',' << fmt(sy(ser.ys[i]));
    }
    svg << "\"/>\n";
    const double ly = kMarginTop + 14.0 + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << fmt(kMarginLeft + plot_w - 130) << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << fmt(kMarginLeft + plot_w - 110) << "\" y2=\"" << fmt(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << fmt(kMarginLeft + plot_w - 105) << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << ser.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string series_csv(const std::string& x_name, std::span<const PlotSeries> series) {
  std::ostringstream out;
  out << x_name;
  for (const auto& s : series) out << ',' << s.name;
  out << '\n';
  if (series.empty()) return out.str();
  const std::size_t n = series.front().xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << fmt(series.front().xs[i]);
    for (const auto& s : series) out << ',' << fmt(s.ys[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace frostpix::report
