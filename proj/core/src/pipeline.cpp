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

#include "frostpix/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "frostpix/error.hpp"
#include "frostpix/eval.hpp"
#include "frostpix/labels.hpp"
#include "frostpix/manifest.hpp"
#include "frostpix/pgm.hpp"
#include "frostpix/raster.hpp"
#include "frostpix/report.hpp"
#include "frostpix/split.hpp"
#include "frostpix/text.hpp"

namespace frostpix::pipeline {

namespace fs = std::filesystem;
using manifest::ExclusionRecord;
using manifest::SubframeRecord;
using manifest::TileRecord;

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw InputError(path.string() + ": write failed");
}

void write_json_file(const fs::path& path, const report::Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

// Runs fn(i) for i in [0, n) on `threads` workers; results land in a
// pre-sized vector so the merge order never depends on scheduling.
template <typename Result, typename Fn>
std::vector<Result> parallel_index_map(std::size_t n, int threads, Fn&& fn) {
  std::vector<Result> results(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      results[i] = fn(i);
    }
  };
  std::vector<std::future<void>> futures;
  const int workers = std::min<int>(threads, static_cast<int>(n));
  futures.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    futures.push_back(std::async(std::launch::async, worker));
  }
  for (auto& f : futures) f.get();
  return results;
}

struct SidecarData {
  raster::Observation obs;
  fs::path raster_path;
};

SidecarData load_observation(const fs::path& sidecar_path) {
  std::ifstream in(sidecar_path);
  if (!in) throw InputError(sidecar_path.string() + ": cannot open sidecar");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(sidecar_path.string() + ": invalid JSON sidecar: " + e.what());
  }

  SidecarData data;
  try {
    data.obs.id = j.at("id").get<std::string>();
    data.obs.site_id = j.at("site_id").get<std::string>();
    data.obs.center_lat = j.at("center_lat").get<double>();
    data.obs.center_lon = j.at("center_lon").get<double>();
    data.obs.season = season_from_string(j.at("season_tag").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(sidecar_path.string() + ": " + e.what());
  }
  if (data.obs.id.empty()) {
    throw InputError(sidecar_path.string() + ": empty observation id");
  }

  data.raster_path = sidecar_path;
  data.raster_path.replace_extension(".pgm");
  if (!fs::exists(data.raster_path)) {
    throw InputError(sidecar_path.string() + ": no raster found at " +
                     data.raster_path.string());
  }
  auto img = pgm::read_pgm(data.raster_path);
  data.obs.width = img.width;
  data.obs.height = img.height;
  data.obs.pixels = std::move(img.pixels);

  if (j.contains("mask_path")) {
    const fs::path mask_path =
        sidecar_path.parent_path() / j.at("mask_path").get<std::string>();
    auto mask = pgm::read_pgm(mask_path);
    if (mask.width != data.obs.width || mask.height != data.obs.height) {
      throw InputError(mask_path.string() + ": mask dimensions " +
                       std::to_string(mask.width) + "x" + std::to_string(mask.height) +
                       " do not match raster");
    }
    data.obs.mask = std::move(mask.pixels);
  }
  data.obs.validate();
  return data;
}

std::string detail_kv(const char* key, double value) {
  return std::string(key) + "=" + text::format_double(value);
}

pgm::Image crop_tile(const raster::Observation& obs, const raster::TileGeometry& tile) {
  pgm::Image img;
  img.width = tile.size;
  img.height = tile.size;
  img.pixels.resize(static_cast<std::size_t>(tile.size) * tile.size);
  for (int r = 0; r < tile.size; ++r) {
    const auto* src = obs.pixels.data() +
                      static_cast<std::size_t>(tile.origin_row + r) * obs.width +
                      tile.origin_col;
    std::copy(src, src + tile.size, img.pixels.begin() + static_cast<std::size_t>(r) * tile.size);
  }
  return img;
}

std::vector<TileRecord> read_manifest_checked(const fs::path& out_dir,
                                              const PipelineConfig& cfg) {
  const fs::path path = out_dir / kManifestFile;
  if (!fs::exists(path)) {
    throw InputError(path.string() + " not found; run `frostpix tile` first");
  }
  auto records = manifest::read_manifest_csv(path);
  if (records.empty()) {
    throw InputError(path.string() + ": manifest has no tiles");
  }
  const std::string hash = manifest::uniform_config_hash(records);
  if (hash != cfg.hash()) {
    throw InputError(path.string() + ": manifest was produced with config hash " + hash +
                     " but the current config hashes to " + cfg.hash() +
                     "; rerun upstream stages or fix the config");
  }
  return records;
}

// Reconstructs the geometry structs the labels module operates on.
raster::Subframe to_subframe(const SubframeRecord& r) {
  raster::Subframe sf;
  sf.id = r.subframe_id;
  sf.observation_id = r.observation_id;
  sf.row_index = r.row_index;
  sf.col_index = r.col_index;
  sf.origin_row = r.origin_row;
  sf.origin_col = r.origin_col;
  sf.actual_rows = r.actual_rows;
  sf.actual_cols = r.actual_cols;
  sf.valid_fraction = r.valid_fraction;
  return sf;
}

raster::TileGeometry to_tile_geometry(const TileRecord& r, const raster::Subframe& sf) {
  raster::TileGeometry t;
  t.id = r.tile_id;
  t.subframe_id = r.subframe_id;
  t.origin_row = r.origin_row;
  t.origin_col = r.origin_col;
  t.size = r.tile_size;
  t.row_index = (r.origin_row - sf.origin_row) / r.tile_size;
  t.col_index = (r.origin_col - sf.origin_col) / r.tile_size;
  t.black_fraction = r.black_fraction;
  return t;
}

}  // namespace

std::string run_tile(const TileOptions& options) {
  options.cfg.validate();
  const std::string config_hash = options.cfg.hash();

  if (!fs::is_directory(options.input_dir)) {
    throw InputError(options.input_dir.string() + ": not a directory");
  }
  std::vector<fs::path> sidecars;
  for (const auto& entry : fs::directory_iterator(options.input_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      sidecars.push_back(entry.path());
    }
  }
  std::sort(sidecars.begin(), sidecars.end());
  if (sidecars.empty()) {
    throw InputError("no observations found in " + options.input_dir.string());
  }

  fs::create_directories(options.out_dir);
  if (options.emit_crops) fs::create_directories(options.out_dir / kCropsDir);

  std::vector<TileRecord> tiles;
  std::vector<SubframeRecord> subframes;
  std::vector<ExclusionRecord> exclusions;
  std::set<std::string> seen_ids;
  std::int64_t crops = 0;

  for (const auto& sidecar : sidecars) {
    const auto data = load_observation(sidecar);
    const auto& obs = data.obs;
    if (!seen_ids.insert(obs.id).second) {
      throw InputError(sidecar.string() + ": duplicate observation id " + obs.id);
    }

    std::vector<raster::Subframe> discarded;
    const auto kept = raster::partition_subframes(obs, options.cfg.subframe_size,
                                                  options.cfg.max_invalid, &discarded);
    for (const auto& sf : discarded) {
      exclusions.push_back(ExclusionRecord{
          "subframe", sf.id, "invalid_subframe",
          detail_kv("invalid_fraction", sf.invalid_fraction())});
    }
    for (const auto& sf : kept) {
      SubframeRecord rec;
      rec.subframe_id = sf.id;
      rec.observation_id = obs.id;
      rec.site_id = obs.site_id;
      rec.center_lat = obs.center_lat;
      rec.center_lon = obs.center_lon;
      rec.season = obs.season;
      rec.row_index = sf.row_index;
      rec.col_index = sf.col_index;
      rec.origin_row = sf.origin_row;
      rec.origin_col = sf.origin_col;
      rec.actual_rows = sf.actual_rows;
      rec.actual_cols = sf.actual_cols;
      rec.valid_fraction = sf.valid_fraction;
      rec.config_hash = config_hash;
      subframes.push_back(std::move(rec));
    }

    const auto per_subframe = parallel_index_map<std::vector<raster::TileGeometry>>(
        kept.size(), options.threads, [&](std::size_t i) {
          return raster::partition_tiles(obs, kept[i], options.cfg.tile_size);
        });

    for (const auto& tile_list : per_subframe) {
      for (const auto& t : tile_list) {
        TileRecord rec;
        rec.tile_id = t.id;
        rec.observation_id = obs.id;
        rec.subframe_id = t.subframe_id;
        rec.site_id = obs.site_id;
        rec.center_lat = obs.center_lat;
        rec.center_lon = obs.center_lon;
        rec.season = obs.season;
        rec.origin_row = t.origin_row;
        rec.origin_col = t.origin_col;
        rec.tile_size = t.size;
        rec.black_fraction = t.black_fraction;
        rec.config_hash = config_hash;
        tiles.push_back(std::move(rec));
        if (options.emit_crops) {
          pgm::write_pgm(options.out_dir / kCropsDir / (t.id + ".pgm"),
                         crop_tile(obs, t));
          ++crops;
        }
      }
    }
  }

  manifest::write_manifest_csv(options.out_dir / kManifestFile, tiles);
  manifest::write_subframes_csv(options.out_dir / kSubframesFile, subframes);
  manifest::write_exclusions_csv(options.out_dir / kExclusionsFile, exclusions);

  std::ostringstream summary;
  summary << "tile: " << sidecars.size() << " observations, " << subframes.size()
          << " subframes kept, " << exclusions.size() << " discarded, " << tiles.size()
          << " candidate tiles";
  if (options.emit_crops) summary << ", " << crops << " crops";
  return summary.str();
}

std::string run_label(const LabelOptions& options) {
  options.cfg.validate();
  const std::string config_hash = options.cfg.hash();
  const auto vote_cfg = options.cfg.vote_config();
  const auto black_rule = options.cfg.black_rule();

  auto records = read_manifest_checked(options.out_dir, options.cfg);
  for (const auto& r : records) {
    if (r.label) {
      throw InputError(std::string(kManifestFile) +
                       ": tiles are already labeled; rerun `frostpix tile` to start over");
    }
  }
  const auto subframe_records =
      manifest::read_subframes_csv(options.out_dir / kSubframesFile);
  auto exclusions = manifest::read_exclusions_csv(options.out_dir / kExclusionsFile);

  std::ifstream ann_in(options.annotations);
  if (!ann_in) throw InputError(options.annotations.string() + ": cannot open");
  const auto polygons =
      labels::parse_annotations_jsonl(ann_in, options.annotations.string());

  std::map<std::string, raster::Subframe> subframes;
  std::map<std::string, SeasonTag> subframe_season;
  for (const auto& r : subframe_records) {
    subframes.emplace(r.subframe_id, to_subframe(r));
    subframe_season.emplace(r.subframe_id, r.season);
  }
  std::set<std::string> discarded_subframes;
  for (const auto& e : exclusions) {
    if (e.kind == "subframe") discarded_subframes.insert(e.id);
  }

  // Bind polygons to kept subframes; polygons on discarded subframes are
  // counted and dropped, unknown ids are input errors.
  std::map<std::string, std::vector<labels::AnnotationPolygon>> by_subframe;
  std::int64_t polygons_on_discarded = 0;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const auto& poly = polygons[i];
    const auto it = subframes.find(poly.subframe_id);
    if (it == subframes.end()) {
      if (discarded_subframes.count(poly.subframe_id) > 0) {
        ++polygons_on_discarded;
        continue;
      }
      throw InputError(options.annotations.string() + ": polygon #" +
                       std::to_string(i + 1) + " references unknown subframe " +
                       poly.subframe_id);
    }
    const auto& sf = it->second;
    for (const auto& v : poly.vertices) {
      if (v.row < 0 || v.row > sf.actual_rows || v.col < 0 || v.col > sf.actual_cols) {
        throw InputError(options.annotations.string() + ": polygon #" +
                         std::to_string(i + 1) + " vertex (" +
                         text::format_double(v.row) + ", " + text::format_double(v.col) +
                         ") outside subframe " + sf.id + " bounds " +
                         std::to_string(sf.actual_rows) + "x" +
                         std::to_string(sf.actual_cols));
      }
    }
    by_subframe[poly.subframe_id].push_back(poly);
  }

  struct TileOutcome {
    std::optional<TileRecord> kept;
    std::optional<ExclusionRecord> excluded;
    std::vector<std::string> warnings;
  };

  const auto outcomes = parallel_index_map<TileOutcome>(
      records.size(), options.threads, [&](std::size_t i) {
        const TileRecord& rec = records[i];
        const auto sf_it = subframes.find(rec.subframe_id);
        if (sf_it == subframes.end()) {
          throw InputError(std::string(kManifestFile) + ": tile " + rec.tile_id +
                           " references unknown subframe " + rec.subframe_id);
        }
        const raster::Subframe& sf = sf_it->second;
        const auto tile = to_tile_geometry(rec, sf);
        const auto poly_it = by_subframe.find(rec.subframe_id);
        const std::span<const labels::AnnotationPolygon> polys =
            poly_it == by_subframe.end()
                ? std::span<const labels::AnnotationPolygon>{}
                : std::span<const labels::AnnotationPolygon>(poly_it->second);

        TileOutcome out;
        const auto vote = labels::aggregate_tile_label(
            tile, sf, polys, vote_cfg, subframe_season.at(rec.subframe_id),
            &out.warnings);

        const std::string votes_detail = "votes=" + std::to_string(vote.overlap_count) +
                                         "/" + std::to_string(vote_cfg.annotator_count);
        if (vote.label == TileLabel::excluded_ambiguous) {
          const char* reason = vote.overlap_count == 0 ? "zero_overlap" : "ambiguous_vote";
          out.excluded = ExclusionRecord{"tile", rec.tile_id, reason, votes_detail};
          return out;
        }
        if (!raster::apply_black_pixel_rule(tile, vote.label, black_rule)) {
          out.excluded = ExclusionRecord{
              "tile", rec.tile_id, "black_rule",
              detail_kv("black_fraction", rec.black_fraction)};
          return out;
        }

        TileRecord kept = rec;
        kept.label = vote.label;
        kept.context = vote.context;
        kept.annotators = vote.contributors;
        kept.vote_count = vote.overlap_count;
        kept.vote_total = vote_cfg.annotator_count;
        out.kept = std::move(kept);
        return out;
      });

  std::vector<TileRecord> kept;
  kept.reserve(records.size());
  std::int64_t frost = 0, background = 0, ambiguous = 0, black = 0, zero_overlap = 0;
  std::int64_t warnings = 0;
  for (const auto& out : outcomes) {
    warnings += static_cast<std::int64_t>(out.warnings.size());
    if (out.kept) {
      if (*out.kept->label == TileLabel::frost) ++frost;
      else ++background;
      kept.push_back(*out.kept);
    } else if (out.excluded) {
      if (out.excluded->reason == "ambiguous_vote") ++ambiguous;
      else if (out.excluded->reason == "zero_overlap") ++zero_overlap;
      else ++black;
      exclusions.push_back(*out.excluded);
    }
  }

  manifest::write_manifest_csv(options.out_dir / kManifestFile, kept);
  manifest::write_exclusions_csv(options.out_dir / kExclusionsFile, exclusions);

  std::ostringstream summary;
  summary << "label: " << kept.size() << " tiles kept (" << frost << " frost, "
          << background << " background), excluded " << ambiguous << " ambiguous_vote, "
          << black << " black_rule, " << zero_overlap << " zero_overlap; "
          << polygons.size() << " polygons (" << polygons_on_discarded
          << " on discarded subframes)";
  if (warnings > 0) summary << ", " << warnings << " warnings";
  return summary.str();
}

std::string run_split(const SplitOptions& options) {
  options.cfg.validate();
  auto records = read_manifest_checked(options.out_dir, options.cfg);
  for (const auto& r : records) {
    if (!r.label) {
      throw InputError(std::string(kManifestFile) + ": tile " + r.tile_id +
                       " has no label; run `frostpix label` first");
    }
  }

  split::FoldSpec spec;
  spec.ratios = {options.cfg.ratio_train, options.cfg.ratio_val, options.cfg.ratio_test};
  spec.nside = options.cfg.nside_value();
  spec.scheme = options.cfg.scheme_value();
  spec.seed = options.cfg.seed;

  const auto assignment = split::assign_folds(records, spec);

  for (auto& r : records) {
    const auto pix =
        healpix::latlon_to_pixel(spec.nside, r.center_lat, r.center_lon, spec.scheme);
    r.scheme = spec.scheme;
    r.healpix_pixel = pix.index;
    r.fold = assignment.fold_of(pix.index);
  }

  const auto audit = split::leakage_audit(records, assignment);

  report::Json doc;
  doc["schema"] = "frostpix-audit-v1";
  doc["config_hash"] = options.cfg.hash();
  doc["nside"] = spec.nside.value();
  doc["scheme"] = healpix::to_string(spec.scheme);
  doc["seed"] = spec.seed;
  doc["pass"] = audit.pass;
  doc["records_checked"] = audit.records_checked;
  doc["pixels_checked"] = audit.pixels_checked;
  report::Json::array_t violations;
  for (const auto& v : audit.violations) {
    report::Json jv;
    jv["pixel"] = v.pixel;
    jv["train"] = v.fold_counts[0];
    jv["val"] = v.fold_counts[1];
    jv["test"] = v.fold_counts[2];
    jv["note"] = v.note;
    violations.push_back(std::move(jv));
  }
  doc["violations"] = std::move(violations);
  report::Json folds;
  for (const Fold f : kAllFolds) {
    const auto i = static_cast<std::size_t>(f);
    report::Json jf;
    jf["target_fraction"] = assignment.target_fraction[i];
    jf["achieved_fraction"] = assignment.achieved_fraction[i];
    jf["tiles"] = assignment.fold_tile_counts[i];
    std::int64_t pixels = 0;
    for (const auto& [pix, fold] : assignment.pixel_fold) {
      if (fold == f) ++pixels;
    }
    jf["pixels"] = pixels;
    folds[to_string(f)] = std::move(jf);
  }
  doc["folds"] = std::move(folds);
  doc["deviation_bound"] = static_cast<double>(assignment.max_pixel_tile_count) /
                           static_cast<double>(assignment.total_tiles);
  write_json_file(options.out_dir / kAuditFile, doc);

  if (!audit.pass) {
    throw std::logic_error("leakage audit failed on freshly assigned folds; see " +
                           (options.out_dir / kAuditFile).string());
  }

  manifest::write_manifest_csv(options.out_dir / kManifestFile, records);

  std::ostringstream summary;
  summary << "split: " << assignment.pixel_fold.size() << " pixels -> folds; achieved "
          << text::format_double(assignment.achieved_fraction[0] * 100.0) << "/"
          << text::format_double(assignment.achieved_fraction[1] * 100.0) << "/"
          << text::format_double(assignment.achieved_fraction[2] * 100.0)
          << "% (targets " << text::format_double(assignment.target_fraction[0] * 100.0)
          << "/" << text::format_double(assignment.target_fraction[1] * 100.0) << "/"
          << text::format_double(assignment.target_fraction[2] * 100.0)
          << "%); leakage audit PASS";
  return summary.str();
}

namespace {

std::vector<TileRecord> read_manifest_for_eval(const fs::path& out_dir,
                                               const PipelineConfig& cfg) {
  auto records = read_manifest_checked(out_dir, cfg);
  for (const auto& r : records) {
    if (!r.fold) {
      throw InputError(std::string(kManifestFile) + ": tile " + r.tile_id +
                       " has no fold; run `frostpix split` first");
    }
  }
  return records;
}

eval::TilePixelSource crops_source(const fs::path& crops_dir) {
  return [crops_dir](const std::string& tile_id) {
    const fs::path path = crops_dir / (tile_id + ".pgm");
    if (!fs::exists(path)) {
      throw InputError("missing crop " + path.string() +
                       "; rerun `frostpix tile --emit-crops`");
    }
    return pgm::read_pgm(path).pixels;
  };
}

}  // namespace

std::string run_eval(const EvalOptions& options) {
  options.cfg.validate();
  const auto records = read_manifest_for_eval(options.out_dir, options.cfg);
  const auto predictions = eval::read_predictions_file(options.predictions);

  report::MetricsOptions mo;
  mo.grid = eval::threshold_grid(options.cfg.threshold_grid_points);
  mo.accuracy_threshold = options.cfg.accuracy_threshold;
  mo.config_hash = options.cfg.hash();
  const auto doc = report::build_metrics(records, predictions, mo);
  write_json_file(options.out_dir / kMetricsFile, doc);

  std::ostringstream summary;
  summary << "eval: " << records.size() << " tiles";
  for (const auto& [fold, metrics] : doc.at("folds").items()) {
    summary << ", " << fold << " acc=" << metrics.at("accuracy").dump();
  }
  return summary.str();
}

std::string run_report(const ReportOptions& options) {
  options.cfg.validate();
  const auto records = read_manifest_for_eval(options.out_dir, options.cfg);
  const auto predictions = eval::read_predictions_file(options.predictions);

  const fs::path crops =
      options.crops_dir ? *options.crops_dir : options.out_dir / kCropsDir;
  if (!fs::is_directory(crops)) {
    throw InputError("intensity histograms need per-tile crops, but " + crops.string() +
                     " is not a directory; rerun `frostpix tile --emit-crops` or pass "
                     "--crops");
  }

  report::ReportBundleOptions ro;
  ro.grid = eval::threshold_grid(options.cfg.threshold_grid_points);
  ro.accuracy_threshold = options.cfg.accuracy_threshold;
  ro.hist_fold_a = options.hist_fold_a;
  ro.hist_fold_b = options.hist_fold_b;
  ro.include_invalid = options.cfg.histogram_include_invalid;
  ro.config_hash = options.cfg.hash();

  const auto doc =
      report::build_report(records, predictions, ro, crops_source(crops));
  write_json_file(options.out_dir / kReportFile, doc);

  const fs::path plots = options.out_dir / kPlotsDir;
  fs::create_directories(plots);
  std::vector<std::string> plot_files;

  // recall curves per fold
  for (const auto& [fold, metrics] : doc.at("folds").items()) {
    std::vector<report::PlotSeries> series;
    for (const auto& curve : metrics.at("recall_curves")) {
      report::PlotSeries s;
      s.name = curve.at("context").get<std::string>();
      s.xs = curve.at("thresholds").get<std::vector<double>>();
      s.ys = curve.at("recall").get<std::vector<double>>();
      series.push_back(std::move(s));
    }
    if (series.empty()) continue;
    report::PlotAxes axes;
    axes.x_label = "classification threshold";
    axes.y_label = "recall";
    write_text_file(plots / ("recall_" + fold + ".svg"),
                    report::line_plot_svg("Frost recall vs threshold (" + fold + ")",
                                          axes, series));
    write_text_file(plots / ("recall_" + fold + ".csv"),
                    report::series_csv("threshold", series));
    plot_files.push_back("recall_" + fold + ".svg");
  }

  // intensity histograms for the fold pair, overall and per context
  const auto emit_hist = [&](const report::Json& shift, const std::string& stem) {
    std::vector<report::PlotSeries> series(2);
    series[0].name = shift.at("fold_a").get<std::string>();
    series[1].name = shift.at("fold_b").get<std::string>();
    const auto freq_a =
        shift.at("histogram_a").at("frequencies").get<std::vector<double>>();
    const auto freq_b =
        shift.at("histogram_b").at("frequencies").get<std::vector<double>>();
    double y_max = 0.0;
    for (int i = 0; i < 256; ++i) {
      series[0].xs.push_back(i);
      series[1].xs.push_back(i);
      series[0].ys.push_back(freq_a[static_cast<std::size_t>(i)]);
      series[1].ys.push_back(freq_b[static_cast<std::size_t>(i)]);
      y_max = std::max({y_max, freq_a[static_cast<std::size_t>(i)],
                        freq_b[static_cast<std::size_t>(i)]});
    }
    report::PlotAxes axes;
    axes.x_label = "pixel intensity";
    axes.y_label = "frequency";
    axes.x_max = 255.0;
    axes.y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;
    write_text_file(plots / (stem + ".svg"),
                    report::line_plot_svg("Pixel intensity distribution", axes, series));
    write_text_file(plots / (stem + ".csv"), report::series_csv("intensity", series));
    plot_files.push_back(stem + ".svg");
  };

  const auto& shift = doc.at("intensity_shift");
  const std::string pair = to_string(options.hist_fold_a) + "_vs_" +
                           to_string(options.hist_fold_b);
  emit_hist(shift.at("overall"), "intensity_" + pair);
  for (const auto& [context, sub] : shift.at("by_context").items()) {
    emit_hist(sub, "intensity_" + pair + "_" + context);
  }

  std::ostringstream summary;
  summary << "report: wrote " << (options.out_dir / kReportFile).string() << " and "
          << plot_files.size() << " plots under " << plots.string();
  return summary.str();
}

}  // namespace frostpix::pipeline
