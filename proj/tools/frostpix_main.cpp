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

// frostpix: build spatially split, multi-annotator-labeled tile datasets
// from map-projected planetary rasters and evaluate terrain-dependent
// classifier bias from external prediction scores.
//
// Exit codes: 0 ok, 1 runtime error, 2 usage or input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "frostpix/config.hpp"
#include "frostpix/error.hpp"
#include "frostpix/healpix.hpp"
#include "frostpix/pipeline.hpp"
#include "frostpix/text.hpp"

namespace {

using frostpix::PipelineConfig;

// Config file < command-line flags. Each subcommand gets --config plus
// the flags relevant to its stage; flags write through to `cfg` after the
// file is applied.
struct ConfigCli {
  std::string config_path;
  PipelineConfig flags;  // parsed flag values land here
  CLI::App* cmd = nullptr;

  void add_common(CLI::App* sub) {
    cmd = sub;
    sub->add_option("--config", config_path,
                    "TOML or JSON config file; flags override its values");
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config_path.empty()) {
      cfg = frostpix::load_config_file(config_path);
    }
    // flags that were actually passed win over the file
    const auto passed = [this](const std::string& name) {
      return cmd->count(name) > 0;
    };
    if (passed("--subframe-size")) cfg.subframe_size = flags.subframe_size;
    if (passed("--max-invalid")) cfg.max_invalid = flags.max_invalid;
    if (passed("--tile-size")) cfg.tile_size = flags.tile_size;
    if (passed("--max-black")) cfg.max_black = flags.max_black;
    if (passed("--black-rule-all")) cfg.black_rule_all_tiles = flags.black_rule_all_tiles;
    if (passed("--annotators")) cfg.annotator_count = flags.annotator_count;
    if (passed("--majority")) cfg.majority_threshold = flags.majority_threshold;
    if (passed("--overlap-rule")) cfg.overlap_rule = flags.overlap_rule;
    if (passed("--overlap-fraction")) cfg.overlap_fraction = flags.overlap_fraction;
    if (passed("--zero-overlap")) cfg.zero_overlap_policy = flags.zero_overlap_policy;
    if (passed("--ratio-train")) cfg.ratio_train = flags.ratio_train;
    if (passed("--ratio-val")) cfg.ratio_val = flags.ratio_val;
    if (passed("--ratio-test")) cfg.ratio_test = flags.ratio_test;
    if (passed("--nside")) cfg.nside = flags.nside;
    if (passed("--scheme")) cfg.scheme = flags.scheme;
    if (passed("--seed")) cfg.seed = flags.seed;
    if (passed("--grid-points")) cfg.threshold_grid_points = flags.threshold_grid_points;
    if (passed("--threshold")) cfg.accuracy_threshold = flags.accuracy_threshold;
    if (passed("--hist-include-invalid")) {
      cfg.histogram_include_invalid = flags.histogram_include_invalid;
    }
    cfg.validate();
    return cfg;
  }

  void add_raster_flags(CLI::App* sub) {
    sub->add_option("--subframe-size", flags.subframe_size, "Subframe edge length in pixels");
    sub->add_option("--max-invalid", flags.max_invalid,
                    "Discard subframes whose invalid fraction exceeds this");
    sub->add_option("--tile-size", flags.tile_size, "Tile edge length in pixels");
  }
  void add_label_flags(CLI::App* sub) {
    sub->add_option("--max-black", flags.max_black,
                    "Discard frost tiles whose black fraction exceeds this");
    sub->add_flag("--black-rule-all", flags.black_rule_all_tiles,
                  "Apply the black-pixel rule to background tiles too");
    sub->add_option("--annotators", flags.annotator_count, "Annotators per subframe");
    sub->add_option("--majority", flags.majority_threshold, "Votes needed for frost");
    sub->add_option("--overlap-rule", flags.overlap_rule,
                    "any_intersection | min_area_fraction");
    sub->add_option("--overlap-fraction", flags.overlap_fraction,
                    "Tile-area fraction for min_area_fraction");
    sub->add_option("--zero-overlap", flags.zero_overlap_policy,
                    "Policy for unmarked winter tiles: background | exclude");
  }
  void add_split_flags(CLI::App* sub) {
    sub->add_option("--ratio-train", flags.ratio_train, "Target train fraction");
    sub->add_option("--ratio-val", flags.ratio_val, "Target validation fraction");
    sub->add_option("--ratio-test", flags.ratio_test, "Target test fraction");
    sub->add_option("--nside", flags.nside, "Sphere partition resolution (power of two)");
    sub->add_option("--scheme", flags.scheme, "Pixel indexing scheme: ring | nested");
    sub->add_option("--seed", flags.seed,
                    "Deterministic tie-break seed for equal-count pixels");
  }
  void add_eval_flags(CLI::App* sub) {
    sub->add_option("--grid-points", flags.threshold_grid_points,
                    "Points in the threshold sweep grid");
    sub->add_option("--threshold", flags.accuracy_threshold,
                    "Classification threshold for accuracy");
    sub->add_flag("--hist-include-invalid", flags.histogram_include_invalid,
                  "Include intensity-0 (no-data) pixels in histograms");
  }
};

int dispatch(int argc, char** argv) {
  CLI::App app{"frost tile dataset builder and terrain-bias evaluator"};
  app.require_subcommand(1);

  // ---- tile ----
  auto* tile = app.add_subcommand(
      "tile", "Cut observations into subframes and candidate tiles");
  std::string tile_input, tile_out;
  int tile_threads = 1;
  bool emit_crops = false;
  ConfigCli tile_cfg;
  tile->add_option("-i,--input", tile_input, "Directory of PGM + JSON sidecar pairs")
      ->required();
  tile->add_option("-o,--out", tile_out, "Dataset output directory")->required();
  tile->add_option("--threads", tile_threads, "Worker threads (output is identical)");
  tile->add_flag("--emit-crops", emit_crops, "Write per-tile PGM crops");
  tile_cfg.add_common(tile);
  tile_cfg.add_raster_flags(tile);
  tile_cfg.add_label_flags(tile);
  tile_cfg.add_split_flags(tile);
  tile_cfg.add_eval_flags(tile);

  // ---- label ----
  auto* label = app.add_subcommand(
      "label", "Aggregate annotator polygons into per-tile labels by majority vote");
  std::string label_annotations, label_out;
  int label_threads = 1;
  ConfigCli label_cfg;
  label->add_option("-a,--annotations", label_annotations, "Annotations JSONL file")
      ->required();
  label->add_option("-o,--out", label_out, "Dataset directory (from `tile`)")->required();
  label->add_option("--threads", label_threads, "Worker threads (output is identical)");
  label_cfg.add_common(label);
  label_cfg.add_raster_flags(label);
  label_cfg.add_label_flags(label);
  label_cfg.add_split_flags(label);
  label_cfg.add_eval_flags(label);

  // ---- split ----
  auto* split = app.add_subcommand(
      "split", "Assign leakage-free train/val/test folds by sphere pixel");
  std::string split_out;
  ConfigCli split_cfg;
  split->add_option("-o,--out", split_out, "Dataset directory (from `label`)")->required();
  split_cfg.add_common(split);
  split_cfg.add_raster_flags(split);
  split_cfg.add_label_flags(split);
  split_cfg.add_split_flags(split);
  split_cfg.add_eval_flags(split);

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand(
      "eval", "Compute accuracy and per-context recall curves from prediction scores");
  std::string eval_pred, eval_out;
  ConfigCli eval_cfg;
  eval_cmd->add_option("-p,--predictions", eval_pred, "CSV with header tile_id,score")
      ->required();
  eval_cmd->add_option("-o,--out", eval_out, "Dataset directory (from `split`)")
      ->required();
  eval_cfg.add_common(eval_cmd);
  eval_cfg.add_raster_flags(eval_cmd);
  eval_cfg.add_label_flags(eval_cmd);
  eval_cfg.add_split_flags(eval_cmd);
  eval_cfg.add_eval_flags(eval_cmd);

  // ---- report ----
  auto* rep = app.add_subcommand(
      "report", "Emit the full JSON report plus SVG/CSV plots");
  std::string rep_pred, rep_out, rep_crops, rep_fold_a = "train", rep_fold_b = "test";
  ConfigCli rep_cfg;
  rep->add_option("-p,--predictions", rep_pred, "CSV with header tile_id,score")
      ->required();
  rep->add_option("-o,--out", rep_out, "Dataset directory (from `split`)")->required();
  rep->add_option("--crops", rep_crops,
                  "Tile crops directory (defaults to <out>/crops)");
  rep->add_option("--hist-fold-a", rep_fold_a, "First fold of the histogram pair");
  rep->add_option("--hist-fold-b", rep_fold_b, "Second fold of the histogram pair");
  rep_cfg.add_common(rep);
  rep_cfg.add_raster_flags(rep);
  rep_cfg.add_label_flags(rep);
  rep_cfg.add_split_flags(rep);
  rep_cfg.add_eval_flags(rep);

  // ---- healpix lookup ----
  auto* healpix_cmd = app.add_subcommand("healpix", "Sphere pixelization diagnostics");
  healpix_cmd->require_subcommand(1);
  auto* lookup = healpix_cmd->add_subcommand(
      "lookup", "Map a lat/lon to its sphere pixel");
  double look_lat = 0.0, look_lon = 0.0;
  std::int64_t look_nside = 8;
  std::string look_scheme = "ring";
  lookup->add_option("--lat", look_lat, "Latitude in degrees north")->required();
  lookup->add_option("--lon", look_lon, "East longitude in degrees")->required();
  lookup->add_option("--nside", look_nside, "Resolution (power of two)");
  lookup->add_option("--scheme", look_scheme, "ring | nested");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // help/version exit 0
    return code == 0 ? 0 : 2;
  }

  namespace pl = frostpix::pipeline;
  if (tile->parsed()) {
    pl::TileOptions o;
    o.input_dir = tile_input;
    o.out_dir = tile_out;
    o.cfg = tile_cfg.resolve();
    o.threads = tile_threads;
    o.emit_crops = emit_crops;
    std::cout << pl::run_tile(o) << "\n";
  } else if (label->parsed()) {
    pl::LabelOptions o;
    o.annotations = label_annotations;
    o.out_dir = label_out;
    o.cfg = label_cfg.resolve();
    o.threads = label_threads;
    std::cout << pl::run_label(o) << "\n";
  } else if (split->parsed()) {
    pl::SplitOptions o;
    o.out_dir = split_out;
    o.cfg = split_cfg.resolve();
    std::cout << pl::run_split(o) << "\n";
  } else if (eval_cmd->parsed()) {
    pl::EvalOptions o;
    o.predictions = eval_pred;
    o.out_dir = eval_out;
    o.cfg = eval_cfg.resolve();
    std::cout << pl::run_eval(o) << "\n";
  } else if (rep->parsed()) {
    pl::ReportOptions o;
    o.predictions = rep_pred;
    o.out_dir = rep_out;
    if (!rep_crops.empty()) o.crops_dir = rep_crops;
    o.cfg = rep_cfg.resolve();
    o.hist_fold_a = frostpix::fold_from_string(rep_fold_a);
    o.hist_fold_b = frostpix::fold_from_string(rep_fold_b);
    std::cout << pl::run_report(o) << "\n";
  } else if (lookup->parsed()) {
    namespace hp = frostpix::healpix;
    const hp::Nside nside(look_nside);
    const auto scheme = hp::scheme_from_string(look_scheme);
    const auto pix = hp::latlon_to_pixel(nside, look_lat, look_lon, scheme);
    const auto center = hp::pixel_center_latlon(nside, pix);
    std::cout << "pixel=" << pix.index << " scheme=" << hp::to_string(scheme)
              << " nside=" << nside.value() << " npix=" << nside.npix()
              << " center_lat=" << frostpix::text::format_double(center.lat_deg)
              << " center_lon=" << frostpix::text::format_double(center.lon_east_deg)
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const frostpix::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
