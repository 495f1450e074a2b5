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

#ifndef FROSTPIX_PIPELINE_HPP
#define FROSTPIX_PIPELINE_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "frostpix/config.hpp"
#include "frostpix/types.hpp"

namespace frostpix::pipeline {

/// Stage entry points shared by the CLI and the integration tests. Each
/// stage reads/writes the dataset directory (`out_dir`) and returns a
/// one-line human summary; all outputs are deterministic functions of the
/// inputs and the config, regardless of `threads`.

struct TileOptions {
  std::filesystem::path input_dir;  // observation PGM + JSON sidecar pairs
  std::filesystem::path out_dir;
  PipelineConfig cfg;
  int threads = 1;
  bool emit_crops = false;
};

struct LabelOptions {
  std::filesystem::path annotations;  // JSON Lines, one polygon per line
  std::filesystem::path out_dir;
  PipelineConfig cfg;
  int threads = 1;
};

struct SplitOptions {
  std::filesystem::path out_dir;
  PipelineConfig cfg;
};

struct EvalOptions {
  std::filesystem::path predictions;  // tile_id,score CSV
  std::filesystem::path out_dir;
  PipelineConfig cfg;
};

struct ReportOptions {
  std::filesystem::path predictions;
  std::optional<std::filesystem::path> crops_dir;
  std::filesystem::path out_dir;
  PipelineConfig cfg;
  Fold hist_fold_a = Fold::train;
  Fold hist_fold_b = Fold::test;
};

std::string run_tile(const TileOptions& options);
std::string run_label(const LabelOptions& options);
std::string run_split(const SplitOptions& options);
std::string run_eval(const EvalOptions& options);
std::string run_report(const ReportOptions& options);

/// File names a stage directory contains.
inline constexpr const char* kManifestFile = "manifest.csv";
inline constexpr const char* kSubframesFile = "subframes.csv";
inline constexpr const char* kExclusionsFile = "exclusions.csv";
inline constexpr const char* kAuditFile = "audit.json";
inline constexpr const char* kMetricsFile = "metrics.json";
inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kCropsDir = "crops";
inline constexpr const char* kPlotsDir = "plots";

}  // namespace frostpix::pipeline

#endif  // FROSTPIX_PIPELINE_HPP
