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

#include "frostpix/manifest.hpp"

#include <fstream>
#include <sstream>

#include "frostpix/error.hpp"
#include "frostpix/text.hpp"

namespace frostpix::manifest {

const char* const kManifestHeader =
    "tile_id,observation_id,subframe_id,site_id,center_lat,center_lon,season,"
    "origin_row,origin_col,tile_size,black_fraction,label,context,annotators,votes,"
    "healpix_scheme,healpix_pixel,fold,config_hash";

const char* const kSubframesHeader =
    "subframe_id,observation_id,site_id,center_lat,center_lon,season,row_index,"
    "col_index,origin_row,origin_col,actual_rows,actual_cols,valid_fraction,config_hash";

const char* const kExclusionsHeader = "kind,id,reason,detail";

namespace {

// Ids and free-text fields travel unquoted, so the delimiter set is banned
// from values outright instead of being escaped.
void check_field(const std::string& value, const std::string& what) {
  if (value.find_first_of(",\"\n\r;") != std::string::npos) {
    throw InputError(what + " contains a reserved character (,;\" or newline): '" +
                     value + "'");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no CRLF translation
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  return in;
}

std::vector<std::vector<std::string>> read_rows(std::ifstream& in,
                                                const std::filesystem::path& path,
                                                const char* header,
                                                std::size_t n_fields) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError(path.string() + ": empty file (missing header)");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw InputError(path.string() + ": unexpected header\n  expected: " + header +
                     "\n  found:    " + line);
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = text::split(line, ',');
    if (fields.size() != n_fields) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(n_fields) + " fields, got " +
                       std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string join_annotators(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ';';
    out += ids[i];
  }
  return out;
}

}  // namespace

void write_manifest_csv(const std::filesystem::path& path,
                        std::span<const TileRecord> records) {
  auto out = open_out(path);
  out << kManifestHeader << "\n";
  for (const auto& r : records) {
    check_field(r.tile_id, "tile_id");
    check_field(r.site_id, "site_id");
    for (const auto& a : r.annotators) check_field(a, "annotator id");
    out << r.tile_id << ',' << r.observation_id << ',' << r.subframe_id << ','
        << r.site_id << ',' << text::format_double(r.center_lat) << ','
        << text::format_double(r.center_lon) << ',' << to_string(r.season) << ','
        << r.origin_row << ',' << r.origin_col << ',' << r.tile_size << ','
        << text::format_double(r.black_fraction) << ','
        << (r.label ? to_string(*r.label) : "") << ','
        << (r.context ? to_string(*r.context) : "") << ','
        << join_annotators(r.annotators) << ','
        << (r.vote_total > 0 ? std::to_string(r.vote_count) + "/" + std::to_string(r.vote_total)
                             : "")
        << ',' << (r.scheme ? healpix::to_string(*r.scheme) : "") << ','
        << (r.healpix_pixel ? std::to_string(*r.healpix_pixel) : "") << ','
        << (r.fold ? to_string(*r.fold) : "") << ',' << r.config_hash << "\n";
  }
  if (!out) throw InputError(path.string() + ": write failed");
}

std::vector<TileRecord> read_manifest_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_rows(in, path, kManifestHeader, 19);
  std::vector<TileRecord> records;
  records.reserve(rows.size());
  for (const auto& f : rows) {
    TileRecord r;
    r.tile_id = f[0];
    r.observation_id = f[1];
    r.subframe_id = f[2];
    r.site_id = f[3];
    r.center_lat = text::parse_double(f[4], path.string() + ": center_lat");
    r.center_lon = text::parse_double(f[5], path.string() + ": center_lon");
    r.season = season_from_string(f[6]);
    r.origin_row = static_cast<int>(text::parse_int(f[7], "origin_row"));
    r.origin_col = static_cast<int>(text::parse_int(f[8], "origin_col"));
    r.tile_size = static_cast<int>(text::parse_int(f[9], "tile_size"));
    r.black_fraction = text::parse_double(f[10], path.string() + ": black_fraction");
    if (!f[11].empty()) r.label = tile_label_from_string(f[11]);
    if (!f[12].empty()) r.context = context_from_string(f[12]);
    if (!f[13].empty()) r.annotators = text::split(f[13], ';');
    if (!f[14].empty()) {
      const auto parts = text::split(f[14], '/');
      if (parts.size() != 2) {
        throw InputError(path.string() + ": votes field must look like 'k/n', got '" +
                         f[14] + "'");
      }
      r.vote_count = static_cast<int>(text::parse_int(parts[0], "votes"));
      r.vote_total = static_cast<int>(text::parse_int(parts[1], "votes"));
    }
    if (!f[15].empty()) r.scheme = healpix::scheme_from_string(f[15]);
    if (!f[16].empty()) r.healpix_pixel = text::parse_int(f[16], "healpix_pixel");
    if (!f[17].empty()) r.fold = fold_from_string(f[17]);
    r.config_hash = f[18];
    if (r.label && *r.label == TileLabel::excluded_ambiguous) {
      throw InputError(path.string() + ": tile " + r.tile_id +
                       " is excluded_ambiguous; excluded tiles belong in the exclusions "
                       "file, not the manifest");
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_subframes_csv(const std::filesystem::path& path,
                         std::span<const SubframeRecord> records) {
  auto out = open_out(path);
  out << kSubframesHeader << "\n";
  for (const auto& r : records) {
    out << r.subframe_id << ',' << r.observation_id << ',' << r.site_id << ','
        << text::format_double(r.center_lat) << ',' << text::format_double(r.center_lon)
        << ',' << to_string(r.season) << ',' << r.row_index << ',' << r.col_index << ','
        << r.origin_row << ',' << r.origin_col << ',' << r.actual_rows << ','
        << r.actual_cols << ',' << text::format_double(r.valid_fraction) << ','
        << r.config_hash << "\n";
  }
  if (!out) throw InputError(path.string() + ": write failed");
}

std::vector<SubframeRecord> read_subframes_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_rows(in, path, kSubframesHeader, 14);
  std::vector<SubframeRecord> records;
  records.reserve(rows.size());
  for (const auto& f : rows) {
    SubframeRecord r;
    r.subframe_id = f[0];
    r.observation_id = f[1];
    r.site_id = f[2];
    r.center_lat = text::parse_double(f[3], "center_lat");
    r.center_lon = text::parse_double(f[4], "center_lon");
    r.season = season_from_string(f[5]);
    r.row_index = static_cast<int>(text::parse_int(f[6], "row_index"));
    r.col_index = static_cast<int>(text::parse_int(f[7], "col_index"));
    r.origin_row = static_cast<int>(text::parse_int(f[8], "origin_row"));
    r.origin_col = static_cast<int>(text::parse_int(f[9], "origin_col"));
    r.actual_rows = static_cast<int>(text::parse_int(f[10], "actual_rows"));
    r.actual_cols = static_cast<int>(text::parse_int(f[11], "actual_cols"));
    r.valid_fraction = text::parse_double(f[12], "valid_fraction");
    r.config_hash = f[13];
    records.push_back(std::move(r));
  }
  return records;
}

void write_exclusions_csv(const std::filesystem::path& path,
                          std::span<const ExclusionRecord> records) {
  auto out = open_out(path);
  out << kExclusionsHeader << "\n";
  for (const auto& r : records) {
    check_field(r.detail, "exclusion detail");
    out << r.kind << ',' << r.id << ',' << r.reason << ',' << r.detail << "\n";
  }
  if (!out) throw InputError(path.string() + ": write failed");
}

std::vector<ExclusionRecord> read_exclusions_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto rows = read_rows(in, path, kExclusionsHeader, 4);
  std::vector<ExclusionRecord> records;
  records.reserve(rows.size());
  for (const auto& f : rows) {
    records.push_back(ExclusionRecord{f[0], f[1], f[2], f[3]});
  }
  return records;
}

std::string uniform_config_hash(std::span<const TileRecord> records) {
  if (records.empty()) return {};
  const std::string& hash = records.front().config_hash;
  for (const auto& r : records) {
    if (r.config_hash != hash) {
      throw InputError("manifest rows carry mixed config hashes ('" + hash + "' vs '" +
                       r.config_hash + "'); refusing to evaluate a stitched manifest");
    }
  }
  return hash;
}

}  // namespace frostpix::manifest
