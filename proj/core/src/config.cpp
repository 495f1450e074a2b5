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

#include "frostpix/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "frostpix/error.hpp"
#include "frostpix/text.hpp"

namespace frostpix {

namespace {

using Setter = std::function<void(PipelineConfig&, const nlohmann::json&)>;

// One table drives JSON and TOML loading plus unknown-key detection.
const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"subframe_size", [](PipelineConfig& c, const nlohmann::json& v) { c.subframe_size = v.get<int>(); }},
      {"max_invalid", [](PipelineConfig& c, const nlohmann::json& v) { c.max_invalid = v.get<double>(); }},
      {"tile_size", [](PipelineConfig& c, const nlohmann::json& v) { c.tile_size = v.get<int>(); }},
      {"max_black", [](PipelineConfig& c, const nlohmann::json& v) { c.max_black = v.get<double>(); }},
      {"black_rule_all_tiles", [](PipelineConfig& c, const nlohmann::json& v) { c.black_rule_all_tiles = v.get<bool>(); }},
      {"annotator_count", [](PipelineConfig& c, const nlohmann::json& v) { c.annotator_count = v.get<int>(); }},
      {"majority_threshold", [](PipelineConfig& c, const nlohmann::json& v) { c.majority_threshold = v.get<int>(); }},
      {"overlap_rule", [](PipelineConfig& c, const nlohmann::json& v) { c.overlap_rule = v.get<std::string>(); }},
      {"overlap_fraction", [](PipelineConfig& c, const nlohmann::json& v) { c.overlap_fraction = v.get<double>(); }},
      {"zero_overlap_policy", [](PipelineConfig& c, const nlohmann::json& v) { c.zero_overlap_policy = v.get<std::string>(); }},
      {"ratio_train", [](PipelineConfig& c, const nlohmann::json& v) { c.ratio_train = v.get<double>(); }},
      {"ratio_val", [](PipelineConfig& c, const nlohmann::json& v) { c.ratio_val = v.get<double>(); }},
      {"ratio_test", [](PipelineConfig& c, const nlohmann::json& v) { c.ratio_test = v.get<double>(); }},
      {"nside", [](PipelineConfig& c, const nlohmann::json& v) { c.nside = v.get<std::int64_t>(); }},
      {"scheme", [](PipelineConfig& c, const nlohmann::json& v) { c.scheme = v.get<std::string>(); }},
      {"seed", [](PipelineConfig& c, const nlohmann::json& v) { c.seed = v.get<std::uint64_t>(); }},
      {"threshold_grid_points", [](PipelineConfig& c, const nlohmann::json& v) { c.threshold_grid_points = v.get<int>(); }},
      {"accuracy_threshold", [](PipelineConfig& c, const nlohmann::json& v) { c.accuracy_threshold = v.get<double>(); }},
      {"histogram_include_invalid", [](PipelineConfig& c, const nlohmann::json& v) { c.histogram_include_invalid = v.get<bool>(); }},
  };
  return table;
}

void apply_json_object(PipelineConfig& cfg, const nlohmann::json& obj,
                       const std::string& source) {
  if (!obj.is_object()) {
    throw InputError(source + ": config must be a JSON object of settings");
  }
  for (const auto& [key, value] : obj.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw InputError(source + ": unknown config key '" + key + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(source + ": bad value for '" + key + "': " + e.what());
    }
  }
}

// Flat TOML: key = value with string/number/bool values and # comments.
nlohmann::json parse_flat_toml(std::istream& in, const std::string& source) {
  nlohmann::json obj = nlohmann::json::object();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    // strip comments outside of quotes
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        line.resize(i);
        break;
      }
    }
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section headers ignored

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(where + ": expected 'key = value'");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw InputError(where + ": expected 'key = value'");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      obj[key] = value.substr(1, value.size() - 2);
    } else if (value == "true" || value == "false") {
      obj[key] = (value == "true");
    } else {
      try {
        obj[key] = nlohmann::json::parse(value);  // numbers
      } catch (const nlohmann::json::exception&) {
        throw InputError(where + ": cannot parse value '" + value + "'");
      }
      if (!obj[key].is_number()) {
        throw InputError(where + ": cannot parse value '" + value + "'");
      }
    }
  }
  return obj;
}

}  // namespace

void PipelineConfig::validate() const {
  if (subframe_size < 1) throw std::invalid_argument("subframe_size must be >= 1");
  if (tile_size < 1) throw std::invalid_argument("tile_size must be >= 1");
  if (max_invalid < 0.0 || max_invalid > 1.0) {
    throw std::invalid_argument("max_invalid must lie in [0, 1]");
  }
  if (max_black < 0.0 || max_black > 1.0) {
    throw std::invalid_argument("max_black must lie in [0, 1]");
  }
  vote_config().validate();
  if (ratio_train < 0 || ratio_val < 0 || ratio_test < 0) {
    throw std::invalid_argument("fold ratios must be non-negative");
  }
  const double sum = ratio_train + ratio_val + ratio_test;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("fold ratios must sum to 1");
  }
  (void)nside_value();
  (void)scheme_value();
  if (threshold_grid_points < 2) {
    throw std::invalid_argument("threshold_grid_points must be >= 2");
  }
  if (accuracy_threshold < 0.0 || accuracy_threshold > 1.0) {
    throw std::invalid_argument("accuracy_threshold must lie in [0, 1]");
  }
}

labels::VoteConfig PipelineConfig::vote_config() const {
  labels::VoteConfig v;
  v.annotator_count = annotator_count;
  v.majority_threshold = majority_threshold;
  if (overlap_rule == "any_intersection") {
    v.overlap = labels::OverlapRule::any_intersection();
  } else if (overlap_rule == "min_area_fraction") {
    v.overlap = labels::OverlapRule::min_area_fraction(overlap_fraction);
  } else {
    throw std::invalid_argument("unknown overlap_rule '" + overlap_rule +
                                "' (expected any_intersection|min_area_fraction)");
  }
  if (zero_overlap_policy == "background") {
    v.zero_overlap = labels::ZeroOverlapPolicy::background;
  } else if (zero_overlap_policy == "exclude") {
    v.zero_overlap = labels::ZeroOverlapPolicy::exclude;
  } else {
    throw std::invalid_argument("unknown zero_overlap_policy '" + zero_overlap_policy +
                                "' (expected background|exclude)");
  }
  return v;
}

raster::BlackPixelRule PipelineConfig::black_rule() const {
  return raster::BlackPixelRule{max_black, black_rule_all_tiles};
}

std::string PipelineConfig::canonical_json() const {
  nlohmann::json j;  // plain json sorts keys lexicographically
  j["subframe_size"] = subframe_size;
  j["max_invalid"] = max_invalid;
  j["tile_size"] = tile_size;
  j["max_black"] = max_black;
  j["black_rule_all_tiles"] = black_rule_all_tiles;
  j["annotator_count"] = annotator_count;
  j["majority_threshold"] = majority_threshold;
  j["overlap_rule"] = overlap_rule;
  j["overlap_fraction"] = overlap_fraction;
  j["zero_overlap_policy"] = zero_overlap_policy;
  j["ratio_train"] = ratio_train;
  j["ratio_val"] = ratio_val;
  j["ratio_test"] = ratio_test;
  j["nside"] = nside;
  j["scheme"] = scheme;
  j["seed"] = seed;
  j["threshold_grid_points"] = threshold_grid_points;
  j["accuracy_threshold"] = accuracy_threshold;
  j["histogram_include_invalid"] = histogram_include_invalid;
  return j.dump();
}

std::string PipelineConfig::hash() const {
  return text::hex64(text::fnv1a64(canonical_json()));
}

PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open config file");

  nlohmann::json obj;
  if (path.extension() == ".json") {
    try {
      obj = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
  } else {
    obj = parse_flat_toml(in, path.string());
  }
  apply_json_object(base, obj, path.string());
  base.validate();
  return base;
}

}  // namespace frostpix
