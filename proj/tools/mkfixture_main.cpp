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

// frostpix-mkfixture: writes a small deterministic synthetic dataset
// (observations, annotations, predictions, config) for demos and
// end-to-end tests. Images are 200x128 with a black no-data margin, a
// sensor-dropout hole, frost patches at varying brightness, and three
// annotators with deliberate disagreements, so every pipeline rule fires.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "frostpix/config.hpp"
#include "frostpix/error.hpp"
#include "frostpix/manifest.hpp"
#include "frostpix/pgm.hpp"
#include "frostpix/pipeline.hpp"
#include "frostpix/text.hpp"

namespace {

namespace fs = std::filesystem;
namespace pgm = frostpix::pgm;

constexpr int kWidth = 200;   // 3 full 64px subframe columns + 8px margin
constexpr int kHeight = 128;  // 2 full subframe rows
constexpr int kSubframe = 64;
constexpr int kTile = 16;

struct Site {
  const char* id;
  double lat;
  double lon;
  int winter_observations;
};

// Mid-latitude crater sites; site A is imaged twice each winter so the
// per-pixel tile counts come out uneven.
constexpr Site kSites[] = {
    {"A", 64.550, 315.907, 2}, {"B", 58.236, 89.607, 1}, {"C", 63.738, 11.035, 1},
    {"D", 42.572, 67.332, 1},  {"E", 56.847, 350.401, 1}, {"F", 59.839, 135.999, 1},
    {"G", 64.829, 209.406, 1},
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

struct FrostPatch {
  int subframe_row;  // grid position within the observation
  int subframe_col;
  double r0, c0, r1, c1;  // patch rect in subframe coordinates
  std::string context;
  int annotators;  // how many of the three draw it (3, 2, or 1 -> ambiguous)
};

// Deterministic patch layout per winter observation: five full subframes
// carry frost, with contexts weighted towards "other" and one patch that
// only a single annotator marks.
std::vector<FrostPatch> frost_patches(const std::string& site_id) {
  std::vector<FrostPatch> patches;
  patches.push_back({0, 0, 6, 6, 34, 40, "other", 3});
  patches.push_back({0, 1, 4, 2, 44, 30, "other", 3});  // covers the dropout hole
  patches.push_back({0, 2, 10, 34, 30, 60, "crater_rim_wall", 3});
  patches.push_back({1, 0, 20, 8, 56, 44, "dunes", 2});
  patches.push_back({1, 1, 8, 8, 26, 26, "other", 1});  // ambiguous by design
  if (site_id == "D" || site_id == "F") {
    patches.push_back({1, 2, 30, 30, 58, 58, "gullies", 3});
  } else {
    patches.push_back({1, 2, 12, 20, 40, 52, "other", 2});
  }
  return patches;
}

pgm::Image render_observation(const std::string& obs_id, int site_index, bool winter,
                              const std::vector<FrostPatch>& patches,
                              std::uint64_t seed) {
  pgm::Image img;
  img.width = kWidth;
  img.height = kHeight;
  img.pixels.assign(static_cast<std::size_t>(kWidth) * kHeight, 0);

  const int base = 90 + 12 * site_index;  // per-site brightness
  for (int r = 0; r < kHeight; ++r) {
    for (int c = 0; c < 192; ++c) {  // right margin stays no-data
      const double ripple = 14.0 * std::sin(0.11 * r) * std::cos(0.07 * c);
      const double noise =
          10.0 * (unit_double(splitmix64(seed ^ (static_cast<std::uint64_t>(r) << 20) ^
                                         static_cast<std::uint64_t>(c))) -
                  0.5);
      int v = static_cast<int>(base + ripple + noise);
      img.pixels[static_cast<std::size_t>(r) * kWidth + c] =
          static_cast<std::uint8_t>(std::clamp(v, 40, 220));
    }
  }

  if (winter) {
    // brighten the frost patches; dune frost is dimmer and more variable
    for (const auto& p : patches) {
      const int orow = p.subframe_row * kSubframe;
      const int ocol = p.subframe_col * kSubframe;
      const int boost = p.context == "dunes" ? 28 : 55;
      for (int r = static_cast<int>(p.r0); r < static_cast<int>(p.r1); ++r) {
        for (int c = static_cast<int>(p.c0); c < static_cast<int>(p.c1); ++c) {
          auto& px = img.pixels[static_cast<std::size_t>(orow + r) * kWidth + ocol + c];
          px = static_cast<std::uint8_t>(std::min(235, px + boost));
        }
      }
    }
    // sensor dropout inside subframe (0,1): a black hole frost overlaps,
    // so some frost tiles fail the black-pixel rule
    for (int r = 10; r < 40; ++r) {
      for (int c = 5; c < 30; ++c) {
        img.pixels[static_cast<std::size_t>(r) * kWidth + kSubframe + c] = 0;
      }
    }
  }
  (void)obs_id;
  return img;
}

void write_sidecar(const fs::path& path, const std::string& obs_id, const Site& site,
                   bool winter, bool with_mask) {
  nlohmann::ordered_json j;
  j["id"] = obs_id;
  j["site_id"] = site.id;
  j["center_lat"] = site.lat;
  j["center_lon"] = site.lon;
  j["season_tag"] = winter ? "winter_candidate" : "summer_negative";
  if (with_mask) j["mask_path"] = obs_id + "_mask.pgm";
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
}

std::string vertices_json(double r0, double c0, double r1, double c1, double jr,
                          double jc) {
  // a slightly irregular pentagon around the patch rectangle
  std::ostringstream v;
  const auto pt = [&](double r, double c) {
    return "[" + frostpix::text::format_double(r) + "," +
           frostpix::text::format_double(c) + "]";
  };
  v << "[" << pt(r0 - jr, c0 - jc) << "," << pt(r0 - jr, c1 + jc) << ","
    << pt((r0 + r1) / 2.0, c1 + 2.0 + jc) << "," << pt(r1 + jr, c1 + jc) << ","
    << pt(r1 + jr, c0 - jc) << "]";
  return v.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"write a deterministic synthetic dataset for the frostpix pipeline"};
  std::string out_path;
  std::uint64_t seed = 20260810;
  app.add_option("-o,--out", out_path, "Fixture output directory")->required();
  app.add_option("--seed", seed, "Texture seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const fs::path out(out_path);
    const fs::path obs_dir = out / "observations";
    fs::create_directories(obs_dir);

    // config the fixture is meant to run with
    frostpix::PipelineConfig cfg;
    cfg.subframe_size = kSubframe;
    cfg.tile_size = kTile;
    {
      std::ofstream toml(out / "config.toml", std::ios::binary);
      toml << "# scaled-down pipeline settings for the synthetic fixture\n"
           << "subframe_size = " << kSubframe << "\n"
           << "tile_size = " << kTile << "\n";
    }

    std::ofstream annotations(out / "annotations.jsonl", std::ios::binary);
    const char* annotator_ids[3] = {"ann_amber", "ann_bilal", "ann_chen"};

    int observations = 0;
    for (int s = 0; s < static_cast<int>(std::size(kSites)); ++s) {
      const Site& site = kSites[s];
      for (int w = 0; w < site.winter_observations; ++w) {
        const std::string obs_id =
            std::string(site.id) + "_winter" + std::to_string(w + 1);
        const auto patches = frost_patches(site.id);
        const bool with_mask = s == 0 && w == 0;  // site A exercises the mask path
        const auto img = render_observation(
            obs_id, s, true, patches, splitmix64(seed ^ static_cast<std::uint64_t>(s * 16 + w)));
        pgm::write_pgm(obs_dir / (obs_id + ".pgm"), img);
        write_sidecar(obs_dir / (obs_id + ".json"), obs_id, site, true, with_mask);
        if (with_mask) {
          // mask declares even the black margin valid, so those subframes
          // survive the invalid-fraction rule and their black tiles flow on
          pgm::Image mask;
          mask.width = kWidth;
          mask.height = kHeight;
          mask.pixels.assign(static_cast<std::size_t>(kWidth) * kHeight, 255);
          pgm::write_pgm(obs_dir / (obs_id + "_mask.pgm"), mask);
        }
        ++observations;

        // three annotators with per-annotator jitter and planned skips
        for (const auto& p : patches) {
          const std::string subframe_id = frostpix::raster::subframe_id(
              obs_id, p.subframe_row, p.subframe_col);
          for (int a = 0; a < p.annotators; ++a) {
            const std::uint64_t h = splitmix64(
                frostpix::text::fnv1a64(subframe_id) ^ static_cast<std::uint64_t>(a + 1));
            const double jr = 0.8 * unit_double(h);
            const double jc = 0.8 * unit_double(splitmix64(h));
            // the second annotator reads terrain differently now and then
            std::string context = p.context;
            if (a == 1 && p.subframe_row == 0 && p.subframe_col == 0) {
              context = "crater_rim_wall";
            }
            annotations << "{\"subframe_id\":\"" << subframe_id << "\",\"annotator_id\":\""
                        << annotator_ids[a] << "\",\"vertices\":"
                        << vertices_json(p.r0, p.c0, p.r1, p.c1, jr, jc)
                        << ",\"context\":\"" << context
                        << "\",\"indicators\":[\"uniform_albedo\""
                        << (p.context == "dunes" ? ",\"defrosting_marks\"" : "")
                        << "]}\n";
          }
        }
      }
      const std::string obs_id = std::string(site.id) + "_summer1";
      const auto img = render_observation(
          obs_id, s, false, {}, splitmix64(seed ^ static_cast<std::uint64_t>(s * 16 + 9)));
      pgm::write_pgm(obs_dir / (obs_id + ".pgm"), img);
      write_sidecar(obs_dir / (obs_id + ".json"), obs_id, site, false, false);
      ++observations;
    }
    annotations.close();

    // Dry-run the pipeline on a scratch copy to learn the surviving tile
    // ids, then emit per-tile scores keyed only on tile id and label.
    const fs::path scratch = out / ".scratch";
    fs::remove_all(scratch);
    frostpix::pipeline::TileOptions to;
    to.input_dir = obs_dir;
    to.out_dir = scratch;
    to.cfg = cfg;
    frostpix::pipeline::run_tile(to);
    frostpix::pipeline::LabelOptions lo;
    lo.annotations = out / "annotations.jsonl";
    lo.out_dir = scratch;
    lo.cfg = cfg;
    frostpix::pipeline::run_label(lo);
    const auto records = frostpix::manifest::read_manifest_csv(
        scratch / frostpix::pipeline::kManifestFile);
    fs::remove_all(scratch);

    std::ofstream preds(out / "predictions.csv", std::ios::binary);
    preds << "tile_id,score\n";
    for (const auto& r : records) {
      const double u =
          unit_double(splitmix64(frostpix::text::fnv1a64(r.tile_id) ^ seed));
      double base = 0.12;  // background
      if (r.label == frostpix::TileLabel::frost) {
        switch (*r.context) {
          case frostpix::GeologicContext::dunes: base = 0.55; break;
          case frostpix::GeologicContext::gullies: base = 0.70; break;
          case frostpix::GeologicContext::crater_rim_wall: base = 0.80; break;
          case frostpix::GeologicContext::other: base = 0.85; break;
        }
      }
      const double score = std::clamp(base + (u - 0.5) * 0.24, 0.0, 1.0);
      preds << r.tile_id << "," << frostpix::text::format_double(score) << "\n";
    }
    preds.close();

    std::cout << "fixture: " << observations << " observations, "
              << records.size() << " labeled tiles; wrote " << out.string()
              << "/{observations,annotations.jsonl,predictions.csv,config.toml}\n";
    return 0;
  } catch (const frostpix::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
