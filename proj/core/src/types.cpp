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

#include "frostpix/types.hpp"

#include <stdexcept>

namespace frostpix {

std::string to_string(GeologicContext c) {
  switch (c) {
    case GeologicContext::dunes: return "dunes";
    case GeologicContext::gullies: return "gullies";
    case GeologicContext::crater_rim_wall: return "crater_rim_wall";
    case GeologicContext::other: return "other";
  }
  throw std::logic_error("unreachable GeologicContext");
}

std::string to_string(VisibleIndicator i) {
  switch (i) {
    case VisibleIndicator::uniform_albedo: return "uniform_albedo";
    case VisibleIndicator::polygonal_features: return "polygonal_features";
    case VisibleIndicator::halos: return "halos";
    case VisibleIndicator::defrosting_marks: return "defrosting_marks";
  }
  throw std::logic_error("unreachable VisibleIndicator");
}

std::string to_string(TileLabel l) {
  switch (l) {
    case TileLabel::frost: return "frost";
    case TileLabel::background: return "background";
    case TileLabel::excluded_ambiguous: return "excluded_ambiguous";
  }
  throw std::logic_error("unreachable TileLabel");
}

std::string to_string(SeasonTag s) {
  switch (s) {
    case SeasonTag::winter_candidate: return "winter_candidate";
    case SeasonTag::summer_negative: return "summer_negative";
    case SeasonTag::unspecified: return "unspecified";
  }
  throw std::logic_error("unreachable SeasonTag");
}

std::string to_string(Fold f) {
  switch (f) {
    case Fold::train: return "train";
    case Fold::val: return "val";
    case Fold::test: return "test";
  }
  throw std::logic_error("unreachable Fold");
}

GeologicContext context_from_string(const std::string& s) {
  if (s == "dunes") return GeologicContext::dunes;
  if (s == "gullies") return GeologicContext::gullies;
  if (s == "crater_rim_wall") return GeologicContext::crater_rim_wall;
  if (s == "other") return GeologicContext::other;
  throw std::invalid_argument("unknown geologic context '" + s + "'");
}

VisibleIndicator indicator_from_string(const std::string& s) {
  if (s == "uniform_albedo") return VisibleIndicator::uniform_albedo;
  if (s == "polygonal_features") return VisibleIndicator::polygonal_features;
  if (s == "halos") return VisibleIndicator::halos;
  if (s == "defrosting_marks") return VisibleIndicator::defrosting_marks;
  throw std::invalid_argument("unknown visible indicator '" + s + "'");
}

TileLabel tile_label_from_string(const std::string& s) {
  if (s == "frost") return TileLabel::frost;
  if (s == "background") return TileLabel::background;
  if (s == "excluded_ambiguous") return TileLabel::excluded_ambiguous;
  throw std::invalid_argument("unknown tile label '" + s + "'");
}

SeasonTag season_from_string(const std::string& s) {
  if (s == "winter_candidate") return SeasonTag::winter_candidate;
  if (s == "summer_negative") return SeasonTag::summer_negative;
  if (s == "unspecified") return SeasonTag::unspecified;
  throw std::invalid_argument("unknown season tag '" + s + "'");
}

Fold fold_from_string(const std::string& s) {
  if (s == "train") return Fold::train;
  if (s == "val") return Fold::val;
  if (s == "test") return Fold::test;
  throw std::invalid_argument("unknown fold '" + s + "'");
}

}  // namespace frostpix
