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

#ifndef FROSTPIX_TYPES_HPP
#define FROSTPIX_TYPES_HPP

#include <string>

namespace frostpix {

/// Terrain category a frost polygon sits on; mutually exclusive.
enum class GeologicContext { dunes, gullies, crater_rim_wall, other };

/// Visual evidence classes an annotator can attach to a polygon.
enum class VisibleIndicator {
  uniform_albedo,
  polygonal_features,
  halos,
  defrosting_marks,
};

/// Aggregated per-tile class. Excluded tiles never enter the ML-ready
/// manifest; they are written to the exclusions file with a reason.
enum class TileLabel { frost, background, excluded_ambiguous };

/// Acquisition season of an observation. Summer observations provide
/// frost-free negatives; their tiles are background unconditionally.
enum class SeasonTag { winter_candidate, summer_negative, unspecified };

enum class Fold { train, val, test };

std::string to_string(GeologicContext c);
std::string to_string(VisibleIndicator i);
std::string to_string(TileLabel l);
std::string to_string(SeasonTag s);
std::string to_string(Fold f);

GeologicContext context_from_string(const std::string& s);
VisibleIndicator indicator_from_string(const std::string& s);
TileLabel tile_label_from_string(const std::string& s);
SeasonTag season_from_string(const std::string& s);
Fold fold_from_string(const std::string& s);

inline constexpr GeologicContext kAllContexts[] = {
    GeologicContext::dunes,
    GeologicContext::gullies,
    GeologicContext::crater_rim_wall,
    GeologicContext::other,
};

inline constexpr Fold kAllFolds[] = {Fold::train, Fold::val, Fold::test};

}  // namespace frostpix

#endif  // FROSTPIX_TYPES_HPP
