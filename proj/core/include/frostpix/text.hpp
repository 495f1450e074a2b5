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

#ifndef FROSTPIX_TEXT_HPP
#define FROSTPIX_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace frostpix::text {

/// Shortest round-trip decimal form (std::to_chars), so repeated runs
/// serialize bit-identical values identically.
std::string format_double(double v);

double parse_double(std::string_view s, const std::string& what);
std::int64_t parse_int(std::string_view s, const std::string& what);

std::vector<std::string> split(std::string_view s, char sep);

/// FNV-1a 64-bit, used for config fingerprints.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

}  // namespace frostpix::text

#endif  // FROSTPIX_TEXT_HPP
