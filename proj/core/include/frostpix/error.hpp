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

#ifndef FROSTPIX_ERROR_HPP
#define FROSTPIX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace frostpix {

/// Malformed or missing input data (rasters, sidecars, annotations,
/// manifests, predictions). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frostpix

#endif  // FROSTPIX_ERROR_HPP
