// Copyright 2026 The lmmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace lmmatch {

/// Snowball French stemmer. Input is expected to be a lowercased UTF-8
/// token; output is the Snowball stem. Invalid UTF-8 is returned unchanged.
///
/// The algorithm is not idempotent on every French word (a handful of
/// stems are themselves reducible). Use stem_french_fixpoint() when every
/// output token must be stable under re-stemming.
std::string stem_french(std::string_view word);

/// Applies stem_french() until the token stops changing.
std::string stem_french_fixpoint(std::string_view word);

}  // namespace lmmatch
