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

#include <optional>
#include <string>
#include <string_view>

// Minimal UTF-8 helpers. Case mapping covers ASCII, Latin-1 and Latin
// Extended-A, which is all French text needs.
namespace lmmatch::utf8 {

// Returns std::nullopt on malformed input (overlong forms, surrogates,
// truncated sequences).
std::optional<std::u32string> decode(std::string_view bytes);

// Same as decode but throws Error(BadEncoding) naming `where`.
std::u32string decode_or_throw(std::string_view bytes, std::string_view where);

bool is_valid(std::string_view bytes);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

char32_t to_lower(char32_t cp);
bool is_upper(char32_t cp);
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);

// Lowercase, accent-stripped base letter ('É' -> 'e', 'ç' -> 'c').
char32_t base_letter(char32_t cp);

std::string to_lower(std::string_view bytes);
bool has_upper(std::string_view bytes);

// Length in code points; input must be valid UTF-8.
std::size_t length(std::string_view bytes);

}  // namespace lmmatch::utf8
