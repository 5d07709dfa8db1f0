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

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmmatch {

enum class ErrorKind {
  // data errors
  MissingFile,
  BadEncoding,
  DuplicateId,
  EmptyDocument,
  MalformedLine,
  UnknownId,
  UnknownToken,
  EmptySequence,
  EmptyCorpus,
  VocabularyMismatch,
  NonSquareMatrix,
  // configuration errors
  EmptyStopwordList,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

// True for errors caused by the run configuration rather than the input data.
bool is_config_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lmmatch
