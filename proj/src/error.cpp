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

#include "lmmatch/error.hpp"

namespace lmmatch {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::BadEncoding: return "BadEncoding";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::EmptyDocument: return "EmptyDocument";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::VocabularyMismatch: return "VocabularyMismatch";
    case ErrorKind::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorKind::EmptyStopwordList: return "EmptyStopwordList";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

bool is_config_error(ErrorKind kind) {
  return kind == ErrorKind::EmptyStopwordList || kind == ErrorKind::InvalidConfig;
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace lmmatch
