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

#include <cstddef>

#include "lmmatch/corpus.hpp"

namespace lmmatch::testing {

// Five acronyms, each defined once, covering both definition orders and the
// function-word skip. Hand count of lowercased tokens equal to a short form:
// c1: ivg x2, c2: avc x2, c3: pa x2, d1: fa x2 + ivg, d2: saos x2 + avc.
inline constexpr std::size_t kFixtureEntries = 5;
inline constexpr std::size_t kFixtureSubstitutions = 12;

inline Corpus abbreviation_fixture() {
  Corpus corpus;
  corpus.cases = {
      {"c1", DocKind::Case,
       "Patiente de 45 ans, suivie pour une insuffisance ventriculaire gauche (IVG). L'IVG est stable."},
      {"c2", DocKind::Case, "Antécédent d'accident vasculaire cérébral (AVC) en 2010 ; pas de récidive d'AVC."},
      {"c3", DocKind::Case, "La PA (pression artérielle) était élevée ; la PA a été contrôlée."},
  };
  corpus.discussions = {
      {"d1", DocKind::Discussion,
       "La fibrillation auriculaire (FA) complique souvent l'IVG. Une FA paroxystique est fréquente."},
      {"d2", DocKind::Discussion,
       "Le SAOS (syndrome d'apnées obstructives du sommeil) aggrave l'AVC. Il faut dépister le SAOS."},
  };
  return corpus;
}

}  // namespace lmmatch::testing
