// Copyright 2026 The laxcat Authors.
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

// Presented categories, a bounded word-problem solver and localization at a
// marked class. The solver is coset enumeration (one table per source
// object) with coincidence processing; it either reaches a closed table
// within the bounds or reports where it stopped.

#ifndef LAXCAT_LOCALIZATION_HPP
#define LAXCAT_LOCALIZATION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "laxcat/diagram.hpp"
#include "laxcat/fincat.hpp"

namespace laxcat {

struct LocalizationBounds {
  int word_bound = 8;
  std::size_t morphism_bound = 4096;
};

struct PresentedCat {
  struct Arrow {
    std::string id;
    int src = 0;
    int tgt = 0;
  };
  // Paths list generator indices in the order they are traversed, so
  // {f, g} means g∘f. An empty path is the identity at `src`.
  struct Relation {
    int src = 0;
    std::vector<int> lhs;
    std::vector<int> rhs;
  };

  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  // Optional names for the identities; "id_<object>" otherwise.
  std::vector<std::string> identity_ids;
  LocalizationBounds bounds;

  ValidationReport check() const;
  int path_target(int src, const std::vector<int>& path) const;
  std::string path_name(int src, const std::vector<int>& path) const;
};

// Generators: the non-identity morphisms plus a formal inverse "m^-1" for
// each marked non-identity m. Relations: the composition table on
// non-identity pairs plus both inverse laws per marked generator.
PresentedCat present(const MarkedFinCat& c, const LocalizationBounds& bounds = {});

// Adds a formal inverse and both inverse laws for each listed generator.
PresentedCat adjoin_inverses(const PresentedCat& p, const std::vector<int>& generators);

struct BoundReport {
  ErrorKind kind = ErrorKind::kWordBoundExceeded;
  std::size_t limit = 0;
  std::size_t frontier = 0;  // live words beyond the bound when it tripped
  // Smallest hom-set holding a frontier word, and its live size.
  std::string hom_src;
  std::string hom_tgt;
  std::size_t hom_size = 0;

  std::string message() const;
};

struct LocalizationResult {
  CatPtr cat;  // null unless completed
  // Image of every generator of the presentation.
  std::vector<int> generator_image;
  // C → cat when localizing a marked category.
  std::optional<Functor> quotient;
  std::optional<BoundReport> bound;
  std::size_t words_defined = 0;

  bool completed() const { return cat != nullptr; }
  // Throws the bound as an Error when not completed.
  const FinCat& require() const;
};

LocalizationResult solve_presentation(const PresentedCat& p);
LocalizationResult localize(const MarkedFinCat& c, const LocalizationBounds& bounds = {});

// Colimits as localized Grothendieck constructions.
LocalizationResult lax_colimit(const CatDiagram& f, const LocalizationBounds& bounds = {},
                               const Bounds& size = {});
LocalizationResult oplax_colimit(const CatDiagram& f, const LocalizationBounds& bounds = {},
                                 const Bounds& size = {});

// terminal, discrete 2, [1], walking iso, [2], parallel pair, split
// idempotent.
struct Probe {
  std::string name;
  CatPtr cat;
};
std::vector<Probe> probe_suite();

struct ProbeOutcome {
  std::string probe;
  bool ok = false;
  std::string detail;
};

struct ProbeVerdict {
  std::vector<ProbeOutcome> outcomes;

  bool ok() const;
  std::vector<std::string> failing() const;
};

// For each probe D: precomposition with the quotient functor
// Fun(cat, D) → Fun†(C†, D♭) is well defined, essentially surjective and
// fully faithful.
ProbeVerdict check_localization_up(const MarkedFinCat& c, const CatPtr& cat,
                                   const Functor& quotient, const std::vector<Probe>& probes,
                                   const Bounds& bounds = {});
ProbeVerdict check_localization_up(const MarkedFinCat& c, const LocalizationResult& l,
                                   const std::vector<Probe>& probes, const Bounds& bounds = {});

// Compares Fun†(∫F†, D♭) with the limit over Tw(I)^op of
// Fun†(I†_{t/} × F(s)♭, D♭), s → t ranging over Tw(I), for every probe; with `oplax`, ∫̄F against the
// same formula for the pointwise opposite diagram and D^op.
ProbeVerdict probe_check_colimit_theorem(const CatDiagram& f, const std::vector<Probe>& probes,
                                         bool oplax = false, const Bounds& bounds = {});

// The limit side of the probe comparison on its own.
CatPtr colimit_probe_limit(const CatDiagram& f, const CatPtr& probe, const Bounds& bounds = {});

}  // namespace laxcat

#endif  // LAXCAT_LOCALIZATION_HPP
