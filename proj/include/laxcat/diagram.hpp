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

#ifndef LAXCAT_DIAGRAM_HPP
#define LAXCAT_DIAGRAM_HPP

#include <map>
#include <string>
#include <vector>

#include "laxcat/fincat.hpp"

namespace laxcat {

// A strict functor from a marked finite category into finite categories.
// Fibers are indexed by base objects, transitions by base morphisms
// (identities included).
struct CatDiagram {
  MarkedFinCat base;
  std::vector<CatPtr> fibers;
  std::vector<Functor> transitions;
  // Optional markings on the fibers; empty means every fiber is flat.
  std::vector<Marking> fiber_markings;

  const FinCat& fiber(int i) const { return *fibers[i]; }
  const Functor& transition(int m) const { return transitions[m]; }
  MarkedFinCat marked_fiber(int i) const;
};

// Checks shapes, that every transition is a functor between the right
// fibers, identity preservation and strict composition on every composable
// pair. Violations name the witness pair.
ValidationReport check_diagram(const CatDiagram& f);
// Throws kInvalidDiagram.
void validate_diagram(const CatDiagram& f);

// Functor from id maps. Identity morphisms may be omitted and are sent to
// the identity of the image object. Throws kUnknownObject, kUnknownMorphism
// or kInvalidFunctor.
Functor functor_from_ids(const CatPtr& dom, const CatPtr& cod,
                         const std::map<std::string, std::string>& objects,
                         const std::map<std::string, std::string>& morphisms);

// The constant diagram at value.
CatDiagram constant_diagram(const MarkedFinCat& base, const CatPtr& value);

// F∘t for a functor t into the base of F; the new base is t's domain with
// the given marking.
CatDiagram restrict_diagram(const CatDiagram& f, const Functor& t,
                            const Marking& dom_marking);

}  // namespace laxcat

#endif  // LAXCAT_DIAGRAM_HPP
