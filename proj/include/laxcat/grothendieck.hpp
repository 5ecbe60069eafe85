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

// Strict Grothendieck constructions of a CatDiagram F: I → Cat.
//
// ∫F has objects (i, x) and morphisms (φ, f): (i, x) → (j, y) with
// φ: i → j and f: F(φ)(x) → y. A morphism is marked when φ is marked and
// f is invertible. The cartesian ∫̄F is the opposite of ∫ of the pointwise
// opposite diagram; it lies over I^op.

#ifndef LAXCAT_GROTHENDIECK_HPP
#define LAXCAT_GROTHENDIECK_HPP

#include <utility>
#include <vector>

#include "laxcat/constructions.hpp"
#include "laxcat/diagram.hpp"
#include "laxcat/fincat.hpp"

namespace laxcat {

enum class Flavor { kCocartesian, kCartesian };

struct FiberedCat {
  MarkedFinCat total;
  MarkedFinCat base;  // I† for cocartesian, (I^op)† for cartesian
  Functor proj;       // total → base
  Flavor flavor = Flavor::kCocartesian;
  CatDiagram diagram;
  std::vector<std::pair<int, int>> object_parts;  // object -> (i, x)
  // morphism -> (φ, f); φ is a morphism of I, f lives in the fiber over
  // the target (cocartesian) or the source (cartesian) of the morphism.
  std::vector<std::pair<int, int>> morphism_parts;
  std::vector<bool> cocartesian;  // fiber component invertible

  // Object over i with fiber object x, or -1.
  int object(int i, int x) const;
  std::vector<std::vector<int>> object_index;  // [i][x]
};

FiberedCat grothendieck_cocart(const CatDiagram& f, const Bounds& bounds = {});
FiberedCat grothendieck_cart(const CatDiagram& f, const Bounds& bounds = {});

// Cocartesian (resp. cartesian) in the strict model: the fiber component is
// invertible. Throws kUnknownMorphism.
bool is_cocartesian(const FiberedCat& e, int m);

// Strict fiber of e.proj over i.
Subcategory fiber_of(const FiberedCat& e, int i);

// Strict sections s of e.proj; with `marked`, marked base morphisms must
// land on marked morphisms. Morphisms are the vertical transformations.
FunctorCat sections(const FiberedCat& e, bool marked, const Bounds& bounds = {});
inline FunctorCat marked_sections(const FiberedCat& e, const Bounds& bounds = {}) {
  return sections(e, true, bounds);
}

// I ×_J ∫F for a marked functor t: I† → J† and a cocartesian E over J†,
// marked componentwise. The result is again cocartesian over I†.
FiberedCat pullback_fibered(const Functor& t, const Marking& dom_marking,
                            const FiberedCat& e, const Bounds& bounds = {});

}  // namespace laxcat

#endif  // LAXCAT_GROTHENDIECK_HPP
