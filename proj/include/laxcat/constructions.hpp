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

// Derived categories: twisted arrows, marked slices and coslices, functor
// categories.

#ifndef LAXCAT_CONSTRUCTIONS_HPP
#define LAXCAT_CONSTRUCTIONS_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "laxcat/diagram.hpp"
#include "laxcat/fincat.hpp"
#include "laxcat/search.hpp"

namespace laxcat {

// Tw(I). Objects are the morphisms of I (same ids). A morphism f → f′ is a
// pair (a, b) with b∘f′∘a = f; (a₂,b₂)∘(a₁,b₁) = (a₂∘a₁, b₁∘b₂).
struct TwistedArrowCat {
  CatPtr cat;
  CatPtr base;
  CatPtr base_op;
  Functor to_base;      // π: f ↦ src f, (a, b) ↦ a
  Functor to_opposite;  // π′: f ↦ tgt f, (a, b) ↦ b, into base_op
  std::vector<int> base_morphism;                    // object -> morphism of I
  std::vector<std::pair<int, int>> morphism_parts;   // morphism -> (a, b)
};

TwistedArrowCat twisted_arrow(const CatPtr& base, const Bounds& bounds = {});

// I_{/i} or I_{i/} with the marking pulled back from I†.
struct SliceCat {
  MarkedFinCat cat;
  Functor forget;
  int apex = -1;
  std::vector<int> leg;         // object -> morphism of I (x → i or i → x)
  std::vector<int> under;       // morphism -> morphism of I it lies over
  // (underlying morphism, determining leg) -> morphism. The determining leg
  // is the target for slices and the source for coslices.
  std::map<std::pair<int, int>, int> lookup;
  // Object with the given leg, or -1.
  std::vector<int> object_of_leg;
};

SliceCat slice(const MarkedFinCat& base, int i);
SliceCat coslice(const MarkedFinCat& base, int i);

// i ↦ I†_{/i}, a ↦ a∘−. Fibers carry the slice markings.
CatDiagram slice_diagram(const MarkedFinCat& base);
// Over opposite(I): i ↦ I†_{i/}, b ↦ −∘b.
CatDiagram coslice_diagram(const MarkedFinCat& base);

// Fun(C, D) with lookup tables. Object ids serialize the functor's graph on
// non-identity data; morphism ids are "F=>G" plus the component tuple.
struct FunctorCat {
  CatPtr cat;
  CatPtr dom;
  CatPtr cod;
  std::vector<std::vector<int>> object_maps;    // per object
  std::vector<std::vector<int>> morphism_maps;  // per object
  std::vector<std::vector<int>> components;     // per morphism

  Functor functor(int object) const;
  NatTrans transformation(int morphism) const;
  std::optional<int> find_functor(const std::vector<int>& morphism_map) const;
  std::optional<int> find_transformation(int source, int target,
                                         const std::vector<int>& comps) const;

  std::map<std::vector<int>, int> functor_lookup;
  std::map<std::vector<int>, int> transformation_lookup;  // [src, tgt, comps…]
};

// All functors c → d passing the constraints, with every natural
// transformation between them that passes the component filter. Throws
// kSizeBoundExceeded rather than truncating.
FunctorCat functor_category(const CatPtr& c, const CatPtr& d,
                            const Bounds& bounds = {},
                            const FunctorConstraints& constraints = {},
                            const ComponentFilter& filter = {});

// Full subcategory on the marked functors c† → d†.
FunctorCat marked_functor_category(const MarkedFinCat& c, const MarkedFinCat& d,
                                   const Bounds& bounds = {});

// G ↦ post∘G∘pre as a functor from.cat → to.cat. A null pre or post means
// the identity. Throws kInvalidDiagram if some image falls outside `to`.
Functor whisker(const FunctorCat& from, const FunctorCat& to, const Functor* pre,
                const Functor* post);

// Functor id in the canonical serialization used by FunctorCat.
std::string functor_id(const FinCat& c, const FinCat& d,
                       const std::vector<int>& object_map,
                       const std::vector<int>& morphism_map);

}  // namespace laxcat

#endif  // LAXCAT_CONSTRUCTIONS_HPP
