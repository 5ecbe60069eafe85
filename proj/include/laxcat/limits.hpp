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

// Strict limits of set- and category-valued diagrams, and partially lax
// limits computed through the end formula
//
//   lim^lax F = lim_{(s → t) ∈ Tw(I)^op} Fun†(I†_{/s}, F(t)♭).

#ifndef LAXCAT_LIMITS_HPP
#define LAXCAT_LIMITS_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "laxcat/constructions.hpp"
#include "laxcat/diagram.hpp"
#include "laxcat/fincat.hpp"

namespace laxcat {

// A functor base → FinSet. Elements of values[i] are 0..size-1; names are
// optional labels used for output.
struct SetDiagram {
  CatPtr base;
  std::vector<int> sizes;                  // per object
  std::vector<std::vector<int>> action;    // per morphism: element -> element
  std::vector<std::vector<std::string>> names;  // optional

  std::string element_name(int i, int x) const;
};

ValidationReport check_set_diagram(const SetDiagram& f);

// F∘t for t: J → base.
SetDiagram precompose(const SetDiagram& f, const Functor& t);

// Visits every compatible family (one element per object, preserved by
// every action). Forward checking keeps this close to a join. Return false
// from the visitor to stop. Throws kSizeBoundExceeded past `cap` families.
void for_each_family(const FinCat& base, const std::vector<int>& sizes,
                     const std::vector<const std::vector<int>*>& action,
                     const std::function<bool(const std::vector<int>&)>& visit,
                     std::size_t cap = static_cast<std::size_t>(-1));

// Compatible families in lexicographic order.
std::vector<std::vector<int>> set_limit(const SetDiagram& f,
                                        std::size_t cap = static_cast<std::size_t>(-1));

struct SetColimit {
  int size = 0;
  // class_of[i][x]: the class of element x of F(i); classes are numbered
  // by first appearance in (object, element) order.
  std::vector<std::vector<int>> class_of;
};

SetColimit set_colimit(const SetDiagram& f);

struct CatLimit {
  CatPtr cat;
  std::vector<Functor> projections;          // per base object
  std::vector<std::vector<int>> object_families;    // per object of cat
  std::vector<std::vector<int>> morphism_families;  // per morphism of cat
};

// Strict limit: compatible families of objects and of morphisms.
CatLimit cat_limit(const CatDiagram& f, const Bounds& bounds = {});

struct MarkedCatLimit {
  MarkedFinCat cat;
  CatLimit limit;
};

// A family is marked iff every component is marked in its fiber.
MarkedCatLimit marked_cat_limit(const CatDiagram& f, const Bounds& bounds = {});

struct LaxLimitResult {
  CatPtr cat;
  // Evaluation at the terminal (lax) or initial (oplax) object id_i of the
  // slice: lim → F(i).
  std::vector<Functor> evaluations;
  CatDiagram end_diagram;  // over Tw(I)^op
  CatLimit limit;
};

// Bounds apply to every intermediate functor category and to the result.
LaxLimitResult lax_limit(const CatDiagram& f, const Bounds& bounds = {});
LaxLimitResult oplax_limit(const CatDiagram& f, const Bounds& bounds = {});

// Objects (a, c, β: g(a) ≅ h(c)); morphisms (f, k) with β′∘g(f) = h(k)∘β.
struct IsoComma {
  CatPtr cat;
  Functor to_left;   // → A
  Functor to_right;  // → C
};

IsoComma iso_comma(const Functor& g, const Functor& h, const Bounds& bounds = {});

}  // namespace laxcat

#endif  // LAXCAT_LIMITS_HPP
