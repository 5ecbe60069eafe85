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

// Finite categories stored as explicit composition tables, together with
// markings, functors and natural transformations.
//
// Objects and morphisms are addressed by dense indices. Every FinCat keeps
// its objects and its morphisms sorted by string id, so index order is the
// lexicographic id order; that ordering is the canonical tie-breaker used by
// every construction in the library.

#ifndef LAXCAT_FINCAT_HPP
#define LAXCAT_FINCAT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "laxcat/error.hpp"

namespace laxcat {

// Caps on the size of derived categories. Constructions that would exceed
// them throw kSizeBoundExceeded instead of truncating.
struct Bounds {
  std::size_t max_objects = 64;
  std::size_t max_morphisms = 512;
};

struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  void add(std::string issue) { issues.push_back(std::move(issue)); }
  std::string summary(std::size_t max_lines = 20) const;
};

class FinCat {
 public:
  // The empty category.
  FinCat() = default;

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

  const std::string& object_id(int x) const { return objects_[x]; }
  const std::string& morphism_id(int m) const { return morphisms_[m].id; }
  int src(int m) const { return morphisms_[m].src; }
  int tgt(int m) const { return morphisms_[m].tgt; }
  int identity(int x) const { return identity_[x]; }
  bool is_identity(int m) const { return identity_[src(m)] == m; }

  // g∘f. Requires tgt(f) == src(g).
  int compose(int g, int f) const {
    return comp_[comp_offset_[f] + out_pos_[g]];
  }
  std::optional<int> try_compose(int g, int f) const;

  std::optional<int> find_object(std::string_view id) const;
  std::optional<int> find_morphism(std::string_view id) const;
  // Throw kUnknownObject / kUnknownMorphism.
  int object_index(std::string_view id) const;
  int morphism_index(std::string_view id) const;

  // Morphisms x→y in index order.
  const std::vector<int>& hom(int x, int y) const {
    return hom_[static_cast<std::size_t>(x) * objects_.size() + y];
  }
  const std::vector<int>& out(int x) const { return out_[x]; }
  const std::vector<int>& in(int x) const { return in_[x]; }

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  friend class CatBuilder;

  struct Morphism {
    std::string id;
    int src;
    int tgt;
  };

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identity_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<int> out_pos_;
  std::vector<std::vector<int>> hom_;
  std::vector<std::size_t> comp_offset_;
  std::vector<int> comp_;
  std::unordered_map<std::string, int> object_lookup_;
  std::unordered_map<std::string, int> morphism_lookup_;
};

using CatPtr = std::shared_ptr<const FinCat>;

// Assembles a FinCat. Indices handed out by the builder are insertion
// indices; build() sorts everything by id and returns the permutations.
class CatBuilder {
 public:
  // g∘f in builder indices; return -1 for "no composite known".
  using ComposeFn = std::function<int(int g, int f)>;

  int add_object(std::string id);
  int add_morphism(std::string id, int src, int tgt);
  void set_identity(int object, int morphism);
  void set_composite(int g, int f, int h);
  void set_compose_fn(ComposeFn fn) { compose_fn_ = std::move(fn); }

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

  struct Built {
    CatPtr cat;
    std::vector<int> object_index;    // builder index -> final index
    std::vector<int> morphism_index;  // builder index -> final index
  };

  // Composites involving an identity are synthesized when absent and
  // checked against the unit laws when given.
  ValidationReport check(bool check_associativity = true) const;
  // Throws kMalformedTable with the full report on failure.
  Built build(bool check_associativity = true) const;

 private:
  struct RawMorphism {
    std::string id;
    int src;
    int tgt;
  };
  Built assemble(ValidationReport& report, bool check_associativity) const;

  std::vector<std::string> objects_;
  std::vector<RawMorphism> morphisms_;
  std::vector<int> identity_;
  std::unordered_map<std::uint64_t, int> composites_;
  ComposeFn compose_fn_;
};

// Exhaustive associativity and unit-law check on an assembled category.
ValidationReport check_category_laws(const FinCat& c);

// Builds a category from string-keyed data as it appears in category files.
struct RawCategory {
  struct Morphism {
    std::string id, src, tgt;
  };
  struct Composite {
    std::string after, before, equals;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::optional<std::map<std::string, std::string>> identities;
  std::vector<Composite> composition;
  std::optional<std::vector<std::string>> marked;
};

ValidationReport check_raw_category(const RawCategory& raw);
// Throws kMalformedTable carrying every violated axiom.
CatPtr validate_category(const RawCategory& raw);

class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<bool> bits) : bits_(std::move(bits)) {}

  bool contains(int m) const { return bits_[m]; }
  std::size_t host_size() const { return bits_.size(); }
  std::size_t count() const;
  const std::vector<bool>& bits() const { return bits_; }
  std::vector<int> members() const;

  friend bool operator==(const Marking&, const Marking&) = default;

 private:
  std::vector<bool> bits_;
};

ValidationReport check_marking(const FinCat& c, const Marking& marking);

class MarkedFinCat {
 public:
  MarkedFinCat() = default;
  // Throws kInvalidMarking if the marking is not iso-containing and
  // composition-closed.
  MarkedFinCat(CatPtr cat, Marking marking);

  const FinCat& cat() const { return *cat_; }
  const CatPtr& cat_ptr() const { return cat_; }
  const Marking& marking() const { return marking_; }
  bool is_marked(int m) const { return marking_.contains(m); }

 private:
  CatPtr cat_;
  Marking marking_;
};

struct Functor {
  CatPtr dom;
  CatPtr cod;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  int operator()(int m) const { return morphism_map[m]; }
  int on_object(int x) const { return object_map[x]; }

  friend bool operator==(const Functor& a, const Functor& b) {
    return a.object_map == b.object_map && a.morphism_map == b.morphism_map;
  }
};

Functor identity_functor(const CatPtr& c);
// g∘f as functors; requires f.cod and g.dom to be the same category.
Functor compose(const Functor& g, const Functor& f);
ValidationReport check_functor(const Functor& f);
bool is_marked_functor(const Functor& f, const Marking& dom_marking,
                       const Marking& cod_marking);

struct NatTrans {
  Functor source;
  Functor target;
  std::vector<int> components;
};

ValidationReport check_nat_trans(const NatTrans& alpha);

// --- operations ------------------------------------------------------------

bool is_iso(const FinCat& c, int f);
// A two-sided inverse of f, if one exists.
std::optional<int> inverse_of(const FinCat& c, int f);

Marking saturate_marking(const FinCat& c, const std::vector<int>& seed);
Marking iso_marking(const FinCat& c);

MarkedFinCat flat_marking(const CatPtr& c);
MarkedFinCat sharp_marking(const CatPtr& c);

// Same ids with sources and targets swapped; opposite(opposite(c)) == c.
CatPtr opposite(const FinCat& c);
MarkedFinCat opposite(const MarkedFinCat& c);

struct ProductCat {
  MarkedFinCat cat;
  int right_objects = 0;
  int right_morphisms = 0;
  std::vector<int> object_index;    // a * right_objects + b -> object
  std::vector<int> morphism_index;  // f * right_morphisms + g -> morphism
  std::vector<std::pair<int, int>> object_parts;
  std::vector<std::pair<int, int>> morphism_parts;

  int object(int a, int b) const {
    return object_index[static_cast<std::size_t>(a) * right_objects + b];
  }
  int morphism(int f, int g) const {
    return morphism_index[static_cast<std::size_t>(f) * right_morphisms + g];
  }
};

// Cartesian product; a pair is marked iff both components are.
ProductCat product_with_index(const MarkedFinCat& a, const MarkedFinCat& b);
MarkedFinCat product(const MarkedFinCat& a, const MarkedFinCat& b);
// u × v between two products built by product_with_index.
Functor product_functor(const ProductCat& from, const ProductCat& to, const Functor& u,
                        const Functor& v);

// Wide subcategory on the marked morphisms.
CatPtr marked_subcategory(const MarkedFinCat& c);

struct Subcategory {
  CatPtr cat;
  std::vector<int> object_of;      // parent object -> sub object or -1
  std::vector<int> morphism_of;    // parent morphism -> sub morphism or -1
  std::vector<int> parent_object;  // sub object -> parent object
  std::vector<int> parent_morphism;
};

Subcategory full_subcategory(const FinCat& c, const std::vector<int>& objects);
// `keep` must contain the identities and be closed under composition.
Subcategory wide_subcategory(const FinCat& c, const std::vector<bool>& keep);

// Canned small categories used by tests, probes and the generator.
namespace shapes {
CatPtr terminal();
CatPtr discrete(int n);
// [n] = 0 → 1 → … → n.
CatPtr ordinal(int n);
CatPtr walking_arrow();
CatPtr walking_iso();
CatPtr parallel_pair();
// a ⇄ b with r∘s = id_b and s∘r = e idempotent on a; five morphisms.
CatPtr split_idempotent();
// One object, monoid {1, a, z} with a·a = z absorbing.
CatPtr monoid3();
// x ← a → y.
CatPtr span();
// x → b ← y.
CatPtr cospan();
}  // namespace shapes

// Helpers for canonical derived ids.
std::string tuple_id(std::span<const std::string> parts);
std::string tuple_id(std::initializer_list<std::string_view> parts);

}  // namespace laxcat

#endif  // LAXCAT_FINCAT_HPP
