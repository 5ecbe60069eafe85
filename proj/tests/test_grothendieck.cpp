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

#include "doctest.h"
#include "laxcat/equiv.hpp"
#include "laxcat/grothendieck.hpp"
#include "test_util.hpp"

using namespace laxcat;
using namespace laxcat::testing;

namespace {

int non_identity(const FinCat& c) {
  int n = 0;
  for (int m = 0; m < c.num_morphisms(); ++m) n += !c.is_identity(m);
  return n;
}

// Cocartesian by the universal property: for every g: e → e″ and every
// ψ with p(g) = ψ∘p(m) there is exactly one h: e′ → e″ over ψ with
// h∘m = g. Works directly on the total category.
bool universal_cocartesian(const FiberedCat& e, int m) {
  const FinCat& t = e.total.cat();
  const FinCat& b = e.base.cat();
  const int src = t.src(m);
  const int tgt = t.tgt(m);
  for (int g : t.out(src)) {
    for (int psi : b.out(b.tgt(e.proj(m)))) {
      if (b.compose(psi, e.proj(m)) != e.proj(g)) continue;
      int count = 0;
      for (int h : t.hom(tgt, t.tgt(g))) {
        count += e.proj(h) == psi && t.compose(h, m) == g;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

std::vector<CatDiagram> sample_diagrams() {
  std::vector<CatDiagram> out;
  for (bool marked : {false, true}) {
    out.push_back(point_to_pair(marked));
    out.push_back(point_to_arrow(marked));
  }
  // Walking arrow fibers over [1] with the identity transition.
  CatPtr arrow = shapes::walking_arrow();
  out.push_back(constant_diagram(arrow_base(false), arrow));
  out.push_back(constant_diagram(arrow_base(true), arrow));
  // Idempotent-splitting fiber over the one-object monoid, acting trivially.
  out.push_back(constant_diagram(sharp_marking(shapes::monoid3()), shapes::walking_iso()));
  out.push_back(constant_diagram(flat_marking(shapes::span()), shapes::split_idempotent()));
  return out;
}

}  // namespace

TEST_CASE("grothendieck_cocart of constant terminal fibers is the base") {
  for (const CatPtr& c : {shapes::walking_arrow(), chain2(), shapes::monoid3(), shapes::span()}) {
    for (const MarkedFinCat& base : {flat_marking(c), sharp_marking(c), mark(c, {c->morphism_id(0)})}) {
      FiberedCat e = grothendieck_cocart(constant_diagram(base, shapes::terminal()));
      CHECK(is_isomorphic(e.total, base).verdict == Verdict::kIsomorphic);
    }
  }
}

TEST_CASE("grothendieck_cocart running example") {
  FiberedCat e = grothendieck_cocart(point_to_pair(false));
  const FinCat& t = e.total.cat();
  CHECK(t.num_objects() == 3);
  CHECK(non_identity(t) == 1);
  const int from = t.object_index("(0|x)");
  const int to = t.object_index("(1|a)");
  REQUIRE(t.hom(from, to).size() == 1);
  const int m = t.hom(from, to)[0];
  CHECK_FALSE(e.total.is_marked(m));
  CHECK(is_cocartesian(e, m));

  FiberedCat em = grothendieck_cocart(point_to_pair(true));
  const FinCat& tm = em.total.cat();
  CHECK(non_identity(tm) == 1);
  const int lift = tm.morphism_index("(u|x|id_a)");
  CHECK(em.total.is_marked(lift));
  CHECK(check_functor(em.proj).ok());
}

TEST_CASE("grothendieck_cart running example") {
  FiberedCat e = grothendieck_cart(point_to_pair(false));
  const FinCat& t = e.total.cat();
  CHECK(t.num_objects() == 3);
  CHECK(non_identity(t) == 1);
  // Contravariant: the lift over u runs from (1|a) to (0|x).
  CHECK(t.hom(t.object_index("(1|a)"), t.object_index("(0|x)")).size() == 1);
  CHECK(t.hom(t.object_index("(0|x)"), t.object_index("(1|a)")).empty());
  CHECK(check_functor(e.proj).ok());
  CHECK(*e.proj.cod == *opposite(*shapes::walking_arrow()));

  // Constant terminal fibers: ∫̄F ≅ I^op (here also ≅ I).
  for (const CatPtr& c : {shapes::walking_arrow(), chain2(), shapes::span()}) {
    FiberedCat k = grothendieck_cart(constant_diagram(sharp_marking(c), shapes::terminal()));
    CHECK(is_isomorphic(k.total.cat_ptr(), opposite(*c)).positive());
  }

  // Sharp base: marked exactly on the cartesian lifts.
  FiberedCat s = grothendieck_cart(point_to_arrow(true));
  for (int m = 0; m < s.total.cat().num_morphisms(); ++m) {
    CHECK(s.total.is_marked(m) == is_cocartesian(s, m));
  }
}

TEST_CASE("is_cocartesian examples") {
  FiberedCat e = grothendieck_cocart(point_to_arrow(false));
  const FinCat& t = e.total.cat();
  CHECK(is_cocartesian(e, t.morphism_index("(u|*|id_a)")));
  CHECK_FALSE(is_cocartesian(e, t.morphism_index("(u|*|v)")));
  CHECK_THROWS_AS(is_cocartesian(e, 999), Error);

  FiberedCat k = grothendieck_cocart(constant_diagram(sharp_marking(chain2()), shapes::terminal()));
  for (int m = 0; m < k.total.cat().num_morphisms(); ++m) CHECK(is_cocartesian(k, m));
}

TEST_CASE("strict cocartesian detection matches the universal property") {
  for (const CatDiagram& f : sample_diagrams()) {
    FiberedCat e = grothendieck_cocart(f);
    for (int m = 0; m < e.total.cat().num_morphisms(); ++m) {
      CHECK(is_cocartesian(e, m) == universal_cocartesian(e, m));
    }
  }
}

TEST_CASE("Grothendieck invariants on sample diagrams") {
  for (const CatDiagram& f : sample_diagrams()) {
    for (const FiberedCat& e : {grothendieck_cocart(f), grothendieck_cart(f)}) {
      CHECK(check_category_laws(e.total.cat()).ok());
      CHECK(check_marking(e.total.cat(), e.total.marking()).ok());
      CHECK(check_functor(e.proj).ok());
      // The fiber over i is F(i) in both flavors (the opposite is taken
      // twice for ∫̄F), matched by ids.
      for (int i = 0; i < f.base.cat().num_objects(); ++i) {
        Subcategory fib = fiber_of(e, i);
        const FinCat& fi = f.fiber(i);
        REQUIRE(fib.cat->num_objects() == fi.num_objects());
        REQUIRE(fib.cat->num_morphisms() == fi.num_morphisms());
        Functor back{fib.cat, f.fibers[i], {}, {}};
        for (int x = 0; x < fib.cat->num_objects(); ++x) {
          back.object_map.push_back(e.object_parts[fib.parent_object[x]].second);
        }
        for (int m = 0; m < fib.cat->num_morphisms(); ++m) {
          back.morphism_map.push_back(e.morphism_parts[fib.parent_morphism[m]].second);
        }
        CHECK(check_functor(back).ok());
        CHECK(is_isomorphic(fib.cat, back.cod).positive());
      }
      // Flat base: marked = isomorphisms. Sharp base: marked = cocartesian.
      const Marking& bm = f.base.marking();
      if (bm == iso_marking(f.base.cat())) {
        CHECK(e.total.marking() == iso_marking(e.total.cat()));
      }
      if (bm.count() == static_cast<std::size_t>(f.base.cat().num_morphisms())) {
        for (int m = 0; m < e.total.cat().num_morphisms(); ++m) {
          CHECK(e.total.is_marked(m) == is_cocartesian(e, m));
        }
      }
    }
  }
}

TEST_CASE("functoriality failures name a witness pair") {
  CatPtr c2 = chain2();
  CatDiagram g = constant_diagram(flat_marking(c2), shapes::discrete(2));
  // Send v to the swap of the two points: v∘u = w must still be identity.
  Functor swap{g.fibers[0], g.fibers[0], {1, 0}, {}};
  for (int m = 0; m < 2; ++m) swap.morphism_map.push_back(g.fibers[0]->identity(1 - m));
  g.transitions[c2->morphism_index("v")] = swap;
  ValidationReport report = check_diagram(g);
  CHECK(report.summary().find("functoriality fails at (v, u)") != std::string::npos);
  CHECK_THROWS_AS(grothendieck_cocart(g), Error);
}

TEST_CASE("marked_sections examples") {
  FunctorCat flat = marked_sections(grothendieck_cocart(point_to_arrow(false)));
  CHECK(flat.cat->num_objects() == 2);
  CHECK(is_isomorphic(flat.cat, shapes::walking_arrow()).positive());

  FunctorCat sharp = marked_sections(grothendieck_cocart(point_to_arrow(true)));
  CHECK(sharp.cat->num_objects() == 1);
  CHECK(sharp.cat->num_morphisms() == 1);

  for (const CatPtr& c : {shapes::walking_arrow(), chain2(), shapes::monoid3(), shapes::cospan()}) {
    for (const MarkedFinCat& base : {flat_marking(c), sharp_marking(c)}) {
      FunctorCat s = marked_sections(grothendieck_cocart(constant_diagram(base, shapes::terminal())));
      CHECK(s.cat->num_objects() == 1);
      CHECK(s.cat->num_morphisms() == 1);
    }
  }
}

TEST_CASE("sections: flat base marking imposes nothing") {
  for (const CatDiagram& f : sample_diagrams()) {
    if (!(f.base.marking() == iso_marking(f.base.cat()))) continue;
    FiberedCat e = grothendieck_cocart(f);
    CHECK(*marked_sections(e).cat == *sections(e, false).cat);
  }
}

TEST_CASE("pullback_fibered examples") {
  CatDiagram f = point_to_arrow(true);
  FiberedCat e = grothendieck_cocart(f);
  const CatPtr& base = f.base.cat_ptr();

  FiberedCat same = pullback_fibered(identity_functor(base), f.base.marking(), e);
  CHECK(is_isomorphic(same.total, e.total).positive());

  // Pick the object 1: the fiber F(1) with its flat marking.
  Functor pick{shapes::terminal(), base, {1}, {base->identity(1)}};
  FiberedCat one = pullback_fibered(pick, flat_marking(shapes::terminal()).marking(), e);
  CHECK(is_isomorphic(one.total, flat_marking(f.fibers[1])).positive());

  // [1]♭ → [1]♯: same category, fewer marked morphisms.
  FiberedCat fewer = pullback_fibered(identity_functor(base), iso_marking(*base), e);
  CHECK(is_isomorphic(fewer.total.cat_ptr(), e.total.cat_ptr()).positive());
  CHECK(fewer.total.marking().count() < e.total.marking().count());

  // Unmarked functors are rejected.
  FiberedCat flat_e = grothendieck_cocart(point_to_arrow(false));
  CHECK_THROWS_AS(pullback_fibered(identity_functor(base), f.base.marking(), flat_e), Error);
}

TEST_CASE("pullback_fibered agrees with restriction along t") {
  CatPtr c2 = chain2();
  CatDiagram f = point_to_arrow(true);
  FiberedCat e = grothendieck_cocart(f);
  const CatPtr& base = f.base.cat_ptr();
  // Every functor [2] → [1], each with every marking that makes it marked.
  FunctorCat all = functor_category(c2, base);
  for (int k = 0; k < all.cat->num_objects(); ++k) {
    Functor t = all.functor(k);
    for (int mask = 0; mask < (1 << c2->num_morphisms()); ++mask) {
      std::vector<int> seed;
      for (int m = 0; m < c2->num_morphisms(); ++m) {
        if (mask & (1 << m)) seed.push_back(m);
      }
      Marking mk = saturate_marking(*c2, seed);
      if (!is_marked_functor(t, mk, f.base.marking())) continue;
      FiberedCat pb = pullback_fibered(t, mk, e);
      FiberedCat direct = grothendieck_cocart(restrict_diagram(f, t, mk));
      CHECK(is_isomorphic(pb.total, direct.total).positive());
    }
  }
}
