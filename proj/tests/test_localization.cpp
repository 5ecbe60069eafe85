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
#include "laxcat/generator.hpp"
#include "laxcat/grothendieck.hpp"
#include "laxcat/localization.hpp"
#include "test_util.hpp"

using namespace laxcat;
using namespace laxcat::testing;

namespace {

// One object, one generator m, no relations, m marked.
PresentedCat free_monoid_marked() {
  PresentedCat p;
  p.objects = {"*"};
  p.arrows = {{"m", 0, 0}};
  return adjoin_inverses(p, {0});
}

std::vector<Probe> probes_named(std::initializer_list<std::string> names) {
  std::vector<Probe> out;
  for (const Probe& p : probe_suite()) {
    for (const auto& n : names) {
      if (p.name == n) out.push_back(p);
    }
  }
  return out;
}

const Bounds kProbeBounds{4096, 1 << 16};

}  // namespace

TEST_CASE("present") {
  PresentedCat t = present(sharp_marking(shapes::terminal()));
  CHECK(t.arrows.empty());
  CHECK(t.relations.empty());

  PresentedCat a = present(sharp_marking(shapes::walking_arrow()));
  REQUIRE(a.arrows.size() == 2);
  CHECK(a.arrows[0].id == "u");
  CHECK(a.arrows[1].id == "u^-1");
  REQUIRE(a.relations.size() == 2);
  CHECK(a.path_name(a.relations[0].src, a.relations[0].lhs) == "u^-1*u");
  CHECK(a.path_name(a.relations[0].src, a.relations[0].rhs) == "id_0");
  CHECK(a.path_name(a.relations[1].src, a.relations[1].lhs) == "u*u^-1");
  CHECK(a.path_name(a.relations[1].src, a.relations[1].rhs) == "id_1");
  CHECK(a.check().ok());

  // Flat: composable non-identity pairs plus two laws per non-identity iso.
  for (const CatPtr& c : {chain2(), shapes::walking_iso(), shapes::monoid3(), shapes::split_idempotent()}) {
    std::size_t table = 0, isos = 0;
    for (int f = 0; f < c->num_morphisms(); ++f) {
      if (c->is_identity(f)) continue;
      if (is_iso(*c, f)) ++isos;
      for (int g : c->out(c->tgt(f))) table += c->is_identity(g) ? 0 : 1;
    }
    PresentedCat p = present(flat_marking(c));
    CHECK(p.relations.size() == table + 2 * isos);
    CHECK(p.arrows.size() == static_cast<std::size_t>(c->num_morphisms() - c->num_objects()) + isos);
  }
}

TEST_CASE("presentation validation") {
  PresentedCat p = free_monoid_marked();
  CHECK(p.check().ok());
  p.relations.push_back({0, {0}, {5}});
  CHECK_FALSE(p.check().ok());
  CHECK_THROWS_AS(solve_presentation(p), Error);
}

TEST_CASE("localize examples") {
  // Sharp arrow: the walking isomorphism.
  LocalizationResult a = localize(sharp_marking(shapes::walking_arrow()));
  REQUIRE(a.completed());
  CHECK(a.cat->num_objects() == 2);
  CHECK(a.cat->num_morphisms() == 4);
  CHECK(is_isomorphic(a.cat, shapes::walking_iso()).positive());
  CHECK(is_equivalent(a.cat, shapes::terminal()).positive());
  CHECK(is_iso(*a.cat, (*a.quotient)(shapes::walking_arrow()->morphism_index("u"))));

  // Flat: nothing new, and ids survive.
  for (const CatPtr& c : {chain2(), shapes::walking_iso(), shapes::monoid3(), shapes::split_idempotent(),
                          shapes::parallel_pair(), shapes::span()}) {
    LocalizationResult l = localize(flat_marking(c));
    REQUIRE(l.completed());
    CHECK(*l.cat == *c);
    CHECK(l.quotient->morphism_map == identity_functor(c).morphism_map);
  }

  // Free monoid with m inverted is the integers.
  LocalizationResult z = solve_presentation(free_monoid_marked());
  CHECK_FALSE(z.completed());
  REQUIRE(z.bound);
  CHECK(z.bound->kind == ErrorKind::kWordBoundExceeded);
  CHECK(z.bound->limit == 8);
  CHECK(z.bound->frontier >= 1);
  CHECK(z.bound->hom_src == "*");
  CHECK_THROWS_AS(z.require(), Error);

  PresentedCat small = free_monoid_marked();
  small.bounds.morphism_bound = 5;
  LocalizationResult s = solve_presentation(small);
  REQUIRE(s.bound);
  CHECK(s.bound->kind == ErrorKind::kSizeBoundExceeded);

  // monoid3 with everything marked: z is an invertible idempotent, so z = id
  // and a = a∘z = z.
  LocalizationResult m = localize(sharp_marking(shapes::monoid3()));
  REQUIRE(m.completed());
  CHECK(m.cat->num_morphisms() == 1);
}

TEST_CASE("localization inverts the marking") {
  GenParams p;
  p.max_objects = 3;
  p.max_morphisms = 5;
  int completed = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(mix_seed(21, s));
    MarkedFinCat c = gen_marking(gen_category(p, rng), p, rng);
    LocalizationResult l = localize(c);
    // Inverting parallel arrows can produce an infinite groupoid.
    if (!l.completed()) {
      REQUIRE(l.bound);
      CHECK(l.bound->kind == ErrorKind::kWordBoundExceeded);
      continue;
    }
    ++completed;
    for (int m : c.marking().members()) CHECK(is_iso(*l.cat, (*l.quotient)(m)));
    // Invariance under re-saturating the marking.
    MarkedFinCat again(c.cat_ptr(), saturate_marking(c.cat(), c.marking().members()));
    CHECK(is_equivalent(localize(again).cat, l.cat).positive());
  }
  CHECK(completed >= 30);
}

TEST_CASE("check_localization_up") {
  for (const CatPtr& c : {chain2(), shapes::walking_iso(), shapes::monoid3()}) {
    LocalizationResult l = localize(flat_marking(c));
    CHECK(check_localization_up(flat_marking(c), l, probe_suite()).ok());
  }
  MarkedFinCat sharp = sharp_marking(shapes::walking_arrow());
  LocalizationResult a = localize(sharp);
  ProbeVerdict v = check_localization_up(sharp, a, probe_suite());
  CHECK(v.ok());

  // Into [1] both sides are the constant functors with the one
  // transformation between them: [1] again.
  CatPtr arrow = shapes::walking_arrow();
  CHECK(is_isomorphic(functor_category(a.cat, arrow).cat, arrow).positive());
  CHECK(is_isomorphic(marked_functor_category(sharp, flat_marking(arrow)).cat, arrow).positive());

  // Dropping u∘u⁻¹ = id leaves u⁻¹ a mere retraction; only the split
  // idempotent probe sees it.
  PresentedCat broken = present(sharp);
  broken.relations.pop_back();
  LocalizationResult b = solve_presentation(broken);
  REQUIRE(b.completed());
  CHECK(b.cat->num_morphisms() == 5);
  Functor q{sharp.cat_ptr(), b.cat, {}, {}};
  const FinCat& src = sharp.cat();
  for (int x = 0; x < src.num_objects(); ++x) q.object_map.push_back(b.cat->object_index(src.object_id(x)));
  for (int m = 0; m < src.num_morphisms(); ++m) {
    q.morphism_map.push_back(src.is_identity(m) ? b.cat->identity(q.object_map[src.src(m)])
                                                : b.generator_image[0]);
  }
  REQUIRE(check_functor(q).ok());
  ProbeVerdict bv = check_localization_up(sharp, b.cat, q, probe_suite());
  CHECK(bv.failing() == std::vector<std::string>{"idempotent"});
  CHECK(check_localization_up(sharp, b.cat, q, probes_named({"iso"})).ok());
}

TEST_CASE("lax and oplax colimits") {
  // Flat base: ∫F itself.
  for (const CatDiagram& f : {point_to_pair(false), point_to_arrow(false)}) {
    FiberedCat e = grothendieck_cocart(f);
    LocalizationResult l = lax_colimit(f);
    REQUIRE(l.completed());
    CHECK(*l.cat == e.total.cat());
    LocalizationResult o = oplax_colimit(f);
    REQUIRE(o.completed());
    CHECK(*o.cat == grothendieck_cart(f).total.cat());
  }

  // Constant terminal over [1]♯: the walking iso.
  LocalizationResult k = lax_colimit(constant_diagram(arrow_base(true), shapes::terminal()));
  REQUIRE(k.completed());
  CHECK(is_equivalent(k.cat, shapes::terminal()).positive());

  // x ↦ a over the sharp arrow: (0|x) becomes isomorphic to (1|a), b stays
  // apart. Two iso classes, no maps between them.
  LocalizationResult r = lax_colimit(point_to_pair(true));
  REQUIRE(r.completed());
  CHECK(iso_class_count(*r.cat) == 2);
  CHECK(is_equivalent(r.cat, shapes::discrete(2)).positive());
  FiberedCat e = grothendieck_cocart(point_to_pair(true));
  CHECK(check_localization_up(e.total, r, probe_suite()).ok());
}

TEST_CASE("probe check of the colimit formula") {
  // Constant terminal fibers over a flat base: both sides are Fun(I, D).
  for (const CatPtr& c : {shapes::walking_arrow(), chain2(), shapes::span()}) {
    CatDiagram k = constant_diagram(flat_marking(c), shapes::terminal());
    for (const Probe& probe : probe_suite()) {
      CatPtr lim = colimit_probe_limit(k, probe.cat, kProbeBounds);
      CHECK(is_equivalent(lim, functor_category(c, probe.cat, kProbeBounds).cat).positive());
    }
  }

  // Terminal probe: both sides are terminal.
  for (bool marked : {false, true}) {
    CatPtr lim = colimit_probe_limit(point_to_arrow(marked), shapes::terminal());
    CHECK(lim->num_morphisms() == 1);
  }

  for (bool marked : {false, true}) {
    for (const CatDiagram& f : {point_to_pair(marked), point_to_arrow(marked)}) {
      ProbeVerdict lax = probe_check_colimit_theorem(f, probe_suite(), false, kProbeBounds);
      CHECK(lax.ok());
      ProbeVerdict oplax = probe_check_colimit_theorem(f, probe_suite(), true, kProbeBounds);
      CHECK(oplax.ok());
    }
  }
}
