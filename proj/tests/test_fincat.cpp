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
#include "laxcat/fincat.hpp"
#include "test_util.hpp"

using namespace laxcat;
using namespace laxcat::testing;

TEST_CASE("validate_category accepts the unit-law-forced tables") {
  CatPtr t = shapes::terminal();
  CHECK(t->num_objects() == 1);
  CHECK(t->num_morphisms() == 1);

  CatPtr arrow = shapes::walking_arrow();
  CHECK(arrow->num_morphisms() == 3);
  const int u = arrow->morphism_index("u");
  CHECK(arrow->compose(u, arrow->identity(0)) == u);
  CHECK(arrow->compose(arrow->identity(1), u) == u);
  CHECK(check_category_laws(*arrow).ok());
}

TEST_CASE("validate_category reports a unit-law violation at its pair") {
  RawCategory raw;
  raw.objects = {"0", "1"};
  raw.morphisms = {{"u", "0", "1"}};
  raw.composition = {{"u", "id_0", "id_0"}};
  ValidationReport report = check_raw_category(raw);
  REQUIRE_FALSE(report.ok());
  CHECK(report.summary().find("unit law fails at (u, id_0)") != std::string::npos);
  // Independent re-check of the single law: u∘id_0 must be u.
  CHECK(raw.composition[0].equals != "u");
  CHECK_THROWS_AS(validate_category(raw), Error);
}

TEST_CASE("validate_category reports malformed tables") {
  SUBCASE("duplicate morphism ids") {
    RawCategory raw;
    raw.objects = {"0", "1"};
    raw.morphisms = {{"u", "0", "1"}, {"u", "0", "1"}};
    CHECK(check_raw_category(raw).summary().find("duplicate") != std::string::npos);
  }
  SUBCASE("missing composite") {
    RawCategory raw;
    raw.objects = {"0", "1", "2"};
    raw.morphisms = {{"u", "0", "1"}, {"v", "1", "2"}, {"w", "0", "2"}};
    CHECK(check_raw_category(raw).summary().find("missing composite at (v, u)") !=
          std::string::npos);
  }
  SUBCASE("dangling object") {
    RawCategory raw;
    raw.objects = {"0"};
    raw.morphisms = {{"u", "0", "9"}};
    CHECK(check_raw_category(raw).summary().find("dangling") != std::string::npos);
  }
  SUBCASE("associativity failure") {
    // One object, a∘a = b, a∘b = a, b∘a = b, b∘b = b: (a∘a)∘b = b∘b = b but
    // a∘(a∘b) = a∘a = b; (a∘b)∘a = a∘a = b, a∘(b∘a) = a∘b = a.
    RawCategory raw;
    raw.objects = {"*"};
    raw.morphisms = {{"a", "*", "*"}, {"b", "*", "*"}};
    raw.composition = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
    ValidationReport report = check_raw_category(raw);
    CHECK(report.summary().find("associativity fails") != std::string::npos);
  }
}

TEST_CASE("is_iso searches the reverse hom-set exhaustively") {
  CatPtr arrow = shapes::walking_arrow();
  CHECK(is_iso(*arrow, arrow->identity(0)));
  CHECK(arrow->hom(1, 0).empty());
  CHECK_FALSE(is_iso(*arrow, arrow->morphism_index("u")));

  CatPtr iso = shapes::walking_iso();
  CHECK(is_iso(*iso, iso->morphism_index("u")));
  CHECK(is_iso(*iso, iso->morphism_index("v")));
  CHECK_THROWS_AS(is_iso(*iso, 17), Error);

  // A split epi is not an iso.
  CatPtr split = shapes::split_idempotent();
  CHECK_FALSE(is_iso(*split, split->morphism_index("r")));
}

TEST_CASE("saturate_marking closes under isos and composition") {
  CatPtr arrow = shapes::walking_arrow();
  CHECK(ids_of(*arrow, saturate_marking(*arrow, {})) ==
        std::set<std::string>{"id_0", "id_1"});

  CatPtr c2 = chain2();
  const int u = c2->morphism_index("u");
  const int v = c2->morphism_index("v");
  CHECK(ids_of(*c2, saturate_marking(*c2, {u})) ==
        std::set<std::string>{"id_0", "id_1", "id_2", "u"});
  CHECK(ids_of(*c2, saturate_marking(*c2, {u, v})) ==
        std::set<std::string>{"id_0", "id_1", "id_2", "u", "v", "w"});
}

TEST_CASE("saturate_marking is idempotent and monotone") {
  for (CatPtr c : {chain2(), shapes::split_idempotent(), shapes::monoid3(),
                   shapes::walking_iso(), shapes::ordinal(3)}) {
    const int n = c->num_morphisms();
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> seed;
      for (int m = 0; m < n; ++m) {
        if (mask & (1 << m)) seed.push_back(m);
      }
      Marking once = saturate_marking(*c, seed);
      CHECK(check_marking(*c, once).ok());
      CHECK(saturate_marking(*c, once.members()) == once);
      // Monotone: adding one more generator never removes anything.
      for (int extra = 0; extra < n; ++extra) {
        auto bigger = seed;
        bigger.push_back(extra);
        Marking more = saturate_marking(*c, bigger);
        for (int m : once.members()) CHECK(more.contains(m));
      }
    }
  }
}

TEST_CASE("flat and sharp markings") {
  CatPtr arrow = shapes::walking_arrow();
  CHECK(sharp_marking(arrow).marking().count() == 3);
  CHECK(ids_of(*arrow, flat_marking(arrow).marking()) ==
        std::set<std::string>{"id_0", "id_1"});
  CatPtr iso = shapes::walking_iso();
  CHECK(flat_marking(iso).marking().count() == 4);
}

TEST_CASE("markings that are not closed are rejected, not saturated") {
  CatPtr c2 = chain2();
  std::vector<bool> bits(c2->num_morphisms(), false);
  for (int x = 0; x < 3; ++x) bits[c2->identity(x)] = true;
  bits[c2->morphism_index("u")] = true;
  bits[c2->morphism_index("v")] = true;
  CHECK_THROWS_AS(MarkedFinCat(c2, Marking(bits)), Error);

  CatPtr iso = shapes::walking_iso();
  std::vector<bool> ids_only(iso->num_morphisms(), false);
  ids_only[iso->identity(0)] = ids_only[iso->identity(1)] = true;
  CHECK_THROWS_AS(MarkedFinCat(iso, Marking(ids_only)), Error);
}

TEST_CASE("opposite is an involution on the nose") {
  for (CatPtr c : {chain2(), shapes::split_idempotent(), shapes::monoid3()}) {
    MarkedFinCat m = mark(c, {c->morphism_id(0)});
    MarkedFinCat back = opposite(opposite(m));
    CHECK(back.cat() == *c);
    CHECK(back.marking() == m.marking());
    CatPtr op = opposite(*c);
    CHECK(check_category_laws(*op).ok());
    for (int g = 0; g < c->num_morphisms(); ++g) {
      CHECK(op->src(g) == c->tgt(g));
    }
  }
}

TEST_CASE("product marks componentwise") {
  CatPtr arrow = shapes::walking_arrow();
  MarkedFinCat p = product(sharp_marking(arrow), flat_marking(arrow));
  CHECK(p.cat().num_objects() == 4);
  CHECK(p.cat().num_morphisms() == 9);
  CHECK(p.is_marked(p.cat().morphism_index("(u,id_0)")));
  CHECK_FALSE(p.is_marked(p.cat().morphism_index("(u,u)")));
  CHECK_FALSE(p.is_marked(p.cat().morphism_index("(id_0,u)")));
  CHECK(check_category_laws(p.cat()).ok());

  // terminal × D ≅ D: identical shape after dropping the left component.
  CatPtr c2 = chain2();
  ProductCat tp = product_with_index(flat_marking(shapes::terminal()), mark(c2, {"u"}));
  CHECK(tp.cat.cat().num_objects() == c2->num_objects());
  CHECK(tp.cat.cat().num_morphisms() == c2->num_morphisms());
  for (int m = 0; m < c2->num_morphisms(); ++m) {
    const int pm = tp.morphism(0, m);
    CHECK(tp.cat.is_marked(pm) == mark(c2, {"u"}).is_marked(m));
    CHECK(tp.cat.cat().src(pm) == tp.object(0, c2->src(m)));
  }
}

TEST_CASE("marked_subcategory keeps exactly the marked morphisms") {
  CatPtr c2 = chain2();
  CatPtr flat = marked_subcategory(flat_marking(c2));
  CHECK(flat->num_morphisms() == 3);
  CHECK(*marked_subcategory(sharp_marking(c2)) == *c2);
  CatPtr sub = marked_subcategory(mark(c2, {"u"}));
  CHECK(morphism_ids(*sub) == std::set<std::string>{"id_0", "id_1", "id_2", "u"});
}

TEST_CASE("marked functors restrict to the marked subcategories") {
  CatPtr c2 = chain2();
  MarkedFinCat src = mark(c2, {"u"});
  MarkedFinCat dst = mark(c2, {"u", "v"});
  Functor id = identity_functor(c2);
  REQUIRE(is_marked_functor(id, src.marking(), dst.marking()));
  Subcategory a = wide_subcategory(*c2, src.marking().bits());
  Subcategory b = wide_subcategory(*c2, dst.marking().bits());
  Functor restricted{a.cat, b.cat, {}, {}};
  restricted.object_map = {0, 1, 2};
  for (int m = 0; m < a.cat->num_morphisms(); ++m) {
    restricted.morphism_map.push_back(b.morphism_of[a.parent_morphism[m]]);
  }
  CHECK(check_functor(restricted).ok());
  CHECK_FALSE(is_marked_functor(id, dst.marking(), src.marking()));
}

TEST_CASE("check_functor and check_nat_trans detect violations") {
  CatPtr c2 = chain2();
  Functor bad = identity_functor(c2);
  bad.morphism_map[c2->morphism_index("w")] = c2->morphism_index("u");
  CHECK_FALSE(check_functor(bad).ok());

  CatPtr arrow = shapes::walking_arrow();
  Functor const0{arrow, arrow, {0, 0}, {}};
  Functor const1{arrow, arrow, {1, 1}, {}};
  for (int m = 0; m < 3; ++m) {
    const0.morphism_map.push_back(arrow->identity(0));
    const1.morphism_map.push_back(arrow->identity(1));
  }
  CHECK(check_functor(const0).ok());
  const int u = arrow->morphism_index("u");
  NatTrans alpha{const0, const1, {u, u}};
  CHECK(check_nat_trans(alpha).ok());
  NatTrans beta{const1, const0, {arrow->identity(1), arrow->identity(0)}};
  CHECK_FALSE(check_nat_trans(beta).ok());
}
