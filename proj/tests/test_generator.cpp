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

#include <set>

#include "doctest.h"
#include "laxcat/equiv.hpp"
#include "laxcat/generator.hpp"
#include "test_util.hpp"

using namespace laxcat;
using namespace laxcat::testing;

namespace {

bool is_poset(const FinCat& c) {
  for (int x = 0; x < c.num_objects(); ++x) {
    for (int y = 0; y < c.num_objects(); ++y) {
      if (c.hom(x, y).size() > 1) return false;
      if (x != y && !c.hom(x, y).empty() && !c.hom(y, x).empty()) return false;
    }
  }
  return true;
}

// Every composition-closed set of non-identity morphisms, by brute force.
std::set<std::vector<bool>> valid_markings(const FinCat& c) {
  std::set<std::vector<bool>> out;
  int n = c.num_morphisms();
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<bool> bits(n);
    for (int m = 0; m < n; ++m) bits[m] = ((mask >> m) & 1) || c.is_identity(m);
    if (check_marking(c, Marking(bits)).ok()) out.insert(bits);
  }
  return out;
}

}  // namespace

TEST_CASE("free categories and quotients") {
  Quiver edge{2, {{0, 1}}};
  CatPtr a = free_category(edge);
  CHECK(is_isomorphic(a, shapes::walking_arrow()).positive());

  // a → b → d, a → c → d.
  Quiver square{4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}};
  CHECK(path_count(square) == 10);
  CHECK(free_category(square)->num_morphisms() == 10);
  Rng rng(5);
  CatPtr commuting = random_quotient(square, 1.0, rng);
  CHECK(commuting->num_morphisms() == 9);
  CHECK(check_category_laws(*commuting).ok());
  CatPtr free = random_quotient(square, 0.0, rng);
  CHECK(free->num_morphisms() == 10);

  // The size cap forces merges when parallel paths exist.
  CatPtr capped = random_quotient(square, 0.0, rng, 5);
  CHECK(capped->num_morphisms() == 9);

  Quiver loop{1, {{0, 0}}};
  CHECK_THROWS(free_category(loop));
}

TEST_CASE("generated categories are valid and deterministic") {
  GenParams p;
  for (std::uint64_t s = 0; s < 200; ++s) {
    p.seed = s;
    CatPtr c = gen_category(p);
    REQUIRE(check_category_laws(*c).ok());
    CHECK(c->num_objects() <= p.max_objects);
    CHECK(c->num_morphisms() - c->num_objects() <= p.max_morphisms);
    CHECK(*gen_category(p) == *c);
  }
}

TEST_CASE("gen_marking") {
  GenParams p;
  Rng rng(11);
  CatPtr c2 = chain2();
  p.marking_density = 0.0;
  CHECK(gen_marking(c2, p, rng).marking() == flat_marking(c2).marking());
  p.marking_density = 1.0;
  CHECK(gen_marking(c2, p, rng).marking() == sharp_marking(c2).marking());

  // [2] has seven composition-closed markings; all of them are reachable.
  auto valid = valid_markings(*c2);
  CHECK(valid.size() == 7);
  p.marking_density = 0.5;
  std::set<std::vector<bool>> seen;
  for (int k = 0; k < 200; ++k) {
    MarkedFinCat m = gen_marking(c2, p, rng);
    CHECK(valid.count(m.marking().bits()) == 1);
    seen.insert(m.marking().bits());
  }
  CHECK(seen == valid);

  Rng r1(99), r2(99);
  CHECK(gen_marking(c2, p, r1).marking() == gen_marking(c2, p, r2).marking());
}

TEST_CASE("distribution sanity") {
  GenParams p;
  int posets = 0, others = 0;
  std::set<std::size_t> marking_sizes;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(mix_seed(1, s));
    CatPtr c = gen_category(p, rng);
    (is_poset(*c) ? posets : others)++;
    if (c->num_morphisms() >= 3) marking_sizes.insert(gen_marking(c, p, rng).marking().count());
  }
  CHECK(posets > 0);
  CHECK(others > 0);
  CHECK(marking_sizes.size() >= 3);
}

TEST_CASE("gen_diagram") {
  GenParams p;
  Rng rng(3);
  CatDiagram t = gen_diagram(flat_marking(shapes::terminal()), p, rng);
  CHECK(t.fibers.size() == 1);
  CHECK(check_diagram(t).ok());

  for (int k = 0; k < 30; ++k) {
    CatDiagram a = gen_diagram(arrow_base(k % 2 == 0), p, rng);
    CHECK(check_diagram(a).ok());
  }

  // Commuting square base: transitions compose strictly along both paths.
  Quiver square{4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}};
  Rng qr(0);
  MarkedFinCat sq = flat_marking(random_quotient(square, 1.0, qr));
  for (int k = 0; k < 20; ++k) {
    CatDiagram d = gen_diagram(sq, p, rng);
    REQUIRE(check_diagram(d).ok());
    const FinCat& b = sq.cat();
    for (int g = 0; g < b.num_morphisms(); ++g) {
      for (int f : b.in(b.src(g))) {
        CHECK(compose(d.transition(g), d.transition(f)) == d.transition(b.compose(g, f)));
      }
    }
  }

  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng r(mix_seed(2, s));
    MarkedFinCat base = gen_marking(gen_category(p, r), p, r);
    CatDiagram d = gen_diagram(base, p, r);
    CHECK(check_diagram(d).ok());
    for (const CatPtr& f : d.fibers) CHECK(f->num_objects() <= p.fiber_max_objects);
  }
}

TEST_CASE("gen_set_diagram") {
  GenParams p;
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng r(mix_seed(4, s));
    CatPtr base = gen_category(p, r);
    SetDiagram f = gen_set_diagram(base, p, r, s % 2 == 0);
    CHECK(check_set_diagram(f).ok());
  }
}

TEST_CASE("GenParams validation") {
  GenParams p;
  CHECK_NOTHROW(p.validate());
  p.marking_density = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p = GenParams{};
  p.max_objects = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}
