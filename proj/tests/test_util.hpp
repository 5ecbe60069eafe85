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

#ifndef LAXCAT_TESTS_TEST_UTIL_HPP
#define LAXCAT_TESTS_TEST_UTIL_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "laxcat/diagram.hpp"
#include "laxcat/fincat.hpp"

namespace laxcat::testing {

inline CatPtr make_cat(std::vector<std::string> objects,
                       std::vector<RawCategory::Morphism> morphisms,
                       std::vector<RawCategory::Composite> composition = {}) {
  RawCategory raw;
  raw.objects = std::move(objects);
  raw.morphisms = std::move(morphisms);
  raw.composition = std::move(composition);
  return validate_category(raw);
}

// [2] = 0 -u-> 1 -v-> 2 with w = v∘u.
inline CatPtr chain2() {
  return make_cat({"0", "1", "2"},
                  {{"u", "0", "1"}, {"v", "1", "2"}, {"w", "0", "2"}},
                  {{"v", "u", "w"}});
}

inline std::set<std::string> ids_of(const FinCat& c, const Marking& m) {
  std::set<std::string> out;
  for (int i : m.members()) out.insert(c.morphism_id(i));
  return out;
}

inline std::set<std::string> morphism_ids(const FinCat& c) {
  std::set<std::string> out;
  for (int m = 0; m < c.num_morphisms(); ++m) out.insert(c.morphism_id(m));
  return out;
}

inline MarkedFinCat mark(const CatPtr& c, const std::vector<std::string>& ids) {
  std::vector<int> seed;
  for (const auto& id : ids) seed.push_back(c->morphism_index(id));
  return MarkedFinCat(c, saturate_marking(*c, seed));
}

inline MarkedFinCat arrow_base(bool u_marked) {
  CatPtr arrow = shapes::walking_arrow();
  return u_marked ? sharp_marking(arrow) : flat_marking(arrow);
}

// I = [1], F(0) = {x}, F(1) = discrete {a, b}, F(u)(x) = a.
inline CatDiagram point_to_pair(bool u_marked) {
  MarkedFinCat base = arrow_base(u_marked);
  CatPtr f0 = make_cat({"x"}, {});
  CatPtr f1 = make_cat({"a", "b"}, {});
  CatDiagram f{base, {f0, f1}, {}, {}};
  for (int m = 0; m < base.cat().num_morphisms(); ++m) {
    const std::string& id = base.cat().morphism_id(m);
    if (id == "id_0") f.transitions.push_back(identity_functor(f0));
    if (id == "id_1") f.transitions.push_back(identity_functor(f1));
    if (id == "u") f.transitions.push_back(functor_from_ids(f0, f1, {{"x", "a"}}, {}));
  }
  validate_diagram(f);
  return f;
}

// I = [1], F(0) = {*}, F(1) = a -v-> b, F(u)(*) = a.
inline CatDiagram point_to_arrow(bool u_marked) {
  MarkedFinCat base = arrow_base(u_marked);
  CatPtr f0 = make_cat({"*"}, {});
  CatPtr f1 = make_cat({"a", "b"}, {{"v", "a", "b"}});
  CatDiagram f{base, {f0, f1}, {}, {}};
  for (int m = 0; m < base.cat().num_morphisms(); ++m) {
    const std::string& id = base.cat().morphism_id(m);
    if (id == "id_0") f.transitions.push_back(identity_functor(f0));
    if (id == "id_1") f.transitions.push_back(identity_functor(f1));
    if (id == "u") f.transitions.push_back(functor_from_ids(f0, f1, {{"*", "a"}}, {}));
  }
  validate_diagram(f);
  return f;
}

// Counts functors c → d by trying every object map and every assignment of
// parallel morphisms, then validating. Independent of the search engine.
inline long brute_force_functor_count(const FinCat& c, const FinCat& d) {
  const int n = c.num_objects();
  const int k = d.num_objects();
  if (n > 0 && k == 0) return 0;
  long count = 0;
  std::vector<int> om(n, 0);
  CatPtr cp = std::make_shared<FinCat>(c);
  CatPtr dp = std::make_shared<FinCat>(d);
  while (true) {
    std::vector<int> mm(c.num_morphisms(), 0);
    std::vector<std::size_t> pos(c.num_morphisms(), 0);
    bool empty = false;
    for (int m = 0; m < c.num_morphisms(); ++m) {
      if (d.hom(om[c.src(m)], om[c.tgt(m)]).empty()) empty = true;
    }
    while (!empty) {
      for (int m = 0; m < c.num_morphisms(); ++m) {
        mm[m] = d.hom(om[c.src(m)], om[c.tgt(m)])[pos[m]];
      }
      if (check_functor(Functor{cp, dp, om, mm}).ok()) ++count;
      int m = 0;
      for (; m < c.num_morphisms(); ++m) {
        if (++pos[m] < d.hom(om[c.src(m)], om[c.tgt(m)]).size()) break;
        pos[m] = 0;
      }
      if (m == c.num_morphisms()) break;
    }
    int x = 0;
    for (; x < n; ++x) {
      if (++om[x] < k) break;
      om[x] = 0;
    }
    if (x == n) break;
  }
  return count;
}

}  // namespace laxcat::testing

#endif  // LAXCAT_TESTS_TEST_UTIL_HPP
