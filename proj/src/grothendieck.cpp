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

#include "laxcat/grothendieck.hpp"

#include <algorithm>
#include <unordered_map>

namespace laxcat {
namespace {

void check_size(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw Error(ErrorKind::kSizeBoundExceeded,
                std::string(what) + " exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

int FiberedCat::object(int i, int x) const {
  if (i < 0 || i >= static_cast<int>(object_index.size())) return -1;
  if (x < 0 || x >= static_cast<int>(object_index[i].size())) return -1;
  return object_index[i][x];
}

FiberedCat grothendieck_cocart(const CatDiagram& f, const Bounds& bounds) {
  validate_diagram(f);
  const FinCat& base = f.base.cat();
  const int nb = base.num_objects();

  std::size_t max_obj = 1, max_mor = 1;
  for (const CatPtr& fib : f.fibers) {
    max_obj = std::max<std::size_t>(max_obj, fib->num_objects());
    max_mor = std::max<std::size_t>(max_mor, fib->num_morphisms());
  }
  auto key = [&](int phi, int x, int g) {
    return (static_cast<std::uint64_t>(phi) * max_obj + x) * max_mor + g;
  };

  CatBuilder builder;
  std::vector<std::vector<int>> obj(nb);
  std::vector<std::pair<int, int>> obj_parts;
  for (int i = 0; i < nb; ++i) {
    const FinCat& fib = f.fiber(i);
    for (int x = 0; x < fib.num_objects(); ++x) {
      obj[i].push_back(builder.add_object("(" + base.object_id(i) + "|" + fib.object_id(x) + ")"));
      obj_parts.emplace_back(i, x);
    }
  }
  check_size(obj_parts.size(), bounds.max_objects, "Grothendieck construction objects");

  struct Part {
    int phi, x, g;
  };
  std::vector<Part> parts;
  std::unordered_map<std::uint64_t, int> index;
  for (int i = 0; i < nb; ++i) {
    const FinCat& fib = f.fiber(i);
    for (int x = 0; x < fib.num_objects(); ++x) {
      for (int phi : base.out(i)) {
        const int j = base.tgt(phi);
        const FinCat& fj = f.fiber(j);
        const int y0 = f.transition(phi).on_object(x);
        for (int g : fj.out(y0)) {
          const int k = builder.add_morphism(
              "(" + base.morphism_id(phi) + "|" + fib.object_id(x) + "|" + fj.morphism_id(g) + ")",
              obj[i][x], obj[j][fj.tgt(g)]);
          parts.push_back({phi, x, g});
          index.emplace(key(phi, x, g), k);
          check_size(parts.size(), bounds.max_morphisms, "Grothendieck construction morphisms");
        }
      }
    }
  }
  for (int i = 0; i < nb; ++i) {
    const FinCat& fib = f.fiber(i);
    for (int x = 0; x < fib.num_objects(); ++x) {
      builder.set_identity(obj[i][x], index.at(key(base.identity(i), x, fib.identity(x))));
    }
  }
  builder.set_compose_fn([&](int second, int first) {
    const Part& p = parts[first];
    const Part& q = parts[second];
    const int j = base.tgt(q.phi);
    const int g = f.fiber(j).compose(q.g, f.transition(q.phi)(p.g));
    return index.at(key(base.compose(q.phi, p.phi), p.x, g));
  });
  auto built = builder.build(false);

  FiberedCat e;
  e.flavor = Flavor::kCocartesian;
  e.base = f.base;
  e.diagram = f;
  const FinCat& total = *built.cat;
  e.object_parts.resize(total.num_objects());
  e.object_index.resize(nb);
  for (int i = 0; i < nb; ++i) {
    e.object_index[i].resize(f.fiber(i).num_objects());
    for (int x = 0; x < f.fiber(i).num_objects(); ++x) {
      const int o = built.object_index[obj[i][x]];
      e.object_index[i][x] = o;
      e.object_parts[o] = {i, x};
    }
  }
  // Invertibility per fiber morphism, computed once.
  std::vector<std::vector<bool>> iso(nb);
  for (int j = 0; j < nb; ++j) {
    for (int g = 0; g < f.fiber(j).num_morphisms(); ++g) iso[j].push_back(is_iso(f.fiber(j), g));
  }
  e.morphism_parts.resize(parts.size());
  e.cocartesian.resize(parts.size());
  std::vector<bool> marked(parts.size());
  Functor proj{built.cat, f.base.cat_ptr(), std::vector<int>(total.num_objects()),
               std::vector<int>(parts.size())};
  for (int o = 0; o < total.num_objects(); ++o) proj.object_map[o] = e.object_parts[o].first;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int m = built.morphism_index[k];
    const Part& p = parts[k];
    e.morphism_parts[m] = {p.phi, p.g};
    e.cocartesian[m] = iso[base.tgt(p.phi)][p.g];
    marked[m] = e.cocartesian[m] && f.base.is_marked(p.phi);
    proj.morphism_map[m] = p.phi;
  }
  e.total = MarkedFinCat(built.cat, Marking(marked));
  e.proj = std::move(proj);
  return e;
}

FiberedCat grothendieck_cart(const CatDiagram& f, const Bounds& bounds) {
  validate_diagram(f);
  CatDiagram fop{f.base, {}, {}, f.fiber_markings};
  for (const CatPtr& fib : f.fibers) fop.fibers.push_back(opposite(*fib));
  const FinCat& base = f.base.cat();
  for (int m = 0; m < base.num_morphisms(); ++m) {
    const Functor& t = f.transition(m);
    fop.transitions.push_back(Functor{fop.fibers[base.src(m)], fop.fibers[base.tgt(m)],
                                      t.object_map, t.morphism_map});
  }
  FiberedCat co = grothendieck_cocart(fop, bounds);

  FiberedCat e;
  e.flavor = Flavor::kCartesian;
  e.diagram = f;
  e.base = opposite(f.base);
  e.total = MarkedFinCat(opposite(co.total.cat()), co.total.marking());
  e.proj = Functor{e.total.cat_ptr(), e.base.cat_ptr(), co.proj.object_map,
                   co.proj.morphism_map};
  e.object_parts = std::move(co.object_parts);
  e.object_index = std::move(co.object_index);
  e.morphism_parts = std::move(co.morphism_parts);
  e.cocartesian = std::move(co.cocartesian);
  return e;
}

bool is_cocartesian(const FiberedCat& e, int m) {
  if (m < 0 || m >= static_cast<int>(e.cocartesian.size())) {
    throw Error(ErrorKind::kUnknownMorphism, "no morphism with index " + std::to_string(m));
  }
  return e.cocartesian[m];
}

Subcategory fiber_of(const FiberedCat& e, int i) {
  const FinCat& total = e.total.cat();
  std::vector<int> objects;
  for (int o = 0; o < total.num_objects(); ++o) {
    if (e.object_parts[o].first == i) objects.push_back(o);
  }
  Subcategory full = full_subcategory(total, objects);
  std::vector<bool> keep(full.cat->num_morphisms());
  const int id = e.base.cat().identity(i);
  for (int m = 0; m < full.cat->num_morphisms(); ++m) keep[m] = e.proj(full.parent_morphism[m]) == id;
  Subcategory wide = wide_subcategory(*full.cat, keep);
  Subcategory out;
  out.cat = wide.cat;
  out.object_of.assign(total.num_objects(), -1);
  out.morphism_of.assign(total.num_morphisms(), -1);
  for (int x = 0; x < wide.cat->num_objects(); ++x) {
    const int p = full.parent_object[wide.parent_object[x]];
    out.parent_object.push_back(p);
    out.object_of[p] = x;
  }
  for (int m = 0; m < wide.cat->num_morphisms(); ++m) {
    const int p = full.parent_morphism[wide.parent_morphism[m]];
    out.parent_morphism.push_back(p);
    out.morphism_of[p] = m;
  }
  return out;
}

FunctorCat sections(const FiberedCat& e, bool marked, const Bounds& bounds) {
  const FinCat& base = e.base.cat();
  FunctorConstraints k;
  k.object_allowed = [&](int i, int o) { return e.proj.on_object(o) == i; };
  k.morphism_allowed = [&](int phi, int m) {
    if (e.proj(m) != phi) return false;
    return !marked || !e.base.is_marked(phi) || e.total.is_marked(m);
  };
  ComponentFilter vertical = [&](int i, int a) { return e.proj(a) == base.identity(i); };
  return functor_category(e.base.cat_ptr(), e.total.cat_ptr(), bounds, k, vertical);
}

FiberedCat pullback_fibered(const Functor& t, const Marking& dom_marking, const FiberedCat& e,
                            const Bounds& bounds) {
  if (e.flavor != Flavor::kCocartesian) {
    throw Error(ErrorKind::kInvalidDiagram, "pullback_fibered expects a cocartesian fibration");
  }
  ValidationReport tr = check_functor(t);
  if (!tr.ok()) throw Error(ErrorKind::kInvalidFunctor, "invalid functor: " + tr.summary());
  if (!(*t.cod == e.base.cat())) {
    throw Error(ErrorKind::kInvalidFunctor, "functor does not land in the base of the fibration");
  }
  if (!is_marked_functor(t, dom_marking, e.base.marking())) {
    throw Error(ErrorKind::kInvalidFunctor, "functor does not preserve marked morphisms");
  }
  const FinCat& a = *t.dom;
  const FinCat& total = e.total.cat();

  CatBuilder builder;
  std::vector<std::pair<int, int>> obj_parts;
  std::map<std::pair<int, int>, int> obj_of;
  for (int i = 0; i < a.num_objects(); ++i) {
    for (int o = 0; o < total.num_objects(); ++o) {
      if (e.proj.on_object(o) != t.on_object(i)) continue;
      obj_of[{i, o}] = builder.add_object(tuple_id({a.object_id(i), total.object_id(o)}));
      obj_parts.emplace_back(i, o);
    }
  }
  check_size(obj_parts.size(), bounds.max_objects, "pullback objects");
  std::vector<std::pair<int, int>> parts;
  std::map<std::pair<int, int>, int> index;
  for (const auto& [i, o] : obj_parts) {
    for (int f : a.out(i)) {
      for (int m : total.out(o)) {
        if (e.proj(m) != t(f)) continue;
        const int k = builder.add_morphism(tuple_id({a.morphism_id(f), total.morphism_id(m)}),
                                           obj_of.at({i, o}), obj_of.at({a.tgt(f), total.tgt(m)}));
        parts.emplace_back(f, m);
        index.emplace(std::make_pair(f, m), k);
        check_size(parts.size(), bounds.max_morphisms, "pullback morphisms");
      }
    }
  }
  for (const auto& [i, o] : obj_parts) {
    builder.set_identity(obj_of.at({i, o}), index.at({a.identity(i), total.identity(o)}));
  }
  builder.set_compose_fn([&](int g, int f) {
    return index.at({a.compose(parts[g].first, parts[f].first),
                     total.compose(parts[g].second, parts[f].second)});
  });
  auto built = builder.build(false);
  const FinCat& pb = *built.cat;

  FiberedCat out;
  out.flavor = Flavor::kCocartesian;
  out.base = MarkedFinCat(t.dom, dom_marking);
  out.diagram = restrict_diagram(e.diagram, t, dom_marking);
  out.object_parts.resize(pb.num_objects());
  out.object_index.resize(a.num_objects());
  for (int i = 0; i < a.num_objects(); ++i) {
    out.object_index[i].assign(e.diagram.fiber(t.on_object(i)).num_objects(), -1);
  }
  Functor proj{built.cat, t.dom, std::vector<int>(pb.num_objects()),
               std::vector<int>(pb.num_morphisms())};
  for (std::size_t k = 0; k < obj_parts.size(); ++k) {
    const int o = built.object_index[k];
    const auto [i, eo] = obj_parts[k];
    const int x = e.object_parts[eo].second;
    out.object_parts[o] = {i, x};
    out.object_index[i][x] = o;
    proj.object_map[o] = i;
  }
  std::vector<bool> marked(pb.num_morphisms());
  out.morphism_parts.resize(pb.num_morphisms());
  out.cocartesian.resize(pb.num_morphisms());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int m = built.morphism_index[k];
    const auto [f, em] = parts[k];
    out.morphism_parts[m] = {f, e.morphism_parts[em].second};
    out.cocartesian[m] = e.cocartesian[em];
    marked[m] = dom_marking.contains(f) && e.total.is_marked(em);
    proj.morphism_map[m] = f;
  }
  out.total = MarkedFinCat(built.cat, Marking(marked));
  out.proj = std::move(proj);
  return out;
}

}  // namespace laxcat
