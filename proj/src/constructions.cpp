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

#include "laxcat/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace laxcat {
namespace {

void check_object(const FinCat& c, int i) {
  if (i < 0 || i >= c.num_objects()) {
    throw Error(ErrorKind::kUnknownObject, "no object with index " + std::to_string(i));
  }
}

void check_size(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw Error(ErrorKind::kSizeBoundExceeded,
                std::string(what) + " exceeds the cap of " + std::to_string(cap));
  }
}

Functor map_functor(CatPtr dom, CatPtr cod, const std::vector<int>& objects,
                    const std::vector<int>& morphisms) {
  return Functor{std::move(dom), std::move(cod), objects, morphisms};
}

}  // namespace

TwistedArrowCat twisted_arrow(const CatPtr& base, const Bounds& bounds) {
  const FinCat& c = *base;
  const std::size_t n = c.num_morphisms();
  check_size(n, bounds.max_objects, "twisted arrow category objects");

  CatBuilder builder;
  for (int f = 0; f < c.num_morphisms(); ++f) builder.add_object(c.morphism_id(f));
  // Morphism (a, b) into f′ is keyed by (a, b, f′).
  std::vector<std::pair<int, int>> parts;
  std::vector<int> target;
  std::unordered_map<std::uint64_t, int> index;
  auto key = [n](int a, int b, int ft) {
    return (static_cast<std::uint64_t>(a) * n + b) * n + ft;
  };
  for (int ft = 0; ft < c.num_morphisms(); ++ft) {
    for (int a : c.in(c.src(ft))) {
      for (int b : c.out(c.tgt(ft))) {
        const int f = c.compose(b, c.compose(ft, a));
        const int k = builder.add_morphism(
            tuple_id({c.morphism_id(a), c.morphism_id(b), c.morphism_id(ft)}), f, ft);
        parts.emplace_back(a, b);
        target.push_back(ft);
        index.emplace(key(a, b, ft), k);
        check_size(parts.size(), bounds.max_morphisms, "twisted arrow category morphisms");
      }
    }
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    builder.set_identity(f, index.at(key(c.identity(c.src(f)), c.identity(c.tgt(f)), f)));
  }
  builder.set_compose_fn([&](int g, int h) {
    // h: f → f′ then g: f′ → f″.
    const auto [a1, b1] = parts[h];
    const auto [a2, b2] = parts[g];
    return index.at(key(c.compose(a2, a1), c.compose(b1, b2), target[g]));
  });
  auto built = builder.build(false);

  TwistedArrowCat tw;
  tw.cat = built.cat;
  tw.base = base;
  tw.base_op = opposite(c);
  tw.base_morphism.resize(n);
  for (int f = 0; f < c.num_morphisms(); ++f) tw.base_morphism[built.object_index[f]] = f;
  tw.morphism_parts.resize(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    tw.morphism_parts[built.morphism_index[k]] = parts[k];
  }
  std::vector<int> om_src(n), om_tgt(n), mm_a(parts.size()), mm_b(parts.size());
  for (std::size_t x = 0; x < n; ++x) {
    om_src[x] = c.src(tw.base_morphism[x]);
    om_tgt[x] = c.tgt(tw.base_morphism[x]);
  }
  for (std::size_t m = 0; m < parts.size(); ++m) {
    mm_a[m] = tw.morphism_parts[m].first;
    mm_b[m] = tw.morphism_parts[m].second;
  }
  tw.to_base = map_functor(tw.cat, base, om_src, mm_a);
  tw.to_opposite = map_functor(tw.cat, tw.base_op, om_tgt, mm_b);
  return tw;
}

namespace {

// Shared body of slice and coslice. For a slice the legs end at i and a
// morphism h: f → f′ satisfies f′∘h = f; for a coslice the legs start at i
// and h∘f = f′.
SliceCat build_slice(const MarkedFinCat& marked, int i, bool under) {
  const FinCat& c = marked.cat();
  check_object(c, i);
  const std::vector<int>& legs = under ? c.out(i) : c.in(i);

  CatBuilder builder;
  std::vector<int> object_of_leg(c.num_morphisms(), -1);
  for (std::size_t k = 0; k < legs.size(); ++k) {
    object_of_leg[legs[k]] = builder.add_object(c.morphism_id(legs[k]));
  }
  // Builder morphism -> (underlying, determining leg).
  std::vector<std::pair<int, int>> parts;
  std::map<std::pair<int, int>, int> index;
  for (int leg : legs) {
    // Slice: leg is the target f′, h runs over arrows into src f′.
    // Coslice: leg is the source f, h runs over arrows out of tgt f.
    const std::vector<int>& hs = under ? c.out(c.tgt(leg)) : c.in(c.src(leg));
    for (int h : hs) {
      const int other = under ? c.compose(h, leg) : c.compose(leg, h);
      const int s = under ? object_of_leg[leg] : object_of_leg[other];
      const int t = under ? object_of_leg[other] : object_of_leg[leg];
      const int k = builder.add_morphism(tuple_id({c.morphism_id(h), c.morphism_id(leg)}), s, t);
      parts.emplace_back(h, leg);
      index.emplace(std::make_pair(h, leg), k);
    }
  }
  for (int leg : legs) {
    const int id = c.identity(under ? c.tgt(leg) : c.src(leg));
    builder.set_identity(object_of_leg[leg], index.at({id, leg}));
  }
  builder.set_compose_fn([&](int g, int f) {
    const int h = c.compose(parts[g].first, parts[f].first);
    // The composite keeps the source of f (coslice) or the target of g (slice).
    return index.at({h, under ? parts[f].second : parts[g].second});
  });
  auto built = builder.build(false);

  SliceCat out;
  out.apex = i;
  const FinCat& s = *built.cat;
  out.leg.assign(s.num_objects(), -1);
  out.object_of_leg.assign(c.num_morphisms(), -1);
  for (int leg : legs) {
    const int x = built.object_index[object_of_leg[leg]];
    out.leg[x] = leg;
    out.object_of_leg[leg] = x;
  }
  out.under.assign(s.num_morphisms(), -1);
  std::vector<bool> marked_bits(s.num_morphisms(), false);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int m = built.morphism_index[k];
    out.under[m] = parts[k].first;
    marked_bits[m] = marked.is_marked(parts[k].first);
    out.lookup.emplace(parts[k], m);
  }
  out.cat = MarkedFinCat(built.cat, Marking(marked_bits));
  std::vector<int> om(s.num_objects());
  for (int x = 0; x < s.num_objects(); ++x) {
    om[x] = under ? c.tgt(out.leg[x]) : c.src(out.leg[x]);
  }
  out.forget = map_functor(built.cat, marked.cat_ptr(), om, out.under);
  return out;
}

}  // namespace

SliceCat slice(const MarkedFinCat& base, int i) { return build_slice(base, i, false); }
SliceCat coslice(const MarkedFinCat& base, int i) { return build_slice(base, i, true); }

CatDiagram slice_diagram(const MarkedFinCat& base) {
  const FinCat& c = base.cat();
  std::vector<SliceCat> slices;
  CatDiagram f{base, {}, {}, {}};
  for (int i = 0; i < c.num_objects(); ++i) {
    slices.push_back(slice(base, i));
    f.fibers.push_back(slices.back().cat.cat_ptr());
    f.fiber_markings.push_back(slices.back().cat.marking());
  }
  for (int a = 0; a < c.num_morphisms(); ++a) {
    const SliceCat& from = slices[c.src(a)];
    const SliceCat& to = slices[c.tgt(a)];
    const FinCat& s = from.cat.cat();
    std::vector<int> om(s.num_objects()), mm(s.num_morphisms());
    for (int x = 0; x < s.num_objects(); ++x) {
      om[x] = to.object_of_leg[c.compose(a, from.leg[x])];
    }
    for (int m = 0; m < s.num_morphisms(); ++m) {
      const int target_leg = from.leg[s.tgt(m)];
      mm[m] = to.lookup.at({from.under[m], c.compose(a, target_leg)});
    }
    f.transitions.push_back(map_functor(f.fibers[c.src(a)], f.fibers[c.tgt(a)], om, mm));
  }
  return f;
}

CatDiagram coslice_diagram(const MarkedFinCat& base) {
  const FinCat& c = base.cat();
  MarkedFinCat op = opposite(base);
  std::vector<SliceCat> coslices;
  CatDiagram f{op, {}, {}, {}};
  for (int i = 0; i < c.num_objects(); ++i) {
    coslices.push_back(coslice(base, i));
    f.fibers.push_back(coslices.back().cat.cat_ptr());
    f.fiber_markings.push_back(coslices.back().cat.marking());
  }
  // b: t → t′ in I is t′ → t in I^op and acts I_{t′/} → I_{t/} by −∘b.
  for (int b = 0; b < c.num_morphisms(); ++b) {
    const SliceCat& from = coslices[c.tgt(b)];
    const SliceCat& to = coslices[c.src(b)];
    const FinCat& s = from.cat.cat();
    std::vector<int> om(s.num_objects()), mm(s.num_morphisms());
    for (int x = 0; x < s.num_objects(); ++x) {
      om[x] = to.object_of_leg[c.compose(from.leg[x], b)];
    }
    for (int m = 0; m < s.num_morphisms(); ++m) {
      const int source_leg = from.leg[s.src(m)];
      mm[m] = to.lookup.at({from.under[m], c.compose(source_leg, b)});
    }
    f.transitions.push_back(map_functor(f.fibers[c.tgt(b)], f.fibers[c.src(b)], om, mm));
  }
  return f;
}

std::string functor_id(const FinCat& c, const FinCat& d,
                       const std::vector<int>& object_map,
                       const std::vector<int>& morphism_map) {
  std::string out = "{";
  for (int x = 0; x < c.num_objects(); ++x) {
    if (x) out += ',';
    out += c.object_id(x);
    out += ':';
    out += d.object_id(object_map[x]);
  }
  out += ';';
  bool first = true;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    if (!first) out += ',';
    first = false;
    out += c.morphism_id(m);
    out += ':';
    out += d.morphism_id(morphism_map[m]);
  }
  out += '}';
  return out;
}

Functor FunctorCat::functor(int object) const {
  return Functor{dom, cod, object_maps[object], morphism_maps[object]};
}

NatTrans FunctorCat::transformation(int morphism) const {
  return NatTrans{functor(cat->src(morphism)), functor(cat->tgt(morphism)),
                  components[morphism]};
}

std::optional<int> FunctorCat::find_functor(const std::vector<int>& morphism_map) const {
  auto it = functor_lookup.find(morphism_map);
  if (it == functor_lookup.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FunctorCat::find_transformation(int source, int target,
                                                   const std::vector<int>& comps) const {
  std::vector<int> key;
  key.reserve(comps.size() + 2);
  key.push_back(source);
  key.push_back(target);
  key.insert(key.end(), comps.begin(), comps.end());
  auto it = transformation_lookup.find(key);
  if (it == transformation_lookup.end()) return std::nullopt;
  return it->second;
}

FunctorCat functor_category(const CatPtr& c, const CatPtr& d, const Bounds& bounds,
                            const FunctorConstraints& constraints,
                            const ComponentFilter& filter) {
  struct Found {
    std::string id;
    std::vector<int> objects;
    std::vector<int> morphisms;
  };
  std::vector<Found> found;
  for_each_functor(*c, *d, constraints,
                   [&](const std::vector<int>& om, const std::vector<int>& mm) {
                     found.push_back({functor_id(*c, *d, om, mm), om, mm});
                     check_size(found.size(), bounds.max_objects,
                                "functor category objects");
                     return true;
                   });
  std::sort(found.begin(), found.end(),
            [](const Found& a, const Found& b) { return a.id < b.id; });

  FunctorCat out;
  out.dom = c;
  out.cod = d;
  CatBuilder builder;
  for (std::size_t k = 0; k < found.size(); ++k) {
    builder.add_object(found[k].id);
    out.object_maps.push_back(found[k].objects);
    out.morphism_maps.push_back(found[k].morphisms);
    out.functor_lookup.emplace(found[k].morphisms, static_cast<int>(k));
  }

  const int n = c->num_objects();
  std::vector<std::vector<int>> comps;
  std::map<std::vector<int>, int> index;  // [src, tgt, comps…] -> builder morphism
  std::vector<int> key;
  for (std::size_t s = 0; s < found.size(); ++s) {
    for (std::size_t t = 0; t < found.size(); ++t) {
      for_each_nat_trans(
          *c, *d, found[s].objects, found[s].morphisms, found[t].objects,
          found[t].morphisms, filter, [&](const std::vector<int>& cs) {
            std::vector<std::string> names;
            names.reserve(n);
            for (int a : cs) names.push_back(d->morphism_id(a));
            const int k = builder.add_morphism(
                std::to_string(s) + "=>" + std::to_string(t) + tuple_id(names),
                static_cast<int>(s), static_cast<int>(t));
            comps.push_back(cs);
            key.assign({static_cast<int>(s), static_cast<int>(t)});
            key.insert(key.end(), cs.begin(), cs.end());
            index.emplace(key, k);
            check_size(comps.size(), bounds.max_morphisms, "functor category morphisms");
            return true;
          });
    }
  }
  for (std::size_t s = 0; s < found.size(); ++s) {
    key.assign({static_cast<int>(s), static_cast<int>(s)});
    for (int x = 0; x < n; ++x) key.push_back(d->identity(found[s].objects[x]));
    auto it = index.find(key);
    if (it == index.end()) {
      throw Error(ErrorKind::kInvalidFunctor,
                  "component filter rejects the identity of " + found[s].id);
    }
    builder.set_identity(static_cast<int>(s), it->second);
  }
  std::vector<int> sources(comps.size()), targets(comps.size());
  for (const auto& [k, m] : index) {
    sources[m] = k[0];
    targets[m] = k[1];
  }
  builder.set_compose_fn([&](int g, int f) {
    std::vector<int> kk{sources[f], targets[g]};
    for (int x = 0; x < n; ++x) kk.push_back(d->compose(comps[g][x], comps[f][x]));
    auto it = index.find(kk);
    return it == index.end() ? -1 : it->second;
  });
  auto built = builder.build(false);
  out.cat = built.cat;
  out.components.resize(comps.size());
  for (auto& [k, m] : index) {
    const int final_m = built.morphism_index[m];
    out.components[final_m] = comps[m];
    out.transformation_lookup.emplace(k, final_m);
  }
  return out;
}

FunctorCat marked_functor_category(const MarkedFinCat& c, const MarkedFinCat& d,
                                   const Bounds& bounds) {
  FunctorConstraints k;
  k.morphism_allowed = [&](int m, int n) { return !c.is_marked(m) || d.is_marked(n); };
  return functor_category(c.cat_ptr(), d.cat_ptr(), bounds, k);
}

Functor whisker(const FunctorCat& from, const FunctorCat& to, const Functor* pre,
                const Functor* post) {
  const FinCat& x2 = *to.dom;
  const int nx = x2.num_objects();
  auto pre_obj = [&](int x) { return pre ? pre->on_object(x) : x; };
  auto pre_mor = [&](int m) { return pre ? (*pre)(m) : m; };
  auto post_mor = [&](int n) { return post ? (*post)(n) : n; };

  const FinCat& src = *from.cat;
  Functor w{from.cat, to.cat, std::vector<int>(src.num_objects()),
            std::vector<int>(src.num_morphisms())};
  std::vector<int> mm(x2.num_morphisms());
  for (int g = 0; g < src.num_objects(); ++g) {
    const auto& gm = from.morphism_maps[g];
    for (int m = 0; m < x2.num_morphisms(); ++m) mm[m] = post_mor(gm[pre_mor(m)]);
    auto hit = to.find_functor(mm);
    if (!hit) {
      throw Error(ErrorKind::kInvalidDiagram,
                  "whiskering " + src.object_id(g) + " leaves the target functor category");
    }
    w.object_map[g] = *hit;
  }
  std::vector<int> comps(nx);
  for (int a = 0; a < src.num_morphisms(); ++a) {
    const auto& ac = from.components[a];
    for (int x = 0; x < nx; ++x) comps[x] = post_mor(ac[pre_obj(x)]);
    auto hit = to.find_transformation(w.object_map[src.src(a)], w.object_map[src.tgt(a)], comps);
    if (!hit) {
      throw Error(ErrorKind::kInvalidDiagram,
                  "whiskering " + src.morphism_id(a) + " leaves the target functor category");
    }
    w.morphism_map[a] = *hit;
  }
  return w;
}

}  // namespace laxcat
