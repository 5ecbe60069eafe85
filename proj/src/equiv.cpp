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

#include "laxcat/equiv.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "laxcat/search.hpp"

namespace laxcat {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kIsomorphic:
      return "isomorphic";
    case Verdict::kEquivalent:
      return "equivalent";
    case Verdict::kInequivalent:
      return "inequivalent";
  }
  return "?";
}

namespace {

std::vector<int> representatives(const FinCat& c) {
  std::vector<int> rep(c.num_objects(), -1);
  for (int x = 0; x < c.num_objects(); ++x) {
    if (rep[x] >= 0) continue;
    rep[x] = x;
    for (int y = x + 1; y < c.num_objects(); ++y) {
      if (rep[y] >= 0) continue;
      for (int m : c.hom(x, y)) {
        if (is_iso(c, m)) {
          rep[y] = x;
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace

int iso_class_count(const FinCat& c) {
  std::vector<int> rep = representatives(c);
  int n = 0;
  for (int x = 0; x < c.num_objects(); ++x) n += rep[x] == x;
  return n;
}

Skeleton skeleton(const CatPtr& c) {
  Skeleton s;
  s.representative = representatives(*c);
  std::vector<int> reps;
  for (int x = 0; x < c->num_objects(); ++x) {
    if (s.representative[x] == x) reps.push_back(x);
  }
  Subcategory sub = full_subcategory(*c, reps);
  s.cat = sub.cat;
  s.inclusion = Functor{sub.cat, c, sub.parent_object, sub.parent_morphism};

  // φ_x: x → rep(x), an isomorphism; identity on representatives.
  std::vector<int> phi(c->num_objects()), phi_inv(c->num_objects());
  for (int x = 0; x < c->num_objects(); ++x) {
    const int r = s.representative[x];
    if (r == x) {
      phi[x] = phi_inv[x] = c->identity(x);
      continue;
    }
    for (int m : c->hom(x, r)) {
      if (auto inv = inverse_of(*c, m)) {
        phi[x] = m;
        phi_inv[x] = *inv;
        break;
      }
    }
  }
  s.retraction = Functor{c, sub.cat, {}, {}};
  for (int x = 0; x < c->num_objects(); ++x) {
    s.retraction.object_map.push_back(sub.object_of[s.representative[x]]);
  }
  for (int f = 0; f < c->num_morphisms(); ++f) {
    const int g = c->compose(phi[c->tgt(f)], c->compose(f, phi_inv[c->src(f)]));
    s.retraction.morphism_map.push_back(sub.morphism_of[g]);
  }
  return s;
}

bool is_full(const Functor& f) {
  const FinCat& c = *f.dom;
  const FinCat& d = *f.cod;
  for (int x = 0; x < c.num_objects(); ++x) {
    for (int y = 0; y < c.num_objects(); ++y) {
      std::set<int> image;
      for (int m : c.hom(x, y)) image.insert(f(m));
      if (image.size() != d.hom(f.on_object(x), f.on_object(y)).size()) return false;
    }
  }
  return true;
}

bool is_faithful(const Functor& f) {
  const FinCat& c = *f.dom;
  for (int x = 0; x < c.num_objects(); ++x) {
    for (int y = 0; y < c.num_objects(); ++y) {
      std::set<int> image;
      for (int m : c.hom(x, y)) {
        if (!image.insert(f(m)).second) return false;
      }
    }
  }
  return true;
}

bool is_fully_faithful(const Functor& f) { return is_full(f) && is_faithful(f); }

bool is_essentially_surjective(const Functor& f) {
  const FinCat& d = *f.cod;
  std::vector<int> rep = representatives(d);
  std::vector<bool> hit(d.num_objects(), false);
  for (int y : f.object_map) hit[rep[y]] = true;
  for (int y = 0; y < d.num_objects(); ++y) {
    if (!hit[rep[y]]) return false;
  }
  return true;
}

bool is_equivalence_functor(const Functor& f) {
  return check_functor(f).ok() && is_fully_faithful(f) && is_essentially_surjective(f);
}

namespace {

// Everything the isomorphism search needs about one side.
struct Side {
  const FinCat* c;
  const Marking* marking;  // may be null
  std::vector<int> color;
  std::vector<int> morphism_color;

  bool marked(int m) const { return marking && marking->contains(m); }
  int marked_count(int x, int y) const {
    if (!marking) return 0;
    int n = 0;
    for (int m : c->hom(x, y)) n += marking->contains(m);
    return n;
  }
};

// Sorted nonzero hom sizes (with marks); the zeros are implied by the
// object count, which is compared separately.
std::vector<int> hom_multiset(const Side& s) {
  std::vector<int> out;
  const FinCat& c = *s.c;
  std::set<std::pair<int, int>> pairs;
  for (int m = 0; m < c.num_morphisms(); ++m) pairs.insert({c.src(m), c.tgt(m)});
  for (auto [x, y] : pairs) {
    out.push_back(static_cast<int>(c.hom(x, y).size()) * 1024 + s.marked_count(x, y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> endo_multiset(const FinCat& c) {
  std::vector<int> out;
  for (int x = 0; x < c.num_objects(); ++x) out.push_back(static_cast<int>(c.hom(x, x).size()));
  std::sort(out.begin(), out.end());
  return out;
}

// Number of distinct powers m, m², … of an endomorphism.
int power_orbit(const FinCat& c, int m) {
  std::set<int> seen;
  int p = m;
  while (seen.insert(p).second) p = c.compose(m, p);
  return static_cast<int>(seen.size());
}

std::vector<int> histogram(const std::vector<int>& colors) {
  std::vector<int> h = colors;
  std::sort(h.begin(), h.end());
  return h;
}

// Joint colour refinement of the objects of both sides. Returns false if
// the colour histograms ever disagree.
bool refine(Side& a, Side& b, int& rounds) {
  std::map<std::vector<int>, int> dict;
  auto initial = [&](const Side& s, int x) {
    const FinCat& c = *s.c;
    std::vector<int> sig{static_cast<int>(c.hom(x, x).size()), s.marked_count(x, x)};
    int isos = 0, idempotents = 0;
    for (int m : c.hom(x, x)) {
      isos += is_iso(c, m);
      idempotents += c.compose(m, m) == m;
    }
    sig.push_back(isos);
    sig.push_back(idempotents);
    sig.push_back(static_cast<int>(c.out(x).size()));
    sig.push_back(static_cast<int>(c.in(x).size()));
    return sig;
  };
  auto assign = [&](Side& s, auto&& signature) {
    std::vector<int> next(s.c->num_objects());
    for (int x = 0; x < s.c->num_objects(); ++x) {
      auto sig = signature(s, x);
      auto it = dict.emplace(std::move(sig), static_cast<int>(dict.size())).first;
      next[x] = it->second;
    }
    return next;
  };
  a.color = assign(a, initial);
  b.color = assign(b, initial);
  rounds = 0;
  if (histogram(a.color) != histogram(b.color)) return false;
  auto classes = [](const std::vector<int>& col) {
    return std::set<int>(col.begin(), col.end()).size();
  };
  std::size_t before = classes(a.color);
  while (true) {
    ++rounds;
    auto refined = [&](const Side& s, int x) {
      const FinCat& c = *s.c;
      // Non-neighbours contribute nothing the histogram does not fix.
      std::set<int> adjacent;
      for (int m : c.out(x)) adjacent.insert(c.tgt(m));
      for (int m : c.in(x)) adjacent.insert(c.src(m));
      adjacent.erase(x);
      std::vector<std::vector<int>> nb;
      for (int y : adjacent) {
        nb.push_back({s.color[y], static_cast<int>(c.hom(x, y).size()),
                      static_cast<int>(c.hom(y, x).size()), s.marked_count(x, y),
                      s.marked_count(y, x)});
      }
      std::sort(nb.begin(), nb.end());
      std::vector<int> sig{-1, s.color[x]};
      for (auto& v : nb) sig.insert(sig.end(), v.begin(), v.end());
      return sig;
    };
    dict.clear();
    std::vector<int> na = assign(a, refined);
    std::vector<int> nbv = assign(b, refined);
    a.color = std::move(na);
    b.color = std::move(nbv);
    if (histogram(a.color) != histogram(b.color)) return false;
    const std::size_t after = classes(a.color);
    if (after == before) break;
    before = after;
  }
  return true;
}

void colour_morphisms(Side& a, Side& b) {
  std::map<std::vector<int>, int> dict;
  for (Side* s : {&a, &b}) {
    const FinCat& c = *s->c;
    s->morphism_color.resize(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
      std::vector<int> sig{s->color[c.src(m)], s->color[c.tgt(m)], c.is_identity(m),
                           is_iso(c, m), s->marked(m)};
      if (c.src(m) == c.tgt(m)) sig.push_back(power_orbit(c, m));
      s->morphism_color[m] =
          dict.emplace(std::move(sig), static_cast<int>(dict.size())).first->second;
    }
  }
}

EquivalenceVerdict isomorphism_search(const CatPtr& cp, const CatPtr& dp, const Marking* mc,
                                      const Marking* md, std::size_t budget_nodes) {
  const FinCat& c = *cp;
  const FinCat& d = *dp;
  EquivalenceVerdict v;
  auto fail = [&](std::string why) {
    v.verdict = Verdict::kInequivalent;
    v.certificate = std::move(why);
    return v;
  };
  if (c.num_objects() != d.num_objects()) {
    return fail("object counts differ: " + std::to_string(c.num_objects()) + " vs " +
                std::to_string(d.num_objects()));
  }
  if (c.num_morphisms() != d.num_morphisms()) {
    return fail("morphism counts differ: " + std::to_string(c.num_morphisms()) + " vs " +
                std::to_string(d.num_morphisms()));
  }
  Side a{&c, mc, {}, {}};
  Side b{&d, md, {}, {}};
  if (mc && md && mc->count() != md->count()) {
    return fail("marked morphism counts differ: " + std::to_string(mc->count()) + " vs " +
                std::to_string(md->count()));
  }
  if (endo_multiset(c) != endo_multiset(d)) return fail("endomorphism monoid sizes differ");
  if (hom_multiset(a) != hom_multiset(b)) return fail("hom-size multisets differ");
  int rounds = 0;
  if (!refine(a, b, rounds)) {
    return fail("object colour classes differ after " + std::to_string(rounds) +
                " refinement rounds");
  }
  colour_morphisms(a, b);
  if (histogram(a.morphism_color) != histogram(b.morphism_color)) {
    return fail("morphism invariant classes differ");
  }

  const int n = c.num_objects();
  std::vector<int> order(n);
  for (int x = 0; x < n; ++x) order[x] = x;
  std::map<int, int> class_size;
  for (int col : a.color) ++class_size[col];
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return class_size[a.color[x]] < class_size[a.color[y]];
  });

  SearchBudget budget(budget_nodes);
  std::vector<int> om(n, -1);
  std::vector<bool> used(n, false);
  std::optional<Functor> found;
  FunctorConstraints k;
  k.injective = true;
  k.morphism_allowed = [&](int m, int t) { return a.morphism_color[m] == b.morphism_color[t]; };

  // Objects joined by a morphism in either direction.
  auto neighbours = [](const FinCat& cat) {
    std::vector<std::vector<int>> nb(cat.num_objects());
    for (int m = 0; m < cat.num_morphisms(); ++m) {
      if (cat.src(m) == cat.tgt(m)) continue;
      nb[cat.src(m)].push_back(cat.tgt(m));
      nb[cat.tgt(m)].push_back(cat.src(m));
    }
    for (auto& v : nb) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return nb;
  };
  const auto nb_c = neighbours(c);
  const auto nb_d = neighbours(d);
  // Hom sizes and marks against the placed objects agree. Only neighbours
  // can differ from zero, so count those on both sides.
  auto fits = [&](int x, int y) {
    int placed = 0;
    for (int x2 : nb_c[x]) {
      const int y2 = om[x2];
      if (y2 < 0) continue;
      ++placed;
      if (c.hom(x, x2).size() != d.hom(y, y2).size() || c.hom(x2, x).size() != d.hom(y2, y).size() ||
          a.marked_count(x, x2) != b.marked_count(y, y2) || a.marked_count(x2, x) != b.marked_count(y2, y)) {
        return false;
      }
    }
    int placed_d = 0;
    for (int y2 : nb_d[y]) placed_d += used[y2];
    return placed == placed_d;
  };

  // Iterative backtracking; depth can reach the object count.
  std::vector<int> next(n + 1, 0);
  int depth = 0;
  bool entering = true;
  while (true) {
    if (entering) {
      budget.spend();
      if (depth == n) {
        k.fixed_objects = om;
        for_each_functor(c, d, k,
                         [&](const std::vector<int>& fo, const std::vector<int>& fm) {
                           found = Functor{cp, dp, fo, fm};
                           return false;
                         },
                         &budget);
        if (found || depth == 0) break;
        --depth;
        entering = false;
        continue;
      }
      next[depth] = 0;
    }
    const int x = order[depth];
    if (om[x] >= 0) {
      used[om[x]] = false;
      om[x] = -1;
    }
    int y = next[depth];
    while (y < n && (used[y] || a.color[x] != b.color[y] || !fits(x, y))) ++y;
    if (y < n) {
      om[x] = y;
      used[y] = true;
      next[depth] = y + 1;
      ++depth;
      entering = true;
    } else {
      if (depth == 0) break;
      --depth;
      entering = false;
    }
  }
  v.nodes = budget.used();
  if (!found) {
    return fail("exhaustive search found no isomorphism (" + std::to_string(v.nodes) +
                " nodes)");
  }
  v.verdict = Verdict::kIsomorphic;
  Functor inv{dp, cp, std::vector<int>(n), std::vector<int>(c.num_morphisms())};
  for (int x = 0; x < n; ++x) inv.object_map[found->object_map[x]] = x;
  for (int m = 0; m < c.num_morphisms(); ++m) inv.morphism_map[found->morphism_map[m]] = m;
  v.witness = std::move(found);
  v.inverse = std::move(inv);
  return v;
}

}  // namespace

EquivalenceVerdict is_isomorphic(const CatPtr& c, const CatPtr& d, std::size_t budget) {
  return isomorphism_search(c, d, nullptr, nullptr, budget);
}

EquivalenceVerdict is_isomorphic(const MarkedFinCat& c, const MarkedFinCat& d,
                                 std::size_t budget) {
  return isomorphism_search(c.cat_ptr(), d.cat_ptr(), &c.marking(), &d.marking(), budget);
}

EquivalenceVerdict is_equivalent(const CatPtr& c, const CatPtr& d, std::size_t budget) {
  Skeleton sc = skeleton(c);
  Skeleton sd = skeleton(d);
  EquivalenceVerdict v = is_isomorphic(sc.cat, sd.cat, budget);
  if (!v.positive()) {
    v.certificate = "skeletons are not isomorphic: " + v.certificate;
    return v;
  }
  v.verdict = Verdict::kEquivalent;
  v.witness = compose(sd.inclusion, compose(*v.witness, sc.retraction));
  v.inverse = compose(sc.inclusion, compose(*v.inverse, sd.retraction));
  return v;
}

}  // namespace laxcat
