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

#include "laxcat/localization.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

#include "laxcat/constructions.hpp"
#include "laxcat/equiv.hpp"
#include "laxcat/grothendieck.hpp"
#include "laxcat/limits.hpp"

namespace laxcat {

// --- presentations ----------------------------------------------------------

int PresentedCat::path_target(int src, const std::vector<int>& path) const {
  int at = src;
  for (int a : path) {
    if (a < 0 || a >= static_cast<int>(arrows.size()) || arrows[a].src != at) return -1;
    at = arrows[a].tgt;
  }
  return at;
}

std::string PresentedCat::path_name(int src, const std::vector<int>& path) const {
  if (path.empty()) return identity_ids.empty() ? "id_" + objects[src] : identity_ids[src];
  std::string s;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (!s.empty()) s += '*';
    s += arrows[*it].id;
  }
  return s;
}

ValidationReport PresentedCat::check() const {
  ValidationReport r;
  const int n = static_cast<int>(objects.size());
  std::set<std::string> seen(objects.begin(), objects.end());
  if (static_cast<int>(seen.size()) != n) r.add("duplicate object id");
  std::set<std::string> names;
  for (const Arrow& a : arrows) {
    if (a.src < 0 || a.src >= n || a.tgt < 0 || a.tgt >= n) r.add("arrow " + a.id + " has an unknown endpoint");
    if (!names.insert(a.id).second) r.add("duplicate arrow id " + a.id);
  }
  if (!r.ok()) return r;
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const Relation& rel = relations[k];
    if (rel.src < 0 || rel.src >= n) {
      r.add("relation " + std::to_string(k) + " has an unknown source");
      continue;
    }
    int l = path_target(rel.src, rel.lhs);
    int t = path_target(rel.src, rel.rhs);
    if (l < 0 || t < 0) {
      r.add("relation " + std::to_string(k) + " has a non-composable path");
    } else if (l != t) {
      r.add("relation " + std::to_string(k) + " relates non-parallel paths " +
            path_name(rel.src, rel.lhs) + " and " + path_name(rel.src, rel.rhs));
    }
  }
  if (!identity_ids.empty() && static_cast<int>(identity_ids.size()) != n) {
    r.add("identity_ids must name one identity per object");
  }
  if (bounds.word_bound < 1) r.add("word bound must be positive");
  if (bounds.morphism_bound < 1) r.add("morphism bound must be positive");
  return r;
}

namespace {

std::string fresh_inverse_name(const PresentedCat& p, const std::string& id) {
  std::unordered_set<std::string> taken;
  for (const auto& a : p.arrows) taken.insert(a.id);
  std::string name = id + "^-1";
  while (taken.count(name)) name += "'";
  return name;
}

}  // namespace

PresentedCat adjoin_inverses(const PresentedCat& p, const std::vector<int>& generators) {
  PresentedCat out = p;
  for (int g : generators) {
    const auto& a = p.arrows[g];
    int inv = static_cast<int>(out.arrows.size());
    out.arrows.push_back({fresh_inverse_name(out, a.id), a.tgt, a.src});
    out.relations.push_back({a.src, {g, inv}, {}});
    out.relations.push_back({a.tgt, {inv, g}, {}});
  }
  return out;
}

PresentedCat present(const MarkedFinCat& mc, const LocalizationBounds& bounds) {
  const FinCat& c = mc.cat();
  PresentedCat p;
  p.bounds = bounds;
  for (int x = 0; x < c.num_objects(); ++x) {
    p.objects.push_back(c.object_id(x));
    p.identity_ids.push_back(c.morphism_id(c.identity(x)));
  }
  std::vector<int> gen(c.num_morphisms(), -1);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    gen[m] = static_cast<int>(p.arrows.size());
    p.arrows.push_back({c.morphism_id(m), c.src(m), c.tgt(m)});
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (gen[f] < 0) continue;
    for (int g : c.out(c.tgt(f))) {
      if (gen[g] < 0) continue;
      int h = c.compose(g, f);
      std::vector<int> rhs;
      if (gen[h] >= 0) rhs.push_back(gen[h]);
      p.relations.push_back({c.src(f), {gen[f], gen[g]}, rhs});
    }
  }
  std::vector<int> marked;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (gen[m] >= 0 && mc.is_marked(m)) marked.push_back(gen[m]);
  }
  return adjoin_inverses(p, marked);
}

// --- solver -----------------------------------------------------------------

std::string BoundReport::message() const {
  std::string what = kind == ErrorKind::kWordBoundExceeded ? "word bound " : "morphism bound ";
  return what + std::to_string(limit) + " exceeded with " + std::to_string(frontier) +
         " frontier words; smallest offending hom-set " + hom_src + " -> " + hom_tgt + " holds " +
         std::to_string(hom_size) + " words so far";
}

const FinCat& LocalizationResult::require() const {
  if (!cat) {
    throw Error(bound ? bound->kind : ErrorKind::kWordBoundExceeded,
                bound ? bound->message() : "localization did not complete");
  }
  return *cat;
}

namespace {

struct BoundHit {
  BoundReport report;
};

class Enumerator {
 public:
  explicit Enumerator(const PresentedCat& p) : p_(p), ng_(static_cast<int>(p.arrows.size())) {
    const int n = static_cast<int>(p.objects.size());
    gens_from_.resize(n);
    rels_at_.resize(n);
    for (int a = 0; a < ng_; ++a) gens_from_[p.arrows[a].src].push_back(a);
    for (std::size_t k = 0; k < p.relations.size(); ++k) rels_at_[p.relations[k].src].push_back(k);
    for (int x = 0; x < n; ++x) identity_.push_back(add(x, x, 0, {}));
  }

  void run() {
    while (!pending_.empty()) {
      auto [d, e] = *pending_.begin();
      pending_.erase(pending_.begin());
      if (find(e) != e) continue;
      if (d > p_.bounds.word_bound) fail(ErrorKind::kWordBoundExceeded, p_.bounds.word_bound);
      process(e);
    }
  }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  int follow(int e, int a) { return find(table_[find(e)][a]); }

  std::vector<int> live() {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(parent_.size()); ++e) {
      if (find(e) == e) out.push_back(e);
    }
    return out;
  }

  std::size_t defined() const { return parent_.size(); }
  int src(int e) const { return src_[e]; }
  int tgt(int e) const { return tgt_[e]; }
  const std::vector<int>& word(int e) const { return word_[e]; }
  int identity(int x) const { return identity_[x]; }

 private:
  int add(int s, int t, int depth, std::vector<int> word) {
    int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    src_.push_back(s);
    tgt_.push_back(t);
    depth_.push_back(depth);
    word_.push_back(std::move(word));
    table_.emplace_back(ng_, -1);
    pending_.insert({depth, id});
    if (++live_ > p_.bounds.morphism_bound) fail(ErrorKind::kSizeBoundExceeded, p_.bounds.morphism_bound);
    return id;
  }

  int define(int e, int a) {
    std::vector<int> w = word_[e];
    w.push_back(a);
    int n = add(src_[e], p_.arrows[a].tgt, depth_[e] + 1, std::move(w));
    table_[e][a] = n;
    return n;
  }

  int trace(int e, const std::vector<int>& path) {
    for (int a : path) {
      e = find(e);
      if (table_[e][a] < 0) define(e, a);
      e = find(table_[e][a]);
    }
    return find(e);
  }

  void process(int e) {
    for (int a : gens_from_[tgt_[e]]) {
      if (find(e) != e) return;
      if (table_[e][a] < 0) define(e, a);
    }
    for (std::size_t k : rels_at_[tgt_[e]]) {
      if (find(e) != e) return;
      const auto& rel = p_.relations[k];
      int l = trace(e, rel.lhs);
      int r = trace(e, rel.rhs);
      coincide(l, r);
    }
  }

  void coincide(int a, int b) {
    std::deque<std::pair<int, int>> queue{{a, b}};
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (std::make_pair(depth_[y], y) < std::make_pair(depth_[x], x)) std::swap(x, y);
      parent_[y] = x;  // y dies
      --live_;
      for (int g = 0; g < ng_; ++g) {
        int d = table_[y][g];
        if (d < 0) continue;
        int k = table_[x][g];
        if (k < 0) {
          table_[x][g] = d;
        } else {
          queue.emplace_back(k, d);
        }
      }
    }
  }

  [[noreturn]] void fail(ErrorKind kind, std::size_t limit) {
    BoundReport rep;
    rep.kind = kind;
    rep.limit = limit;
    std::map<std::pair<int, int>, std::size_t> hom_sizes;
    std::set<std::pair<int, int>> offending;
    for (int e : live()) {
      hom_sizes[{src_[e], tgt_[e]}]++;
      bool beyond = kind == ErrorKind::kWordBoundExceeded ? depth_[e] > p_.bounds.word_bound
                                                          : pending_.count({depth_[e], e}) > 0;
      if (beyond) {
        ++rep.frontier;
        offending.insert({src_[e], tgt_[e]});
      }
    }
    std::pair<std::size_t, std::pair<int, int>> best{static_cast<std::size_t>(-1), {0, 0}};
    for (const auto& h : offending) best = std::min(best, {hom_sizes[h], h});
    if (!offending.empty()) {
      rep.hom_src = p_.objects[best.second.first];
      rep.hom_tgt = p_.objects[best.second.second];
      rep.hom_size = best.first;
    }
    throw BoundHit{rep};
  }

  const PresentedCat& p_;
  int ng_;
  std::vector<std::vector<int>> gens_from_;
  std::vector<std::vector<std::size_t>> rels_at_;
  std::vector<int> parent_, src_, tgt_, depth_, identity_;
  std::vector<std::vector<int>> word_;
  std::vector<std::vector<int>> table_;
  std::set<std::pair<int, int>> pending_;  // (depth, element)
  std::size_t live_ = 0;
};

}  // namespace

LocalizationResult solve_presentation(const PresentedCat& p) {
  ValidationReport report = p.check();
  if (!report.ok()) throw Error(ErrorKind::kParseError, "invalid presentation: " + report.summary());
  LocalizationResult out;
  Enumerator en(p);
  try {
    en.run();
  } catch (const BoundHit& hit) {
    out.bound = hit.report;
    out.words_defined = en.defined();
    return out;
  }
  out.words_defined = en.defined();

  CatBuilder b;
  for (const auto& o : p.objects) b.add_object(o);
  std::vector<int> elems = en.live();
  std::vector<int> builder_of(en.defined(), -1);
  for (std::size_t k = 0; k < elems.size(); ++k) {
    int e = elems[k];
    builder_of[e] = b.add_morphism(p.path_name(en.src(e), en.word(e)), en.src(e), en.tgt(e));
    if (en.word(e).empty()) b.set_identity(en.src(e), builder_of[e]);
  }
  b.set_compose_fn([&](int g, int f) {
    int e = elems[f];
    for (int a : en.word(elems[g])) e = en.follow(e, a);
    return builder_of[e];
  });
  CatBuilder::Built built = b.build();
  out.cat = built.cat;
  for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a) {
    int e = en.follow(en.identity(p.arrows[a].src), a);
    out.generator_image.push_back(built.morphism_index[builder_of[e]]);
  }
  return out;
}

LocalizationResult localize(const MarkedFinCat& c, const LocalizationBounds& bounds) {
  PresentedCat p = present(c, bounds);
  LocalizationResult out = solve_presentation(p);
  if (!out.completed()) return out;
  const FinCat& src = c.cat();
  Functor q{c.cat_ptr(), out.cat, {}, {}};
  for (int x = 0; x < src.num_objects(); ++x) {
    q.object_map.push_back(out.cat->object_index(src.object_id(x)));
  }
  int g = 0;
  for (int m = 0; m < src.num_morphisms(); ++m) {
    if (src.is_identity(m)) {
      q.morphism_map.push_back(out.cat->identity(q.object_map[src.src(m)]));
    } else {
      q.morphism_map.push_back(out.generator_image[g++]);
    }
  }
  ValidationReport r = check_functor(q);
  if (!r.ok()) throw Error(ErrorKind::kInvalidFunctor, "quotient functor: " + r.summary());
  out.quotient = std::move(q);
  return out;
}

LocalizationResult lax_colimit(const CatDiagram& f, const LocalizationBounds& bounds,
                               const Bounds& size) {
  return localize(grothendieck_cocart(f, size).total, bounds);
}

LocalizationResult oplax_colimit(const CatDiagram& f, const LocalizationBounds& bounds,
                                 const Bounds& size) {
  return localize(grothendieck_cart(f, size).total, bounds);
}

// --- probes -----------------------------------------------------------------

std::vector<Probe> probe_suite() {
  return {{"terminal", shapes::terminal()},       {"discrete2", shapes::discrete(2)},
          {"arrow", shapes::walking_arrow()},     {"iso", shapes::walking_iso()},
          {"chain2", shapes::ordinal(2)},         {"parallel", shapes::parallel_pair()},
          {"idempotent", shapes::split_idempotent()}};
}

bool ProbeVerdict::ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const ProbeOutcome& o) { return o.ok; });
}

std::vector<std::string> ProbeVerdict::failing() const {
  std::vector<std::string> out;
  for (const auto& o : outcomes) {
    if (!o.ok) out.push_back(o.probe);
  }
  return out;
}

ProbeVerdict check_localization_up(const MarkedFinCat& c, const CatPtr& cat,
                                   const Functor& quotient, const std::vector<Probe>& probes,
                                   const Bounds& bounds) {
  ProbeVerdict verdict;
  for (const Probe& probe : probes) {
    ProbeOutcome o{probe.name, false, {}};
    FunctorCat a = functor_category(cat, probe.cat, bounds);
    FunctorCat b = marked_functor_category(c, flat_marking(probe.cat), bounds);
    // Precomposition with the quotient.
    Functor pre{a.cat, b.cat, {}, {}};
    const FinCat& src = c.cat();
    for (int g = 0; g < a.cat->num_objects() && o.detail.empty(); ++g) {
      std::vector<int> mm(src.num_morphisms());
      for (int m = 0; m < src.num_morphisms(); ++m) mm[m] = a.morphism_maps[g][quotient(m)];
      auto hit = b.find_functor(mm);
      if (!hit) {
        o.detail = "restriction of " + a.cat->object_id(g) + " does not invert the marking";
      } else {
        pre.object_map.push_back(*hit);
      }
    }
    for (int t = 0; t < a.cat->num_morphisms() && o.detail.empty(); ++t) {
      std::vector<int> comps(src.num_objects());
      for (int x = 0; x < src.num_objects(); ++x) comps[x] = a.components[t][quotient.on_object(x)];
      auto hit = b.find_transformation(pre.object_map[a.cat->src(t)], pre.object_map[a.cat->tgt(t)],
                                       comps);
      if (!hit) {
        o.detail = "restriction of " + a.cat->morphism_id(t) + " is not a transformation";
      } else {
        pre.morphism_map.push_back(*hit);
      }
    }
    if (o.detail.empty()) {
      if (!check_functor(pre).ok()) {
        o.detail = "precomposition is not a functor";
      } else if (!is_essentially_surjective(pre)) {
        o.detail = "precomposition is not essentially surjective";
      } else if (!is_fully_faithful(pre)) {
        o.detail = "precomposition is not fully faithful";
      } else {
        o.ok = true;
      }
    }
    verdict.outcomes.push_back(std::move(o));
  }
  return verdict;
}

ProbeVerdict check_localization_up(const MarkedFinCat& c, const LocalizationResult& l,
                                   const std::vector<Probe>& probes, const Bounds& bounds) {
  l.require();
  if (!l.quotient) throw Error(ErrorKind::kInvalidFunctor, "localization carries no quotient functor");
  return check_localization_up(c, l.cat, *l.quotient, probes, bounds);
}

namespace {

CatDiagram pointwise_opposite(const CatDiagram& f) {
  CatDiagram out{f.base, {}, {}, f.fiber_markings};
  for (const CatPtr& c : f.fibers) out.fibers.push_back(opposite(*c));
  for (int m = 0; m < f.base.cat().num_morphisms(); ++m) {
    const Functor& t = f.transition(m);
    const FinCat& b = f.base.cat();
    out.transitions.push_back(
        Functor{out.fibers[b.src(m)], out.fibers[b.tgt(m)], t.object_map, t.morphism_map});
  }
  return out;
}

}  // namespace

CatPtr colimit_probe_limit(const CatDiagram& f, const CatPtr& probe, const Bounds& bounds) {
  validate_diagram(f);
  const FinCat& c = f.base.cat();
  const FinCat& d = *probe;
  TwistedArrowCat tw = twisted_arrow(f.base.cat_ptr(), bounds);
  const FinCat& t = *tw.cat;
  const int n = t.num_objects();
  CatDiagram cos = coslice_diagram(f.base);
  CatPtr base = opposite(t);

  // Value at s → t: Fun†(I†_{t/} × F(s)♭, D♭), contravariant in Tw(I).
  // The values are never built whole: their transformation sets grow
  // quadratically, while the limit is usually small. Objects of the limit
  // are compatible families of functors; morphisms are compatible families
  // of transformations between two such families.
  std::vector<ProductCat> weights;
  std::vector<std::vector<std::vector<int>>> obj_maps(n), mor_maps(n);
  std::vector<std::map<std::vector<int>, int>> functor_of(n);
  for (int x = 0; x < n; ++x) {
    const int m = tw.base_morphism[x];
    weights.push_back(product_with_index(cos.marked_fiber(c.tgt(m)), flat_marking(f.fibers[c.src(m)])));
    const MarkedFinCat& w = weights.back().cat;
    FunctorConstraints k;
    k.morphism_allowed = [&](int a, int b) { return !w.is_marked(a) || d.is_identity(b); };
    for_each_functor(w.cat(), d, k, [&](const std::vector<int>& om, const std::vector<int>& mm) {
      if (obj_maps[x].size() >= bounds.max_objects) {
        throw Error(ErrorKind::kSizeBoundExceeded, "probe value objects exceed the cap of " +
                                                       std::to_string(bounds.max_objects));
      }
      functor_of[x].emplace(mm, static_cast<int>(obj_maps[x].size()));
      obj_maps[x].push_back(om);
      mor_maps[x].push_back(mm);
      return true;
    });
  }
  // (a, b): x → x′ gives (−∘b) × F(a) on weights, hence restriction from x′
  // to x; pre[k] is that functor.
  std::vector<Functor> pre;
  std::vector<std::vector<int>> restrict_obj(t.num_morphisms());
  for (int k = 0; k < t.num_morphisms(); ++k) {
    const auto [a, b] = tw.morphism_parts[k];
    const int x = t.src(k), y = t.tgt(k);
    pre.push_back(product_functor(weights[x], weights[y], cos.transition(b), f.transition(a)));
    for (const auto& mm : mor_maps[y]) {
      std::vector<int> r;
      for (int e = 0; e < weights[x].cat.cat().num_morphisms(); ++e) r.push_back(mm[pre[k](e)]);
      restrict_obj[k].push_back(functor_of[x].at(r));
    }
  }

  auto sizes_of = [](const auto& per) {
    std::vector<int> out;
    for (const auto& v : per) out.push_back(static_cast<int>(v.size()));
    return out;
  };
  auto actions_of = [](const std::vector<std::vector<int>>& per) {
    std::vector<const std::vector<int>*> out;
    for (const auto& v : per) out.push_back(&v);
    return out;
  };
  std::vector<std::vector<int>> objects;
  for_each_family(*base, sizes_of(obj_maps), actions_of(restrict_obj), [&](const std::vector<int>& fam) {
    objects.push_back(fam);
    return true;
  }, bounds.max_objects);

  // A morphism: source, target, then the components at every x in order.
  std::vector<std::vector<int>> morphisms;
  std::vector<std::vector<std::vector<int>>> trans(n);
  std::vector<std::map<std::vector<int>, int>> trans_of(n);
  std::vector<std::vector<int>> restrict_trans(t.num_morphisms());
  for (int p = 0; p < static_cast<int>(objects.size()); ++p) {
    for (int q = 0; q < static_cast<int>(objects.size()); ++q) {
      for (int x = 0; x < n; ++x) {
        trans[x].clear();
        trans_of[x].clear();
        const int g = objects[p][x], h = objects[q][x];
        for_each_nat_trans(weights[x].cat.cat(), d, obj_maps[x][g], mor_maps[x][g], obj_maps[x][h],
                           mor_maps[x][h], {}, [&](const std::vector<int>& comps) {
                             trans_of[x].emplace(comps, static_cast<int>(trans[x].size()));
                             trans[x].push_back(comps);
                             return true;
                           });
      }
      for (int k = 0; k < t.num_morphisms(); ++k) {
        const int x = t.src(k), y = t.tgt(k);
        restrict_trans[k].clear();
        for (const auto& comps : trans[y]) {
          std::vector<int> r;
          for (int w = 0; w < weights[x].cat.cat().num_objects(); ++w) r.push_back(comps[pre[k].on_object(w)]);
          restrict_trans[k].push_back(trans_of[x].at(r));
        }
      }
      for_each_family(*base, sizes_of(trans), actions_of(restrict_trans), [&](const std::vector<int>& fam) {
        std::vector<int> key{p, q};
        for (int x = 0; x < n; ++x) key.insert(key.end(), trans[x][fam[x]].begin(), trans[x][fam[x]].end());
        morphisms.push_back(std::move(key));
        if (morphisms.size() > bounds.max_morphisms) {
          throw Error(ErrorKind::kSizeBoundExceeded, "probe limit morphisms exceed the cap of " +
                                                         std::to_string(bounds.max_morphisms));
        }
        return true;
      });
    }
  }

  CatBuilder builder;
  for (std::size_t p = 0; p < objects.size(); ++p) builder.add_object("L" + std::to_string(p));
  std::map<std::vector<int>, int> mor_index;
  for (std::size_t k = 0; k < morphisms.size(); ++k) {
    mor_index.emplace(morphisms[k], builder.add_morphism("a" + std::to_string(k), morphisms[k][0], morphisms[k][1]));
  }
  for (int p = 0; p < static_cast<int>(objects.size()); ++p) {
    std::vector<int> key{p, p};
    for (int x = 0; x < n; ++x) {
      for (int y : obj_maps[x][objects[p][x]]) key.push_back(d.identity(y));
    }
    builder.set_identity(p, mor_index.at(key));
  }
  std::vector<int> scratch;
  builder.set_compose_fn([&](int g, int h) {
    const auto& kg = morphisms[g];
    const auto& kh = morphisms[h];
    scratch.assign({kh[0], kg[1]});
    for (std::size_t i = 2; i < kg.size(); ++i) scratch.push_back(d.compose(kg[i], kh[i]));
    return mor_index.at(scratch);
  });
  return builder.build(false).cat;
}

ProbeVerdict probe_check_colimit_theorem(const CatDiagram& f, const std::vector<Probe>& probes,
                                         bool oplax, const Bounds& bounds) {
  FiberedCat e = oplax ? grothendieck_cart(f, bounds) : grothendieck_cocart(f, bounds);
  CatDiagram op = oplax ? pointwise_opposite(f) : CatDiagram{};
  ProbeVerdict verdict;
  for (const Probe& probe : probes) {
    CatPtr left = marked_functor_category(e.total, flat_marking(probe.cat), bounds).cat;
    CatPtr right = oplax ? opposite(*colimit_probe_limit(op, opposite(*probe.cat), bounds))
                         : colimit_probe_limit(f, probe.cat, bounds);
    EquivalenceVerdict v = is_equivalent(left, right);
    ProbeOutcome o{probe.name, v.positive(), v.positive() ? to_string(v.verdict) : v.certificate};
    verdict.outcomes.push_back(std::move(o));
  }
  return verdict;
}

}  // namespace laxcat
