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

#include "laxcat/check.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "laxcat/constructions.hpp"
#include "laxcat/equiv.hpp"
#include "laxcat/grothendieck.hpp"
#include "laxcat/limits.hpp"
#include "laxcat/search.hpp"

namespace laxcat {

// --- set diagram files ------------------------------------------------------

json set_diagram_to_json(const SetDiagram& f) {
  const FinCat& b = *f.base;
  json j;
  j["base"] = category_to_json(b);
  j["sizes"] = json::object();
  for (int i = 0; i < b.num_objects(); ++i) j["sizes"][b.object_id(i)] = f.sizes[i];
  j["action"] = json::object();
  for (int m = 0; m < b.num_morphisms(); ++m) {
    if (!b.is_identity(m)) j["action"][b.morphism_id(m)] = f.action[m];
  }
  return j;
}

SetDiagram set_diagram_from_json(const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key != "base" && key != "sizes" && key != "action") {
      throw Error(ErrorKind::kParseError, "unknown key \"" + key + "\" in set diagram");
    }
  }
  SetDiagram f;
  try {
    f.base = category_from_json(j.at("base")).cat_ptr();
    const FinCat& b = *f.base;
    f.sizes.assign(b.num_objects(), -1);
    for (const auto& [id, n] : j.at("sizes").items()) f.sizes[b.object_index(id)] = n.get<int>();
    f.action.resize(b.num_morphisms());
    for (int m = 0; m < b.num_morphisms(); ++m) {
      if (b.is_identity(m)) {
        f.action[m].resize(std::max(0, f.sizes[b.src(m)]));
        for (int x = 0; x < static_cast<int>(f.action[m].size()); ++x) f.action[m][x] = x;
      }
    }
    for (const auto& [id, map] : j.at("action").items()) {
      f.action[b.morphism_index(id)] = map.get<std::vector<int>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("set diagram: ") + e.what());
  }
  ValidationReport r = check_set_diagram(f);
  if (!r.ok()) throw Error(ErrorKind::kInvalidDiagram, r.summary());
  return f;
}

// --- theorem table ----------------------------------------------------------

const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> names = {
      "thm-lax-lim",      "thm-oplax-lim",   "thm-lax-colim-probe", "thm-oplax-colim-probe",
      "prop-sharp-limit", "ghn-flat",        "cofinality-left",     "cofinality-right",
      "marked-limit",     "pullback-remark", "ff-lemma",            "monotonicity"};
  return names;
}

namespace {

void require_theorem(const std::string& t) {
  const auto& names = theorem_names();
  if (std::find(names.begin(), names.end(), t) == names.end()) {
    throw Error(ErrorKind::kParseError, "unknown theorem " + t);
  }
}

bool is_limit_theorem(const std::string& t) { return t == "thm-lax-lim" || t == "thm-oplax-lim"; }
bool is_probe_theorem(const std::string& t) {
  return t == "thm-lax-colim-probe" || t == "thm-oplax-colim-probe";
}
bool is_cofinality(const std::string& t) { return t == "cofinality-left" || t == "cofinality-right"; }

}  // namespace

int default_count(const std::string& t) {
  require_theorem(t);
  if (is_limit_theorem(t) || is_cofinality(t)) return 200;
  if (is_probe_theorem(t) || t == "pullback-remark") return 100;
  return 50;
}

GenParams default_params(const std::string& t) {
  require_theorem(t);
  GenParams p;
  if (is_limit_theorem(t) || is_cofinality(t)) {
    p.max_objects = 4;
    p.max_morphisms = 14;
    p.fiber_max_objects = 3;
    p.fiber_max_morphisms = 3;
  } else if (is_probe_theorem(t)) {
    // Fun†(∫F, D♭) grows quadratically in the functor count; with three
    // base objects a few percent of instances pass the size cap.
    p.max_objects = 2;
    p.max_morphisms = 4;
    p.fiber_max_objects = 2;
    p.fiber_max_morphisms = 2;
  } else if (t == "prop-sharp-limit") {
    p.fiber_max_objects = 3;
    p.fiber_max_morphisms = 4;
  } else {
    p.max_objects = 3;
    p.max_morphisms = 6;
    p.fiber_max_objects = 3;
    p.fiber_max_morphisms = 3;
  }
  return p;
}

// --- generation -------------------------------------------------------------

namespace {

MarkedFinCat gen_base(const GenParams& p, Rng& rng) {
  return gen_marking(gen_category(p, rng), p, rng);
}

CatDiagram with_fiber_markings(CatDiagram f, const GenParams& p, Rng& rng) {
  f.fiber_markings.clear();
  for (const CatPtr& c : f.fibers) f.fiber_markings.push_back(gen_marking(c, p, rng).marking());
  return f;
}

// A random marked functor c† → d†.
Functor random_marked_functor(const MarkedFinCat& c, const MarkedFinCat& d, Rng& rng) {
  FunctorConstraints k;
  k.morphism_allowed = [&](int m, int n) { return !c.is_marked(m) || d.is_marked(n); };
  std::vector<Functor> all;
  for_each_functor(c.cat(), d.cat(), k, [&](const std::vector<int>& om, const std::vector<int>& mm) {
    all.push_back(Functor{c.cat_ptr(), d.cat_ptr(), om, mm});
    return all.size() < 512;
  });
  if (all.empty()) throw Error(ErrorKind::kGenerationExhausted, "no marked functor");
  return all[rng.below(static_cast<int>(all.size()))];
}

// Random replete subsets closed under the transitions.
std::vector<std::vector<int>> closed_subsets(const CatDiagram& f, Rng& rng) {
  const FinCat& b = f.base.cat();
  std::vector<std::vector<bool>> keep(b.num_objects());
  for (int i = 0; i < b.num_objects(); ++i) {
    keep[i].resize(f.fiber(i).num_objects());
    for (std::size_t x = 0; x < keep[i].size(); ++x) keep[i][x] = rng.chance(0.5);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < b.num_objects(); ++i) {
      const FinCat& c = f.fiber(i);
      for (int m = 0; m < c.num_morphisms(); ++m) {
        if (keep[i][c.src(m)] && !keep[i][c.tgt(m)] && is_iso(c, m)) {
          keep[i][c.tgt(m)] = true;
          changed = true;
        }
      }
    }
    for (int m = 0; m < b.num_morphisms(); ++m) {
      const Functor& t = f.transition(m);
      for (std::size_t x = 0; x < keep[b.src(m)].size(); ++x) {
        int y = t.on_object(static_cast<int>(x));
        if (keep[b.src(m)][x] && !keep[b.tgt(m)][y]) {
          keep[b.tgt(m)][y] = true;
          changed = true;
        }
      }
    }
  }
  std::vector<std::vector<int>> out(b.num_objects());
  for (int i = 0; i < b.num_objects(); ++i) {
    for (std::size_t x = 0; x < keep[i].size(); ++x) {
      if (keep[i][x]) out[i].push_back(static_cast<int>(x));
    }
  }
  return out;
}

}  // namespace

json generate_instance(const std::string& t, const GenParams& p, std::uint64_t instance_seed) {
  require_theorem(t);
  Rng rng(instance_seed);
  json inst;
  if (is_cofinality(t)) {
    CatPtr base = gen_category(p, rng);
    inst["set_diagram"] = set_diagram_to_json(gen_set_diagram(base, p, rng, rng.chance(0.5)));
    return inst;
  }
  if (t == "prop-sharp-limit") {
    CatPtr shape = rng.chance(0.5) ? shapes::walking_arrow() : shapes::cospan();
    inst["diagram"] = diagram_to_json(gen_diagram(sharp_marking(shape), p, rng));
    return inst;
  }
  if (t == "ghn-flat") {
    inst["diagram"] = diagram_to_json(gen_diagram(flat_marking(gen_category(p, rng)), p, rng));
    return inst;
  }
  if (t == "marked-limit") {
    MarkedFinCat base = gen_base(p, rng);
    inst["diagram"] = diagram_to_json(with_fiber_markings(gen_diagram(base, p, rng), p, rng));
    inst["second"] = diagram_to_json(with_fiber_markings(gen_diagram(base, p, rng), p, rng));
    return inst;
  }
  if (t == "pullback-remark") {
    MarkedFinCat j = gen_base(p, rng);
    CatDiagram f = gen_diagram(j, p, rng);
    MarkedFinCat i = gen_base(p, rng);
    Functor u = random_marked_functor(i, j, rng);
    inst["diagram"] = diagram_to_json(f);
    inst["domain"] = category_to_json(i);
    inst["functor"] = functor_to_json(u);
    return inst;
  }
  if (t == "ff-lemma") {
    CatDiagram f = gen_diagram(gen_base(p, rng), p, rng);
    auto subsets = closed_subsets(f, rng);
    inst["diagram"] = diagram_to_json(f);
    inst["subcategories"] = json::object();
    for (int i = 0; i < f.base.cat().num_objects(); ++i) {
      json ids = json::array();
      for (int x : subsets[i]) ids.push_back(f.fiber(i).object_id(x));
      inst["subcategories"][f.base.cat().object_id(i)] = ids;
    }
    return inst;
  }
  if (t == "monotonicity") {
    MarkedFinCat base = gen_base(p, rng);
    CatDiagram f = gen_diagram(base, p, rng);
    std::vector<int> seed = base.marking().members();
    for (int m = 0; m < base.cat().num_morphisms(); ++m) {
      if (rng.chance(0.5)) seed.push_back(m);
    }
    Marking larger = saturate_marking(base.cat(), seed);
    inst["diagram"] = diagram_to_json(f);
    json ids = json::array();
    for (int m : larger.members()) {
      if (!base.cat().is_identity(m)) ids.push_back(base.cat().morphism_id(m));
    }
    inst["larger_marking"] = ids;
    return inst;
  }
  // The four main-theorem checks share plain marked diagrams.
  inst["diagram"] = diagram_to_json(gen_diagram(gen_base(p, rng), p, rng));
  return inst;
}

// --- evaluation -------------------------------------------------------------

namespace {

Evaluation pass() { return {Outcome::kPass, {}}; }
Evaluation fail(std::string why) { return {Outcome::kFail, std::move(why)}; }

std::string size_of(const FinCat& c) {
  return std::to_string(c.num_objects()) + "/" + std::to_string(c.num_morphisms());
}

Evaluation compare(const std::string& what, const CatPtr& a, const CatPtr& b) {
  EquivalenceVerdict v = is_equivalent(a, b);
  if (v.positive()) return pass();
  return fail(what + " (" + size_of(*a) + " vs " + size_of(*b) + "): " + v.certificate);
}

Evaluation eval_limit(const CatDiagram& f, bool oplax, const EvalContext& ctx) {
  LaxLimitResult lim = oplax ? oplax_limit(f, ctx.size) : lax_limit(f, ctx.size);
  FiberedCat e = oplax ? grothendieck_cart(f, ctx.size) : grothendieck_cocart(f, ctx.size);
  FunctorCat secs = marked_sections(e, ctx.size);
  for (const Functor& ev : lim.evaluations) {
    if (!check_functor(ev).ok()) return fail("evaluation is not a functor");
  }
  return compare(oplax ? "oplax limit vs marked cartesian sections" : "lax limit vs marked sections",
                 lim.cat, secs.cat);
}

Evaluation eval_probe(const CatDiagram& f, bool oplax, const EvalContext& ctx) {
  ProbeVerdict pv = probe_check_colimit_theorem(f, ctx.probes, oplax, ctx.size);
  for (const auto& o : pv.outcomes) {
    if (!o.ok) return fail("mapping-out comparison fails on probe " + o.probe + ": " + o.detail);
  }
  FiberedCat e = oplax ? grothendieck_cart(f, ctx.size) : grothendieck_cocart(f, ctx.size);
  LocalizationResult l = localize(e.total, ctx.localization);
  if (l.completed()) {
    ProbeVerdict up = check_localization_up(e.total, l, ctx.probes, ctx.size);
    for (const auto& o : up.outcomes) {
      if (!o.ok) return fail("localization fails on probe " + o.probe + ": " + o.detail);
    }
  }
  return pass();
}

Evaluation eval_sharp(const CatDiagram& f, const EvalContext& ctx) {
  const FinCat& b = f.base.cat();
  CatPtr lax = lax_limit(f, ctx.size).cat;
  CatPtr oplax = oplax_limit(f, ctx.size).cat;
  Evaluation r = compare("lax vs oplax limit over a sharp base", lax, oplax);
  if (r.outcome != Outcome::kPass) return r;
  std::vector<int> arrows;
  for (int m = 0; m < b.num_morphisms(); ++m) {
    if (!b.is_identity(m)) arrows.push_back(m);
  }
  CatPtr oracle;
  if (arrows.size() == 1 && b.src(arrows[0]) != b.tgt(arrows[0])) {
    oracle = f.fibers[b.src(arrows[0])];
  } else if (arrows.size() == 2 && b.tgt(arrows[0]) == b.tgt(arrows[1]) &&
             b.src(arrows[0]) != b.src(arrows[1])) {
    oracle = iso_comma(f.transition(arrows[0]), f.transition(arrows[1]), ctx.size).cat;
  } else {
    return pass();  // no closed-form oracle for this shape
  }
  return compare("sharp lax limit vs pseudo-limit", lax, oracle);
}

Evaluation eval_ghn(const CatDiagram& f, const EvalContext& ctx) {
  FiberedCat e = grothendieck_cocart(f, ctx.size);
  Evaluation r = compare("flat lax limit vs all sections", lax_limit(f, ctx.size).cat,
                         sections(e, false, ctx.size).cat);
  if (r.outcome != Outcome::kPass) return r;
  LocalizationResult l = localize(e.total, ctx.localization);
  if (!l.completed()) return fail("flat lax colimit did not complete: " + l.bound->message());
  if (!(*l.cat == e.total.cat())) return fail("flat lax colimit differs from the Grothendieck construction");
  if (l.quotient->morphism_map != identity_functor(e.total.cat_ptr()).morphism_map) {
    return fail("flat quotient functor is not the identity");
  }
  return pass();
}

Evaluation eval_cofinality(const SetDiagram& f, bool right, const EvalContext& ctx) {
  TwistedArrowCat tw = twisted_arrow(f.base, ctx.size);
  SetDiagram g = precompose(f, tw.to_base);
  const FinCat& t = *tw.cat;
  if (!right) {
    SetColimit cf = set_colimit(f), cg = set_colimit(g);
    if (cf.size != cg.size) {
      return fail("colimit sizes differ: " + std::to_string(cf.size) + " vs " + std::to_string(cg.size));
    }
    std::vector<int> image(cg.size, -1);
    for (int x = 0; x < t.num_objects(); ++x) {
      int s = tw.to_base.on_object(x);
      for (int e = 0; e < g.sizes[x]; ++e) {
        int from = cg.class_of[x][e], to = cf.class_of[s][e];
        if (image[from] >= 0 && image[from] != to) return fail("induced map on colimits is not well defined");
        image[from] = to;
      }
    }
    std::set<int> hit(image.begin(), image.end());
    if (static_cast<int>(hit.size()) != cf.size || hit.count(-1)) {
      return fail("induced map on colimits is not a bijection");
    }
    return pass();
  }
  std::size_t cap = ctx.size.max_morphisms * 16;
  auto lf = set_limit(f, cap), lg = set_limit(g, cap);
  if (lf.size() != lg.size()) {
    return fail("limit sizes differ: " + std::to_string(lf.size()) + " vs " + std::to_string(lg.size()));
  }
  std::set<std::vector<int>> images;
  for (const auto& fam : lf) {
    std::vector<int> pulled(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) pulled[x] = fam[tw.to_base.on_object(x)];
    if (!std::binary_search(lg.begin(), lg.end(), pulled)) return fail("restricted family is not compatible");
    images.insert(pulled);
  }
  if (images.size() != lg.size()) return fail("restriction of limits is not a bijection");
  return pass();
}

struct ProductDiagram {
  CatDiagram diagram;
  std::vector<ProductCat> fibers;
};

ProductDiagram product_diagram(const CatDiagram& f, const CatDiagram& g) {
  const FinCat& b = f.base.cat();
  ProductDiagram out{CatDiagram{f.base, {}, {}, {}}, {}};
  for (int i = 0; i < b.num_objects(); ++i) {
    out.fibers.push_back(product_with_index(f.marked_fiber(i), g.marked_fiber(i)));
    out.diagram.fibers.push_back(out.fibers.back().cat.cat_ptr());
    out.diagram.fiber_markings.push_back(out.fibers.back().cat.marking());
  }
  for (int m = 0; m < b.num_morphisms(); ++m) {
    out.diagram.transitions.push_back(
        product_functor(out.fibers[b.src(m)], out.fibers[b.tgt(m)], f.transition(m), g.transition(m)));
  }
  validate_diagram(out.diagram);
  return out;
}

// Empty when u is an isomorphism of marked categories.
std::string explicit_iso_defect(const Functor& u, const Marking& dom, const Marking& cod) {
  ValidationReport r = check_functor(u);
  if (!r.ok()) return "not a functor: " + r.summary(1);
  const FinCat& c = *u.dom;
  const FinCat& d = *u.cod;
  if (c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms()) {
    return "sizes differ: " + size_of(c) + " vs " + size_of(d);
  }
  std::set<int> objs(u.object_map.begin(), u.object_map.end());
  std::set<int> mors(u.morphism_map.begin(), u.morphism_map.end());
  if (static_cast<int>(objs.size()) != d.num_objects() || static_cast<int>(mors.size()) != d.num_morphisms()) {
    return "not bijective";
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (dom.contains(m) != cod.contains(u(m))) return "marking differs at " + c.morphism_id(m);
  }
  return {};
}

// The canonical comparison lim(F × G) → lim F × lim G.
Functor canonical_split(const MarkedCatLimit& lfg, const ProductDiagram& pd, const MarkedCatLimit& lf,
                        const MarkedCatLimit& lg, const ProductCat& target) {
  const int n = static_cast<int>(pd.fibers.size());
  std::map<std::vector<int>, int> fo, fm, go, gm;
  const CatLimit& a = lf.limit;
  const CatLimit& b = lg.limit;
  for (std::size_t k = 0; k < a.object_families.size(); ++k) fo[a.object_families[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < a.morphism_families.size(); ++k) fm[a.morphism_families[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < b.object_families.size(); ++k) go[b.object_families[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < b.morphism_families.size(); ++k) gm[b.morphism_families[k]] = static_cast<int>(k);
  Functor u{lfg.cat.cat_ptr(), target.cat.cat_ptr(), {}, {}};
  std::vector<int> left(n), right(n);
  for (const auto& fam : lfg.limit.object_families) {
    for (int i = 0; i < n; ++i) std::tie(left[i], right[i]) = pd.fibers[i].object_parts[fam[i]];
    u.object_map.push_back(target.object(fo.at(left), go.at(right)));
  }
  for (const auto& fam : lfg.limit.morphism_families) {
    for (int i = 0; i < n; ++i) std::tie(left[i], right[i]) = pd.fibers[i].morphism_parts[fam[i]];
    u.morphism_map.push_back(target.morphism(fm.at(left), gm.at(right)));
  }
  return u;
}

Evaluation eval_marked_limit(const CatDiagram& f, const CatDiagram& g, const EvalContext& ctx) {
  MarkedCatLimit lf = marked_cat_limit(f, ctx.size);
  if (!check_marking(lf.cat.cat(), lf.cat.marking()).ok()) return fail("componentwise marking is not a marking");
  MarkedCatLimit lg = marked_cat_limit(g, ctx.size);
  ProductDiagram pd = product_diagram(f, g);
  MarkedCatLimit lfg = marked_cat_limit(pd.diagram, ctx.size);
  ProductCat target = product_with_index(lf.cat, lg.cat);
  std::string defect =
      explicit_iso_defect(canonical_split(lfg, pd, lf, lg, target), lfg.cat.marking(), target.cat.marking());
  if (!defect.empty()) return fail("marked limit does not commute with products: " + defect);
  // A binary product is the limit over a discrete base.
  CatPtr two = shapes::discrete(2);
  MarkedFinCat x = f.marked_fiber(0), y = g.marked_fiber(0);
  CatDiagram pair{flat_marking(two), {x.cat_ptr(), y.cat_ptr()}, {}, {x.marking(), y.marking()}};
  for (int m = 0; m < two->num_morphisms(); ++m) pair.transitions.push_back(identity_functor(pair.fibers[two->src(m)]));
  MarkedCatLimit lp = marked_cat_limit(pair, ctx.size);
  ProductCat xy = product_with_index(x, y);
  Functor v{lp.cat.cat_ptr(), xy.cat.cat_ptr(), {}, {}};
  for (const auto& fam : lp.limit.object_families) v.object_map.push_back(xy.object(fam[0], fam[1]));
  for (const auto& fam : lp.limit.morphism_families) v.morphism_map.push_back(xy.morphism(fam[0], fam[1]));
  defect = explicit_iso_defect(v, lp.cat.marking(), xy.cat.marking());
  if (!defect.empty()) return fail("marked limit over a discrete pair is not the product: " + defect);
  return pass();
}

Evaluation eval_pullback(const CatDiagram& f, const MarkedFinCat& i, const Functor& u, const EvalContext& ctx) {
  FiberedCat e = grothendieck_cocart(f, ctx.size);
  FiberedCat pb = pullback_fibered(u, i.marking(), e, ctx.size);
  FiberedCat direct = grothendieck_cocart(restrict_diagram(f, u, i.marking()), ctx.size);
  EquivalenceVerdict v = is_isomorphic(pb.total, direct.total);
  if (!v.positive()) return fail("pullback and restricted Grothendieck construction differ: " + v.certificate);
  return pass();
}

Evaluation eval_ff(const CatDiagram& f, const std::vector<std::vector<int>>& keep, const EvalContext& ctx) {
  const FinCat& b = f.base.cat();
  std::vector<Subcategory> subs;
  CatDiagram g{f.base, {}, {}, {}};
  for (int i = 0; i < b.num_objects(); ++i) {
    subs.push_back(full_subcategory(f.fiber(i), keep[i]));
    g.fibers.push_back(subs.back().cat);
  }
  for (int m = 0; m < b.num_morphisms(); ++m) {
    const Functor& t = f.transition(m);
    const Subcategory& s = subs[b.src(m)];
    const Subcategory& d = subs[b.tgt(m)];
    Functor r{s.cat, d.cat, {}, {}};
    for (int x : s.parent_object) r.object_map.push_back(d.object_of[t.on_object(x)]);
    for (int a : s.parent_morphism) r.morphism_map.push_back(d.morphism_of[t(a)]);
    for (int y : r.object_map) {
      if (y < 0) return fail("subcategories are not closed under the transitions");
    }
    g.transitions.push_back(std::move(r));
  }
  validate_diagram(g);
  CatLimit lf = cat_limit(f, ctx.size), lg = cat_limit(g, ctx.size);
  std::map<std::vector<int>, int> obj_of, mor_of;
  for (std::size_t k = 0; k < lf.object_families.size(); ++k) obj_of[lf.object_families[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < lf.morphism_families.size(); ++k) mor_of[lf.morphism_families[k]] = static_cast<int>(k);
  Functor incl{lg.cat, lf.cat, {}, {}};
  for (const auto& fam : lg.object_families) {
    std::vector<int> up;
    for (int i = 0; i < b.num_objects(); ++i) up.push_back(subs[i].parent_object[fam[i]]);
    incl.object_map.push_back(obj_of.at(up));
  }
  for (const auto& fam : lg.morphism_families) {
    std::vector<int> up;
    for (int i = 0; i < b.num_objects(); ++i) up.push_back(subs[i].parent_morphism[fam[i]]);
    incl.morphism_map.push_back(mor_of.at(up));
  }
  if (!check_functor(incl).ok()) return fail("induced map of limits is not a functor");
  if (!is_fully_faithful(incl)) return fail("induced map of limits is not fully faithful");
  // Essential image: families with every component in the subcategory.
  const FinCat& l = *lf.cat;
  std::vector<bool> in_image(l.num_objects(), false);
  for (int x : incl.object_map) {
    for (int y = 0; y < l.num_objects(); ++y) {
      for (int m : l.hom(x, y)) {
        if (is_iso(l, m)) in_image[y] = true;
      }
    }
  }
  for (int y = 0; y < l.num_objects(); ++y) {
    bool componentwise = true;
    for (int i = 0; i < b.num_objects(); ++i) {
      componentwise = componentwise && subs[i].object_of[lf.object_families[y][i]] >= 0;
    }
    if (componentwise != in_image[y]) return fail("essential image is not the componentwise one at " + l.object_id(y));
  }
  return pass();
}

Evaluation eval_monotone(const CatDiagram& f, const Marking& larger, const EvalContext& ctx) {
  CatDiagram g = f;
  g.base = MarkedFinCat(f.base.cat_ptr(), larger);
  FunctorCat small = marked_sections(grothendieck_cocart(g, ctx.size), ctx.size);
  FunctorCat big = marked_sections(grothendieck_cocart(f, ctx.size), ctx.size);
  Functor incl{small.cat, big.cat, {}, {}};
  for (int s = 0; s < small.cat->num_objects(); ++s) {
    auto hit = big.find_functor(small.morphism_maps[s]);
    if (!hit) return fail("a section for the larger marking is not a section for the smaller one");
    incl.object_map.push_back(*hit);
  }
  for (int a = 0; a < small.cat->num_morphisms(); ++a) {
    auto hit = big.find_transformation(incl.object_map[small.cat->src(a)], incl.object_map[small.cat->tgt(a)],
                                       small.components[a]);
    if (!hit) return fail("a transformation of sections is lost");
    incl.morphism_map.push_back(*hit);
  }
  if (!check_functor(incl).ok() || !is_fully_faithful(incl)) {
    return fail("sections for the larger marking are not a full subcategory");
  }
  return pass();
}

Evaluation evaluate_unchecked(const std::string& t, const json& inst, const EvalContext& ctx) {
  if (is_cofinality(t)) return eval_cofinality(set_diagram_from_json(inst.at("set_diagram")), t == "cofinality-right", ctx);
  CatDiagram f = diagram_from_json(inst.at("diagram"));
  if (t == "thm-lax-lim") return eval_limit(f, false, ctx);
  if (t == "thm-oplax-lim") return eval_limit(f, true, ctx);
  if (t == "thm-lax-colim-probe") return eval_probe(f, false, ctx);
  if (t == "thm-oplax-colim-probe") return eval_probe(f, true, ctx);
  if (t == "prop-sharp-limit") return eval_sharp(f, ctx);
  if (t == "ghn-flat") return eval_ghn(f, ctx);
  if (t == "marked-limit") return eval_marked_limit(f, diagram_from_json(inst.at("second")), ctx);
  if (t == "pullback-remark") {
    MarkedFinCat i = category_from_json(inst.at("domain"));
    Functor u = functor_from_json(inst.at("functor"), i.cat_ptr(), f.base.cat_ptr());
    return eval_pullback(f, i, u, ctx);
  }
  if (t == "ff-lemma") {
    const FinCat& b = f.base.cat();
    std::vector<std::vector<int>> keep(b.num_objects());
    for (const auto& [id, ids] : inst.at("subcategories").items()) {
      int i = b.object_index(id);
      for (const auto& x : ids) keep[i].push_back(f.fiber(i).object_index(x.get<std::string>()));
      std::sort(keep[i].begin(), keep[i].end());
    }
    return eval_ff(f, keep, ctx);
  }
  // monotonicity
  const FinCat& b = f.base.cat();
  std::vector<int> seed;
  for (const auto& id : inst.at("larger_marking")) seed.push_back(b.morphism_index(id.get<std::string>()));
  Marking larger = saturate_marking(b, seed);
  for (int m : f.base.marking().members()) {
    if (!larger.contains(m)) throw Error(ErrorKind::kInvalidMarking, "larger marking misses " + b.morphism_id(m));
  }
  return eval_monotone(f, larger, ctx);
}

}  // namespace

Evaluation evaluate_instance(const std::string& t, const json& inst, const EvalContext& ctx) {
  require_theorem(t);
  try {
    return evaluate_unchecked(t, inst, ctx);
  } catch (const Error& e) {
    if (is_resource_error(e.kind())) return {Outcome::kSkip, e.what()};
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("instance: ") + e.what());
  }
}

Evaluation replay_failure(const json& dump, const EvalContext& ctx) {
  if (!dump.contains("theorem") || !dump.contains("instance")) {
    throw Error(ErrorKind::kParseError, "failure file needs \"theorem\" and \"instance\"");
  }
  return evaluate_instance(dump["theorem"].get<std::string>(), dump["instance"], ctx);
}

// --- minimization -----------------------------------------------------------

namespace {

std::optional<CatDiagram> drop_base_object(const CatDiagram& f, int drop) {
  const FinCat& b = f.base.cat();
  std::vector<int> keep;
  for (int i = 0; i < b.num_objects(); ++i) {
    if (i != drop) keep.push_back(i);
  }
  if (keep.empty()) return std::nullopt;
  Subcategory sub = full_subcategory(b, keep);
  std::vector<bool> bits;
  for (int m : sub.parent_morphism) bits.push_back(f.base.is_marked(m));
  Functor incl{sub.cat, f.base.cat_ptr(), sub.parent_object, sub.parent_morphism};
  CatDiagram out = restrict_diagram(f, incl, Marking(bits));
  if (!f.fiber_markings.empty()) {
    out.fiber_markings.clear();
    for (int i : sub.parent_object) out.fiber_markings.push_back(f.fiber_markings[i]);
  }
  return out;
}

std::optional<CatDiagram> drop_fiber_object(const CatDiagram& f, int i, int x) {
  const FinCat& b = f.base.cat();
  const FinCat& c = f.fiber(i);
  if (c.num_objects() <= 1) return std::nullopt;
  for (int m : b.in(i)) {
    const Functor& t = f.transition(m);
    for (int y = 0; y < f.fiber(b.src(m)).num_objects(); ++y) {
      if (t.on_object(y) == x && !(b.src(m) == i && y == x)) return std::nullopt;
    }
  }
  std::vector<int> keep;
  for (int y = 0; y < c.num_objects(); ++y) {
    if (y != x) keep.push_back(y);
  }
  Subcategory sub = full_subcategory(c, keep);
  CatDiagram out = f;
  out.fibers[i] = sub.cat;
  if (!f.fiber_markings.empty()) {
    std::vector<bool> bits;
    for (int m : sub.parent_morphism) bits.push_back(f.fiber_markings[i].contains(m));
    out.fiber_markings[i] = Marking(bits);
  }
  for (int m = 0; m < b.num_morphisms(); ++m) {
    int s = b.src(m), d = b.tgt(m);
    if (s != i && d != i) continue;
    const Functor& t = f.transition(m);
    Functor r{out.fibers[s], out.fibers[d], {}, {}};
    auto obj = [&](int y) { return d == i ? sub.object_of[y] : y; };
    auto mor = [&](int n) { return d == i ? sub.morphism_of[n] : n; };
    int ns = out.fibers[s]->num_objects(), nm = out.fibers[s]->num_morphisms();
    for (int y = 0; y < ns; ++y) r.object_map.push_back(obj(t.on_object(s == i ? sub.parent_object[y] : y)));
    for (int n = 0; n < nm; ++n) r.morphism_map.push_back(mor(t(s == i ? sub.parent_morphism[n] : n)));
    for (int y : r.object_map) {
      if (y < 0) return std::nullopt;
    }
    for (int n : r.morphism_map) {
      if (n < 0) return std::nullopt;
    }
    out.transitions[m] = std::move(r);
  }
  if (!check_diagram(out).ok()) return std::nullopt;
  return out;
}

}  // namespace

CatDiagram minimize_diagram(const CatDiagram& f, const std::function<bool(const CatDiagram&)>& fails) {
  CatDiagram cur = f;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < cur.base.cat().num_objects() && !progress; ++i) {
      auto smaller = drop_base_object(cur, i);
      if (smaller && fails(*smaller)) {
        cur = std::move(*smaller);
        progress = true;
      }
    }
    for (int i = 0; i < cur.base.cat().num_objects() && !progress; ++i) {
      for (int x = 0; x < cur.fiber(i).num_objects() && !progress; ++x) {
        auto smaller = drop_fiber_object(cur, i, x);
        if (smaller && fails(*smaller)) {
          cur = std::move(*smaller);
          progress = true;
        }
      }
    }
  }
  return cur;
}

SetDiagram minimize_set_diagram(const SetDiagram& f, const std::function<bool(const SetDiagram&)>& fails) {
  SetDiagram cur = f;
  bool progress = true;
  while (progress) {
    progress = false;
    const FinCat& b = *cur.base;
    for (int drop = 0; drop < b.num_objects() && !progress; ++drop) {
      std::vector<int> keep;
      for (int i = 0; i < b.num_objects(); ++i) {
        if (i != drop) keep.push_back(i);
      }
      if (keep.empty()) break;
      Subcategory sub = full_subcategory(b, keep);
      SetDiagram smaller = precompose(cur, Functor{sub.cat, cur.base, sub.parent_object, sub.parent_morphism});
      if (fails(smaller)) {
        cur = std::move(smaller);
        progress = true;
      }
    }
  }
  return cur;
}

// --- runs -------------------------------------------------------------------

int CheckReport::exit_code() const {
  if (failures > 0) return 1;
  if (bound_exceeded > max_skip) return 2;
  return 0;
}

json CheckReport::to_json(bool timing) const {
  json j;
  j["theorem"] = theorem;
  j["seed"] = seed;
  j["count"] = count;
  j["params"] = params_to_json(params);
  j["instances"] = instances;
  j["passes"] = passes;
  j["failures"] = failures;
  j["bound_exceeded"] = bound_exceeded;
  j["max_skip"] = max_skip;
  j["failure_cases"] = json::array();
  for (const auto& f : failure_cases) {
    j["failure_cases"].push_back(
        {{"index", f.index}, {"instance_seed", f.instance_seed}, {"reason", f.reason}, {"file", f.file}});
  }
  j["skips"] = json::array();
  for (const auto& s : skips) j["skips"].push_back({{"index", s.index}, {"reason", s.reason}});
  if (timing) j["wall_seconds"] = wall_seconds;
  return j;
}

namespace {

std::vector<std::string> replay_commands(const std::string& t) {
  if (t == "thm-lax-lim") {
    return {"laxcat laxlim diagram.json --out lax.json", "laxcat sections diagram.json --marked --out sections.json",
            "laxcat equiv lax.json sections.json"};
  }
  if (t == "thm-oplax-lim") {
    return {"laxcat oplaxlim diagram.json --out oplax.json",
            "laxcat sections diagram.json --marked --cartesian --out sections.json",
            "laxcat equiv oplax.json sections.json"};
  }
  if (t == "thm-lax-colim-probe") return {"laxcat laxcolim diagram.json --probe-check"};
  if (t == "thm-oplax-colim-probe") return {"laxcat oplaxcolim diagram.json --probe-check"};
  if (t == "ghn-flat") {
    return {"laxcat laxlim diagram.json --out lax.json", "laxcat sections diagram.json --out sections.json",
            "laxcat equiv lax.json sections.json", "laxcat laxcolim diagram.json"};
  }
  if (t == "prop-sharp-limit") {
    return {"laxcat laxlim diagram.json --out lax.json", "laxcat oplaxlim diagram.json --out oplax.json",
            "laxcat equiv lax.json oplax.json"};
  }
  return {};
}

}  // namespace

CheckReport run_check(const CheckOptions& options) {
  const std::string& t = options.theorem;
  require_theorem(t);
  auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.theorem = t;
  report.seed = options.seed;
  report.count = options.count > 0 ? options.count : default_count(t);
  report.params = options.params.value_or(default_params(t));
  if (options.max_objects) report.params.max_objects = *options.max_objects;
  if (options.max_morphisms) report.params.max_morphisms = *options.max_morphisms;
  report.params.seed = options.seed;
  report.params.validate();
  report.max_skip = options.max_skip.value_or(report.count / 20);

  EvalContext ctx{options.localization, options.size, options.probes};
  auto evaluate = [&](const json& inst) {
    return options.evaluator ? options.evaluator(inst) : evaluate_instance(t, inst, ctx);
  };
  std::vector<Evaluation> results(report.count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < report.count; k = next++) {
      try {
        json inst = generate_instance(t, report.params, mix_seed(options.seed, k));
        results[k] = evaluate(inst);
      } catch (const Error& e) {
        results[k] = is_resource_error(e.kind()) ? Evaluation{Outcome::kSkip, e.what()}
                                                 : Evaluation{Outcome::kFail, std::string("error: ") + e.what()};
      } catch (const std::exception& e) {
        results[k] = {Outcome::kFail, std::string("internal error: ") + e.what()};
      }
    }
  };
  int jobs = std::max(1, std::min(options.jobs, report.count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (int k = 0; k < report.count; ++k) {
    ++report.instances;
    const Evaluation& r = results[k];
    if (r.outcome == Outcome::kPass) {
      ++report.passes;
    } else if (r.outcome == Outcome::kSkip) {
      ++report.bound_exceeded;
      report.skips.push_back({k, r.reason});
    } else {
      ++report.failures;
      std::uint64_t iseed = mix_seed(options.seed, k);
      std::string name = t + "-" + std::to_string(k);
      FailureCase fc{k, iseed, r.reason, name + "/failure.json"};
      json dump{{"theorem", t}, {"seed", options.seed}, {"index", k}, {"instance_seed", iseed},
                {"params", params_to_json(report.params)}, {"reason", r.reason}};
      try {
        json inst = generate_instance(t, report.params, iseed);
        dump["instance"] = inst;
        std::filesystem::path dir = options.out / name;
        if (options.minimize && inst.size() == 1 && inst.contains("diagram")) {
          CatDiagram small = minimize_diagram(diagram_from_json(inst["diagram"]), [&](const CatDiagram& d) {
            try {
              return evaluate(json{{"diagram", diagram_to_json(d)}}).outcome == Outcome::kFail;
            } catch (const Error&) {
              return false;
            }
          });
          dump["minimized"] = json{{"diagram", diagram_to_json(small)}};
        } else if (options.minimize && inst.contains("set_diagram")) {
          SetDiagram small = minimize_set_diagram(set_diagram_from_json(inst["set_diagram"]), [&](const SetDiagram& d) {
            try {
              return evaluate(json{{"set_diagram", set_diagram_to_json(d)}}).outcome == Outcome::kFail;
            } catch (const Error&) {
              return false;
            }
          });
          dump["minimized"] = json{{"set_diagram", set_diagram_to_json(small)}};
        }
        if (inst.contains("diagram")) {
          const json& d = dump.contains("minimized") ? dump["minimized"]["diagram"] : inst["diagram"];
          save_json(dir / "diagram.json", d);
          dump["replay"] = replay_commands(t);
        }
        save_json(dir / "failure.json", dump);
      } catch (const Error& e) {
        fc.reason += " (dump failed: " + std::string(e.what()) + ")";
        fc.file.clear();
      }
      report.failure_cases.push_back(std::move(fc));
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace laxcat
