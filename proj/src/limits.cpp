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

#include "laxcat/limits.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace laxcat {
namespace {

void check_size(std::size_t n, std::size_t cap, const std::string& what) {
  if (n > cap) {
    throw Error(ErrorKind::kSizeBoundExceeded,
                what + " exceeds the cap of " + std::to_string(cap));
  }
}

class FamilySolver {
 public:
  FamilySolver(const FinCat& base, const std::vector<int>& sizes,
               const std::vector<const std::vector<int>*>& action,
               const std::function<bool(const std::vector<int>&)>& visit, std::size_t cap)
      : base_(base), sizes_(sizes), action_(action), visit_(visit), cap_(cap) {}

  void run() {
    const int n = base_.num_objects();
    State s;
    s.value.assign(n, -1);
    s.domain.resize(n);
    s.remaining.resize(n);
    for (int b = 0; b < n; ++b) {
      s.domain[b].assign(sizes_[b], 1);
      s.remaining[b] = sizes_[b];
      if (sizes_[b] == 0) return;
    }
    solve(s);
  }

 private:
  struct State {
    std::vector<int> value;
    std::vector<std::vector<char>> domain;
    std::vector<int> remaining;
  };

  // Assigns b = v and everything it forces. False on a conflict.
  bool assign(State& s, int b0, int v0) const {
    std::vector<std::pair<int, int>> queue{{b0, v0}};
    while (!queue.empty()) {
      auto [b, v] = queue.back();
      queue.pop_back();
      if (s.value[b] >= 0) {
        if (s.value[b] != v) return false;
        continue;
      }
      if (!s.domain[b][v]) return false;
      s.value[b] = v;
      for (int m : base_.out(b)) {
        if (base_.is_identity(m)) continue;
        queue.emplace_back(base_.tgt(m), (*action_[m])[v]);
      }
      for (int m : base_.in(b)) {
        if (base_.is_identity(m)) continue;
        const int p = base_.src(m);
        if (s.value[p] >= 0) continue;
        const std::vector<int>& act = *action_[m];
        auto& dom = s.domain[p];
        for (int w = 0; w < sizes_[p]; ++w) {
          if (dom[w] && act[w] != v) {
            dom[w] = 0;
            --s.remaining[p];
          }
        }
        if (s.remaining[p] == 0) return false;
      }
    }
    return true;
  }

  bool solve(const State& s) {
    int pick = -1;
    for (int b = 0; b < base_.num_objects(); ++b) {
      if (s.value[b] >= 0) continue;
      if (pick < 0 || s.remaining[b] < s.remaining[pick] ||
          (s.remaining[b] == s.remaining[pick] &&
           base_.out(b).size() > base_.out(pick).size())) {
        pick = b;
      }
    }
    if (pick < 0) {
      ++count_;
      if (count_ > cap_) {
        throw Error(ErrorKind::kSizeBoundExceeded,
                    "limit has more than " + std::to_string(cap_) + " families");
      }
      return visit_(s.value);
    }
    for (int v = 0; v < sizes_[pick]; ++v) {
      if (!s.domain[pick][v]) continue;
      State next = s;
      if (!assign(next, pick, v)) continue;
      if (!solve(next)) return false;
    }
    return true;
  }

  const FinCat& base_;
  const std::vector<int>& sizes_;
  const std::vector<const std::vector<int>*>& action_;
  const std::function<bool(const std::vector<int>&)>& visit_;
  std::size_t cap_;
  std::size_t count_ = 0;
};

}  // namespace

std::string SetDiagram::element_name(int i, int x) const {
  if (i < static_cast<int>(names.size()) && x < static_cast<int>(names[i].size())) {
    return names[i][x];
  }
  return std::to_string(x);
}

ValidationReport check_set_diagram(const SetDiagram& f) {
  ValidationReport report;
  const FinCat& b = *f.base;
  if (static_cast<int>(f.sizes.size()) != b.num_objects() ||
      static_cast<int>(f.action.size()) != b.num_morphisms()) {
    report.add("set diagram has the wrong shape");
    return report;
  }
  for (int m = 0; m < b.num_morphisms(); ++m) {
    const auto& act = f.action[m];
    if (static_cast<int>(act.size()) != f.sizes[b.src(m)]) {
      report.add("action of " + b.morphism_id(m) + " has the wrong domain");
      return report;
    }
    for (int y : act) {
      if (y < 0 || y >= f.sizes[b.tgt(m)]) {
        report.add("action of " + b.morphism_id(m) + " leaves its codomain");
        return report;
      }
    }
  }
  for (int i = 0; i < b.num_objects(); ++i) {
    const auto& act = f.action[b.identity(i)];
    for (int x = 0; x < f.sizes[i]; ++x) {
      if (act[x] != x) {
        report.add("identity of " + b.object_id(i) + " acts nontrivially");
        break;
      }
    }
  }
  for (int a = 0; a < b.num_morphisms(); ++a) {
    for (int c : b.out(b.tgt(a))) {
      const auto& ac = f.action[b.compose(c, a)];
      for (int x = 0; x < f.sizes[b.src(a)]; ++x) {
        if (f.action[c][f.action[a][x]] != ac[x]) {
          report.add("functoriality fails at (" + b.morphism_id(c) + ", " + b.morphism_id(a) + ")");
          break;
        }
      }
    }
  }
  return report;
}

SetDiagram precompose(const SetDiagram& f, const Functor& t) {
  SetDiagram out;
  out.base = t.dom;
  for (int x = 0; x < t.dom->num_objects(); ++x) {
    out.sizes.push_back(f.sizes[t.on_object(x)]);
    if (!f.names.empty()) out.names.push_back(f.names[t.on_object(x)]);
  }
  for (int m = 0; m < t.dom->num_morphisms(); ++m) out.action.push_back(f.action[t(m)]);
  return out;
}

void for_each_family(const FinCat& base, const std::vector<int>& sizes,
                     const std::vector<const std::vector<int>*>& action,
                     const std::function<bool(const std::vector<int>&)>& visit,
                     std::size_t cap) {
  FamilySolver solver(base, sizes, action, visit, cap);
  solver.run();
}

std::vector<std::vector<int>> set_limit(const SetDiagram& f, std::size_t cap) {
  std::vector<const std::vector<int>*> action;
  for (const auto& a : f.action) action.push_back(&a);
  std::vector<std::vector<int>> out;
  for_each_family(*f.base, f.sizes, action, [&](const std::vector<int>& fam) {
    out.push_back(fam);
    return true;
  }, cap);
  std::sort(out.begin(), out.end());
  return out;
}

SetColimit set_colimit(const SetDiagram& f) {
  const FinCat& b = *f.base;
  std::vector<int> offset(b.num_objects() + 1, 0);
  for (int i = 0; i < b.num_objects(); ++i) offset[i + 1] = offset[i] + f.sizes[i];
  std::vector<int> parent(offset.back());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int m = 0; m < b.num_morphisms(); ++m) {
    for (int x = 0; x < f.sizes[b.src(m)]; ++x) {
      const int p = find(offset[b.src(m)] + x);
      const int q = find(offset[b.tgt(m)] + f.action[m][x]);
      if (p != q) parent[std::max(p, q)] = std::min(p, q);
    }
  }
  SetColimit out;
  std::map<int, int> number;
  out.class_of.resize(b.num_objects());
  for (int i = 0; i < b.num_objects(); ++i) {
    for (int x = 0; x < f.sizes[i]; ++x) {
      const int r = find(offset[i] + x);
      auto it = number.emplace(r, static_cast<int>(number.size())).first;
      out.class_of[i].push_back(it->second);
    }
  }
  out.size = static_cast<int>(number.size());
  return out;
}

CatLimit cat_limit(const CatDiagram& f, const Bounds& bounds) {
  const FinCat& base = f.base.cat();
  const int n = base.num_objects();
  std::vector<int> obj_sizes(n), mor_sizes(n);
  for (int i = 0; i < n; ++i) {
    obj_sizes[i] = f.fiber(i).num_objects();
    mor_sizes[i] = f.fiber(i).num_morphisms();
  }
  std::vector<const std::vector<int>*> obj_action, mor_action;
  for (int m = 0; m < base.num_morphisms(); ++m) {
    obj_action.push_back(&f.transition(m).object_map);
    mor_action.push_back(&f.transition(m).morphism_map);
  }
  std::vector<std::vector<int>> objects, morphisms;
  for_each_family(base, obj_sizes, obj_action, [&](const std::vector<int>& fam) {
    objects.push_back(fam);
    return true;
  }, bounds.max_objects);
  for_each_family(base, mor_sizes, mor_action, [&](const std::vector<int>& fam) {
    morphisms.push_back(fam);
    return true;
  }, bounds.max_morphisms);

  auto object_name = [&](const std::vector<int>& fam) {
    std::vector<std::string> parts;
    for (int i = 0; i < n; ++i) parts.push_back(f.fiber(i).object_id(fam[i]));
    return tuple_id(parts);
  };
  auto morphism_name = [&](const std::vector<int>& fam) {
    std::vector<std::string> parts;
    for (int i = 0; i < n; ++i) parts.push_back(f.fiber(i).morphism_id(fam[i]));
    return tuple_id(parts);
  };

  CatBuilder builder;
  std::map<std::vector<int>, int> obj_index, mor_index;
  for (const auto& fam : objects) obj_index.emplace(fam, builder.add_object(object_name(fam)));
  std::vector<int> s(n), t(n);
  for (const auto& fam : morphisms) {
    for (int i = 0; i < n; ++i) {
      s[i] = f.fiber(i).src(fam[i]);
      t[i] = f.fiber(i).tgt(fam[i]);
    }
    mor_index.emplace(fam, builder.add_morphism(morphism_name(fam), obj_index.at(s), obj_index.at(t)));
  }
  for (const auto& [fam, k] : obj_index) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = f.fiber(i).identity(fam[i]);
    builder.set_identity(k, mor_index.at(ids));
  }
  std::vector<int> scratch(n);
  builder.set_compose_fn([&](int g, int h) {
    const auto& fg = morphisms[g];
    const auto& fh = morphisms[h];
    for (int i = 0; i < n; ++i) scratch[i] = f.fiber(i).compose(fg[i], fh[i]);
    return mor_index.at(scratch);
  });
  auto built = builder.build(false);

  CatLimit out;
  out.cat = built.cat;
  out.object_families.resize(objects.size());
  out.morphism_families.resize(morphisms.size());
  for (std::size_t k = 0; k < objects.size(); ++k) {
    out.object_families[built.object_index[k]] = objects[k];
  }
  for (std::size_t k = 0; k < morphisms.size(); ++k) {
    out.morphism_families[built.morphism_index[k]] = morphisms[k];
  }
  for (int i = 0; i < n; ++i) {
    Functor p{out.cat, f.fibers[i], {}, {}};
    for (const auto& fam : out.object_families) p.object_map.push_back(fam[i]);
    for (const auto& fam : out.morphism_families) p.morphism_map.push_back(fam[i]);
    out.projections.push_back(std::move(p));
  }
  return out;
}

MarkedCatLimit marked_cat_limit(const CatDiagram& f, const Bounds& bounds) {
  CatLimit lim = cat_limit(f, bounds);
  std::vector<bool> bits(lim.cat->num_morphisms(), true);
  if (!f.fiber_markings.empty()) {
    for (int m = 0; m < lim.cat->num_morphisms(); ++m) {
      for (std::size_t i = 0; i < f.fibers.size(); ++i) {
        if (!f.fiber_markings[i].contains(lim.morphism_families[m][i])) {
          bits[m] = false;
          break;
        }
      }
    }
  } else {
    // Flat fibers: a family is marked iff every component is invertible.
    for (int m = 0; m < lim.cat->num_morphisms(); ++m) {
      for (std::size_t i = 0; i < f.fibers.size(); ++i) {
        if (!is_iso(*f.fibers[i], lim.morphism_families[m][i])) {
          bits[m] = false;
          break;
        }
      }
    }
  }
  MarkedCatLimit out{MarkedFinCat(lim.cat, Marking(bits)), std::move(lim)};
  return out;
}

namespace {

LaxLimitResult end_formula(const CatDiagram& f, const Bounds& bounds, bool oplax) {
  validate_diagram(f);
  const MarkedFinCat& base = f.base;
  const FinCat& c = base.cat();
  TwistedArrowCat tw = twisted_arrow(base.cat_ptr(), bounds);
  const FinCat& t = *tw.cat;

  // Marked slices I†_{/s}, or their opposites, and the slice transitions.
  CatDiagram slices = slice_diagram(base);
  std::vector<MarkedFinCat> weights;
  std::vector<Functor> weight_maps;
  for (int s = 0; s < c.num_objects(); ++s) {
    MarkedFinCat w = slices.marked_fiber(s);
    weights.push_back(oplax ? opposite(w) : w);
  }
  for (int a = 0; a < c.num_morphisms(); ++a) {
    const Functor& sa = slices.transition(a);
    weight_maps.push_back(Functor{weights[c.src(a)].cat_ptr(), weights[c.tgt(a)].cat_ptr(),
                                  sa.object_map, sa.morphism_map});
  }

  // Value at the twisted object s → t.
  std::vector<FunctorCat> values;
  CatDiagram end{flat_marking(opposite(t)), {}, {}, {}};
  for (int x = 0; x < t.num_objects(); ++x) {
    const int m = tw.base_morphism[x];
    values.push_back(marked_functor_category(weights[c.src(m)], flat_marking(f.fibers[c.tgt(m)]),
                                             bounds));
    end.fibers.push_back(values.back().cat);
  }
  // A Tw morphism (a, b): x → x′ is x′ → x in Tw^op and acts by
  // G′ ↦ F(b)∘G′∘a_*.
  for (int k = 0; k < t.num_morphisms(); ++k) {
    const auto [a, b] = tw.morphism_parts[k];
    end.transitions.push_back(
        whisker(values[t.tgt(k)], values[t.src(k)], &weight_maps[a], &f.transition(b)));
  }

  LaxLimitResult out;
  out.limit = cat_limit(end, bounds);
  out.cat = out.limit.cat;
  for (int i = 0; i < c.num_objects(); ++i) {
    const int x = t.object_index(c.morphism_id(c.identity(i)));
    const FunctorCat& v = values[x];
    const int apex = slices.fibers[i]->object_index(c.morphism_id(c.identity(i)));
    const Functor& p = out.limit.projections[x];
    Functor ev{out.cat, f.fibers[i], {}, {}};
    for (int o : p.object_map) ev.object_map.push_back(v.object_maps[o][apex]);
    for (int m : p.morphism_map) ev.morphism_map.push_back(v.components[m][apex]);
    out.evaluations.push_back(std::move(ev));
  }
  out.end_diagram = std::move(end);
  return out;
}

}  // namespace

LaxLimitResult lax_limit(const CatDiagram& f, const Bounds& bounds) {
  return end_formula(f, bounds, false);
}

LaxLimitResult oplax_limit(const CatDiagram& f, const Bounds& bounds) {
  return end_formula(f, bounds, true);
}

IsoComma iso_comma(const Functor& g, const Functor& h, const Bounds& bounds) {
  const FinCat& a = *g.dom;
  const FinCat& c = *h.dom;
  const FinCat& b = *g.cod;
  struct Obj {
    int a, c, beta;
  };
  std::vector<Obj> objs;
  CatBuilder builder;
  for (int x = 0; x < a.num_objects(); ++x) {
    for (int y = 0; y < c.num_objects(); ++y) {
      for (int beta : b.hom(g.on_object(x), h.on_object(y))) {
        if (!is_iso(b, beta)) continue;
        builder.add_object(tuple_id({a.object_id(x), c.object_id(y), b.morphism_id(beta)}));
        objs.push_back({x, y, beta});
      }
    }
  }
  check_size(objs.size(), bounds.max_objects, "iso comma objects");
  struct Mor {
    int f, k, src, tgt;
  };
  std::vector<Mor> mors;
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int s = 0; s < static_cast<int>(objs.size()); ++s) {
    for (int e = 0; e < static_cast<int>(objs.size()); ++e) {
      for (int fm : a.hom(objs[s].a, objs[e].a)) {
        for (int km : c.hom(objs[s].c, objs[e].c)) {
          if (b.compose(objs[e].beta, g(fm)) != b.compose(h(km), objs[s].beta)) continue;
          const int k = builder.add_morphism(
              tuple_id({a.morphism_id(fm), c.morphism_id(km), b.morphism_id(objs[s].beta),
                        b.morphism_id(objs[e].beta)}),
              s, e);
          mors.push_back({fm, km, s, e});
          index.emplace(std::make_tuple(fm, km, s, e), k);
          check_size(mors.size(), bounds.max_morphisms, "iso comma morphisms");
        }
      }
    }
  }
  for (int s = 0; s < static_cast<int>(objs.size()); ++s) {
    builder.set_identity(s, index.at({a.identity(objs[s].a), c.identity(objs[s].c), s, s}));
  }
  builder.set_compose_fn([&](int q, int p) {
    return index.at({a.compose(mors[q].f, mors[p].f), c.compose(mors[q].k, mors[p].k), mors[p].src,
                     mors[q].tgt});
  });
  auto built = builder.build(false);
  IsoComma out;
  out.cat = built.cat;
  out.to_left = Functor{built.cat, g.dom, std::vector<int>(objs.size()),
                        std::vector<int>(mors.size())};
  out.to_right = Functor{built.cat, h.dom, std::vector<int>(objs.size()),
                         std::vector<int>(mors.size())};
  for (std::size_t s = 0; s < objs.size(); ++s) {
    out.to_left.object_map[built.object_index[s]] = objs[s].a;
    out.to_right.object_map[built.object_index[s]] = objs[s].c;
  }
  for (std::size_t k = 0; k < mors.size(); ++k) {
    out.to_left.morphism_map[built.morphism_index[k]] = mors[k].f;
    out.to_right.morphism_map[built.morphism_index[k]] = mors[k].k;
  }
  return out;
}

}  // namespace laxcat
