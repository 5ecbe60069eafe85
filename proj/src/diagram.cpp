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

#include "laxcat/diagram.hpp"

namespace laxcat {

MarkedFinCat CatDiagram::marked_fiber(int i) const {
  if (fiber_markings.empty()) return flat_marking(fibers[i]);
  return MarkedFinCat(fibers[i], fiber_markings[i]);
}

ValidationReport check_diagram(const CatDiagram& f) {
  ValidationReport report;
  const FinCat& base = f.base.cat();
  if (static_cast<int>(f.fibers.size()) != base.num_objects()) {
    report.add("expected " + std::to_string(base.num_objects()) + " fibers, got " +
               std::to_string(f.fibers.size()));
    return report;
  }
  if (static_cast<int>(f.transitions.size()) != base.num_morphisms()) {
    report.add("expected " + std::to_string(base.num_morphisms()) +
               " transitions, got " + std::to_string(f.transitions.size()));
    return report;
  }
  for (int i = 0; i < base.num_objects(); ++i) {
    if (!f.fibers[i]) report.add("missing fiber at " + base.object_id(i));
  }
  if (!f.fiber_markings.empty()) {
    for (int i = 0; i < base.num_objects() && f.fibers[i]; ++i) {
      ValidationReport m = check_marking(*f.fibers[i], f.fiber_markings[i]);
      for (auto& issue : m.issues) {
        report.add("fiber " + base.object_id(i) + ": " + issue);
      }
    }
  }
  if (!report.ok()) return report;

  bool shapes_ok = true;
  for (int m = 0; m < base.num_morphisms(); ++m) {
    const Functor& t = f.transitions[m];
    const std::string& name = base.morphism_id(m);
    if (t.dom.get() != f.fibers[base.src(m)].get() &&
        !(t.dom && *t.dom == *f.fibers[base.src(m)])) {
      report.add("transition " + name + " has the wrong domain");
      shapes_ok = false;
      continue;
    }
    if (t.cod.get() != f.fibers[base.tgt(m)].get() &&
        !(t.cod && *t.cod == *f.fibers[base.tgt(m)])) {
      report.add("transition " + name + " has the wrong codomain");
      shapes_ok = false;
      continue;
    }
    ValidationReport fr = check_functor(t);
    for (auto& issue : fr.issues) report.add("transition " + name + ": " + issue);
    if (!fr.ok()) shapes_ok = false;
  }
  if (!shapes_ok) return report;

  for (int i = 0; i < base.num_objects(); ++i) {
    const Functor& t = f.transitions[base.identity(i)];
    if (!(t == identity_functor(f.fibers[i]))) {
      report.add("transition " + base.morphism_id(base.identity(i)) +
                 " is not the identity functor");
    }
  }
  for (int a = 0; a < base.num_morphisms(); ++a) {
    for (int b : base.out(base.tgt(a))) {
      const Functor& fa = f.transitions[a];
      const Functor& fb = f.transitions[b];
      const Functor& fc = f.transitions[base.compose(b, a)];
      if (compose(fb, fa) != fc) {
        report.add("functoriality fails at (" + base.morphism_id(b) + ", " +
                   base.morphism_id(a) + ")");
      }
    }
  }
  return report;
}

void validate_diagram(const CatDiagram& f) {
  ValidationReport report = check_diagram(f);
  if (!report.ok()) {
    throw Error(ErrorKind::kInvalidDiagram, "invalid diagram: " + report.summary());
  }
}

Functor functor_from_ids(const CatPtr& dom, const CatPtr& cod,
                         const std::map<std::string, std::string>& objects,
                         const std::map<std::string, std::string>& morphisms) {
  Functor f{dom, cod, std::vector<int>(dom->num_objects(), -1),
            std::vector<int>(dom->num_morphisms(), -1)};
  for (const auto& [from, to] : objects) f.object_map[dom->object_index(from)] = cod->object_index(to);
  for (int x = 0; x < dom->num_objects(); ++x) {
    if (f.object_map[x] < 0) {
      throw Error(ErrorKind::kInvalidFunctor, "no image given for object " + dom->object_id(x));
    }
  }
  for (const auto& [from, to] : morphisms) {
    f.morphism_map[dom->morphism_index(from)] = cod->morphism_index(to);
  }
  for (int m = 0; m < dom->num_morphisms(); ++m) {
    if (f.morphism_map[m] >= 0) continue;
    if (!dom->is_identity(m)) {
      throw Error(ErrorKind::kInvalidFunctor, "no image given for morphism " + dom->morphism_id(m));
    }
    f.morphism_map[m] = cod->identity(f.object_map[dom->src(m)]);
  }
  ValidationReport report = check_functor(f);
  if (!report.ok()) throw Error(ErrorKind::kInvalidFunctor, "invalid functor: " + report.summary());
  return f;
}

CatDiagram constant_diagram(const MarkedFinCat& base, const CatPtr& value) {
  CatDiagram f{base, {}, {}, {}};
  const FinCat& b = base.cat();
  f.fibers.assign(b.num_objects(), value);
  f.transitions.assign(b.num_morphisms(), identity_functor(value));
  return f;
}

CatDiagram restrict_diagram(const CatDiagram& f, const Functor& t,
                            const Marking& dom_marking) {
  CatDiagram out{MarkedFinCat(t.dom, dom_marking), {}, {}, {}};
  for (int x = 0; x < t.dom->num_objects(); ++x) {
    out.fibers.push_back(f.fibers[t.on_object(x)]);
    if (!f.fiber_markings.empty()) {
      out.fiber_markings.push_back(f.fiber_markings[t.on_object(x)]);
    }
  }
  for (int m = 0; m < t.dom->num_morphisms(); ++m) {
    out.transitions.push_back(f.transitions[t(m)]);
  }
  return out;
}

}  // namespace laxcat
