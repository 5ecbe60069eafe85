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

#include "laxcat/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace laxcat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedTable: return "MalformedTable";
    case ErrorKind::kInvalidMarking: return "InvalidMarking";
    case ErrorKind::kInvalidFunctor: return "InvalidFunctor";
    case ErrorKind::kInvalidDiagram: return "InvalidDiagram";
    case ErrorKind::kUnknownObject: return "UnknownObject";
    case ErrorKind::kUnknownMorphism: return "UnknownMorphism";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kSizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorKind::kWordBoundExceeded: return "WordBoundExceeded";
    case ErrorKind::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::kGenerationExhausted: return "GenerationExhausted";
  }
  return "Unknown";
}

bool is_resource_error(ErrorKind kind) {
  return kind == ErrorKind::kSizeBoundExceeded ||
         kind == ErrorKind::kWordBoundExceeded ||
         kind == ErrorKind::kSearchBudgetExceeded ||
         kind == ErrorKind::kGenerationExhausted;
}

std::string ValidationReport::summary(std::size_t max_lines) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size() && i < max_lines; ++i) {
    if (i) os << "; ";
    os << issues[i];
  }
  if (issues.size() > max_lines) {
    os << "; ... (" << issues.size() - max_lines << " more)";
  }
  return os.str();
}

// --- FinCat -----------------------------------------------------------------

std::optional<int> FinCat::try_compose(int g, int f) const {
  if (tgt(f) != src(g)) return std::nullopt;
  return compose(g, f);
}

std::optional<int> FinCat::find_object(std::string_view id) const {
  auto it = object_lookup_.find(std::string(id));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FinCat::find_morphism(std::string_view id) const {
  auto it = morphism_lookup_.find(std::string(id));
  if (it == morphism_lookup_.end()) return std::nullopt;
  return it->second;
}

int FinCat::object_index(std::string_view id) const {
  auto x = find_object(id);
  if (!x) throw Error(ErrorKind::kUnknownObject, std::string(id));
  return *x;
}

int FinCat::morphism_index(std::string_view id) const {
  auto m = find_morphism(id);
  if (!m) throw Error(ErrorKind::kUnknownMorphism, std::string(id));
  return *m;
}

bool operator==(const FinCat& a, const FinCat& b) {
  if (a.objects_ != b.objects_ || a.identity_ != b.identity_) return false;
  if (a.morphisms_.size() != b.morphisms_.size()) return false;
  for (std::size_t m = 0; m < a.morphisms_.size(); ++m) {
    const auto& x = a.morphisms_[m];
    const auto& y = b.morphisms_[m];
    if (x.id != y.id || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return a.comp_ == b.comp_;
}

// --- CatBuilder -------------------------------------------------------------

namespace {

std::uint64_t pair_key(int g, int f) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
         static_cast<std::uint32_t>(f);
}

std::vector<int> sorted_order(const std::vector<std::string>& ids) {
  std::vector<int> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ids[a] < ids[b]; });
  return order;
}

}  // namespace

int CatBuilder::add_object(std::string id) {
  objects_.push_back(std::move(id));
  identity_.push_back(-1);
  return static_cast<int>(objects_.size()) - 1;
}

int CatBuilder::add_morphism(std::string id, int src, int tgt) {
  morphisms_.push_back({std::move(id), src, tgt});
  return static_cast<int>(morphisms_.size()) - 1;
}

void CatBuilder::set_identity(int object, int morphism) {
  identity_[object] = morphism;
}

void CatBuilder::set_composite(int g, int f, int h) {
  composites_[pair_key(g, f)] = h;
}

ValidationReport CatBuilder::check(bool check_associativity) const {
  ValidationReport report;
  assemble(report, check_associativity);
  return report;
}

CatBuilder::Built CatBuilder::build(bool check_associativity) const {
  ValidationReport report;
  Built built = assemble(report, check_associativity);
  if (!report.ok()) {
    throw Error(ErrorKind::kMalformedTable, report.summary());
  }
  return built;
}

CatBuilder::Built CatBuilder::assemble(ValidationReport& report,
                                       bool check_associativity) const {
  Built built;
  const int n_obj = num_objects();
  const int n_mor = num_morphisms();

  {
    std::unordered_set<std::string> seen;
    for (const auto& id : objects_) {
      if (!seen.insert(id).second) report.add("duplicate object id '" + id + "'");
    }
    seen.clear();
    for (const auto& m : morphisms_) {
      if (!seen.insert(m.id).second) {
        report.add("duplicate morphism id '" + m.id + "'");
      }
    }
  }
  for (const auto& m : morphisms_) {
    if (m.src < 0 || m.src >= n_obj || m.tgt < 0 || m.tgt >= n_obj) {
      report.add("morphism '" + m.id + "' has a dangling endpoint");
    }
  }
  if (!report.ok()) return built;

  std::vector<int> obj_order = sorted_order(objects_);
  std::vector<std::string> mor_ids;
  mor_ids.reserve(morphisms_.size());
  for (const auto& m : morphisms_) mor_ids.push_back(m.id);
  std::vector<int> mor_order = sorted_order(mor_ids);

  built.object_index.assign(n_obj, -1);
  built.morphism_index.assign(n_mor, -1);
  for (int i = 0; i < n_obj; ++i) built.object_index[obj_order[i]] = i;
  for (int i = 0; i < n_mor; ++i) built.morphism_index[mor_order[i]] = i;

  auto cat = std::make_shared<FinCat>();
  FinCat& c = *cat;
  c.objects_.reserve(n_obj);
  for (int i = 0; i < n_obj; ++i) c.objects_.push_back(objects_[obj_order[i]]);
  c.morphisms_.reserve(n_mor);
  for (int i = 0; i < n_mor; ++i) {
    const auto& m = morphisms_[mor_order[i]];
    c.morphisms_.push_back(
        {m.id, built.object_index[m.src], built.object_index[m.tgt]});
  }
  c.identity_.assign(n_obj, -1);
  for (int i = 0; i < n_obj; ++i) {
    int raw = identity_[obj_order[i]];
    if (raw < 0 || raw >= n_mor) {
      report.add("object '" + c.objects_[i] + "' has no identity");
      continue;
    }
    int id = built.morphism_index[raw];
    if (c.morphisms_[id].src != i || c.morphisms_[id].tgt != i) {
      report.add("identity '" + c.morphisms_[id].id + "' of '" +
                 c.objects_[i] + "' is not an endomorphism of it");
      continue;
    }
    c.identity_[i] = id;
  }
  {
    std::unordered_set<int> ids(c.identity_.begin(), c.identity_.end());
    if (report.ok() && ids.size() != c.identity_.size()) {
      report.add("one morphism is the identity of two objects");
    }
  }
  if (!report.ok()) return built;

  c.out_.assign(n_obj, {});
  c.in_.assign(n_obj, {});
  c.out_pos_.assign(n_mor, 0);
  c.hom_.assign(static_cast<std::size_t>(n_obj) * n_obj, {});
  for (int m = 0; m < n_mor; ++m) {
    c.out_pos_[m] = static_cast<int>(c.out_[c.src(m)].size());
    c.out_[c.src(m)].push_back(m);
    c.in_[c.tgt(m)].push_back(m);
    c.hom_[static_cast<std::size_t>(c.src(m)) * n_obj + c.tgt(m)].push_back(m);
  }
  c.comp_offset_.assign(n_mor, 0);
  std::size_t total = 0;
  for (int f = 0; f < n_mor; ++f) {
    c.comp_offset_[f] = total;
    total += c.out_[c.tgt(f)].size();
  }
  c.comp_.assign(total, -1);

  for (int f = 0; f < n_mor; ++f) {
    const int raw_f = mor_order[f];
    for (int g : c.out_[c.tgt(f)]) {
      const int raw_g = mor_order[g];
      int raw_h = -1;
      auto it = composites_.find(pair_key(raw_g, raw_f));
      if (it != composites_.end()) {
        raw_h = it->second;
      } else if (compose_fn_ && !c.is_identity(f) && !c.is_identity(g)) {
        raw_h = compose_fn_(raw_g, raw_f);
      }
      const std::string where =
          "(" + c.morphisms_[g].id + ", " + c.morphisms_[f].id + ")";
      int h = -1;
      if (raw_h >= 0 && raw_h < n_mor) h = built.morphism_index[raw_h];
      if (c.is_identity(f) || c.is_identity(g)) {
        const int expected = c.is_identity(f) ? g : f;
        if (raw_h >= 0 && h != expected) {
          report.add("unit law fails at " + where + ": expected " +
                     c.morphisms_[expected].id + ", got " +
                     (h >= 0 ? c.morphisms_[h].id : std::string("?")));
        }
        h = expected;
      } else if (h < 0) {
        report.add("missing composite at " + where);
        continue;
      } else if (c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g)) {
        report.add("composite at " + where + " = " + c.morphisms_[h].id +
                   " has the wrong endpoints");
        continue;
      }
      c.comp_[c.comp_offset_[f] + c.out_pos_[g]] = h;
    }
  }
  if (!report.ok()) return built;

  for (int i = 0; i < n_obj; ++i) c.object_lookup_.emplace(c.objects_[i], i);
  for (int m = 0; m < n_mor; ++m) c.morphism_lookup_.emplace(c.morphisms_[m].id, m);

  if (check_associativity) {
    ValidationReport laws = check_category_laws(c);
    for (auto& issue : laws.issues) report.add(std::move(issue));
  }
  built.cat = std::move(cat);
  return built;
}

ValidationReport check_category_laws(const FinCat& c) {
  ValidationReport report;
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.compose(f, c.identity(c.src(f))) != f ||
        c.compose(c.identity(c.tgt(f)), f) != f) {
      report.add("identity is not a unit for " + c.morphism_id(f));
    }
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      for (int h : c.out(c.tgt(g))) {
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
          report.add("associativity fails at (" + c.morphism_id(h) + ", " +
                     c.morphism_id(g) + ", " + c.morphism_id(f) + ")");
        }
      }
    }
  }
  return report;
}

// --- raw categories -----------------------------------------------------------

namespace {

struct RawAssembly {
  CatBuilder builder;
  ValidationReport report;
};

RawAssembly assemble_raw(const RawCategory& raw) {
  RawAssembly out;
  auto& b = out.builder;
  auto& report = out.report;
  std::unordered_map<std::string, int> obj;
  for (const auto& id : raw.objects) {
    if (obj.count(id)) {
      report.add("duplicate object id '" + id + "'");
      continue;
    }
    obj.emplace(id, b.add_object(id));
  }
  std::unordered_map<std::string, int> mor;
  std::unordered_map<std::string, std::pair<int, int>> ends;
  for (const auto& m : raw.morphisms) {
    auto s = obj.find(m.src);
    auto t = obj.find(m.tgt);
    if (s == obj.end() || t == obj.end()) {
      report.add("morphism '" + m.id + "' has dangling endpoint '" +
                 (s == obj.end() ? m.src : m.tgt) + "'");
      continue;
    }
    if (mor.count(m.id)) {
      report.add("duplicate morphism id '" + m.id + "'");
      continue;
    }
    mor.emplace(m.id, b.add_morphism(m.id, s->second, t->second));
  }
  for (const auto& m : raw.morphisms) {
    auto s = obj.find(m.src);
    auto t = obj.find(m.tgt);
    if (s != obj.end() && t != obj.end()) ends.emplace(m.id, std::pair{s->second, t->second});
  }
  for (const auto& id : raw.objects) {
    auto ox = obj.find(id);
    if (ox == obj.end()) continue;
    const int x = ox->second;
    std::string name = "id_" + id;
    if (raw.identities) {
      auto it = raw.identities->find(id);
      if (it == raw.identities->end()) {
        report.add("object '" + id + "' has no identity entry");
        continue;
      }
      name = it->second;
    }
    auto existing = mor.find(name);
    if (existing != mor.end()) {
      b.set_identity(x, existing->second);
    } else {
      int m = b.add_morphism(name, x, x);
      mor.emplace(name, m);
      ends.emplace(name, std::pair{x, x});
      b.set_identity(x, m);
    }
  }
  if (raw.identities) {
    for (const auto& [id, name] : *raw.identities) {
      if (!obj.count(id)) report.add("identity entry for unknown object '" + id + "'");
    }
  }
  std::unordered_map<std::uint64_t, std::string> seen;
  for (const auto& e : raw.composition) {
    auto g = mor.find(e.after);
    auto f = mor.find(e.before);
    auto h = mor.find(e.equals);
    if (g == mor.end() || f == mor.end() || h == mor.end()) {
      std::string bad = g == mor.end() ? e.after
                        : f == mor.end() ? e.before
                                         : e.equals;
      report.add("composition entry (" + e.after + ", " + e.before +
                 ") references unknown morphism '" + bad + "'");
      continue;
    }
    if (ends[e.before].second != ends[e.after].first) {
      report.add("composition entry (" + e.after + ", " + e.before +
                 ") is not a composable pair");
      continue;
    }
    const std::uint64_t key = pair_key(g->second, f->second);
    auto [it, fresh] = seen.emplace(key, e.equals);
    if (!fresh) {
      if (it->second != e.equals) {
        report.add("conflicting composites for (" + e.after + ", " +
                   e.before + "): " + it->second + " vs " + e.equals);
      }
      continue;
    }
    b.set_composite(g->second, f->second, h->second);
  }
  return out;
}

}  // namespace

ValidationReport check_raw_category(const RawCategory& raw) {
  RawAssembly a = assemble_raw(raw);
  if (!a.report.ok()) return a.report;
  return a.builder.check(true);
}

CatPtr validate_category(const RawCategory& raw) {
  RawAssembly a = assemble_raw(raw);
  if (!a.report.ok()) throw Error(ErrorKind::kMalformedTable, a.report.summary());
  return a.builder.build(true).cat;
}

// --- markings -----------------------------------------------------------------

std::size_t Marking::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<int> Marking::members() const {
  std::vector<int> out;
  for (std::size_t m = 0; m < bits_.size(); ++m) {
    if (bits_[m]) out.push_back(static_cast<int>(m));
  }
  return out;
}

ValidationReport check_marking(const FinCat& c, const Marking& marking) {
  ValidationReport report;
  if (marking.host_size() != static_cast<std::size_t>(c.num_morphisms())) {
    report.add("marking size does not match the category");
    return report;
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (!marking.contains(m) && is_iso(c, m)) {
      report.add("isomorphism '" + c.morphism_id(m) + "' is not marked");
    }
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (!marking.contains(f)) continue;
    for (int g : c.out(c.tgt(f))) {
      if (marking.contains(g) && !marking.contains(c.compose(g, f))) {
        report.add("composite of marked (" + c.morphism_id(g) + ", " +
                   c.morphism_id(f) + ") is not marked");
      }
    }
  }
  return report;
}

MarkedFinCat::MarkedFinCat(CatPtr cat, Marking marking)
    : cat_(std::move(cat)), marking_(std::move(marking)) {
  ValidationReport report = check_marking(*cat_, marking_);
  if (!report.ok()) throw Error(ErrorKind::kInvalidMarking, report.summary());
}

// --- functors -----------------------------------------------------------------

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  f.object_map.resize(c->num_objects());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  f.morphism_map.resize(c->num_morphisms());
  std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  Functor h{f.dom, g.cod, {}, {}};
  h.object_map.reserve(f.object_map.size());
  for (int y : f.object_map) h.object_map.push_back(g.object_map[y]);
  h.morphism_map.reserve(f.morphism_map.size());
  for (int n : f.morphism_map) h.morphism_map.push_back(g.morphism_map[n]);
  return h;
}

ValidationReport check_functor(const Functor& f) {
  ValidationReport report;
  const FinCat& c = *f.dom;
  const FinCat& d = *f.cod;
  if (f.object_map.size() != static_cast<std::size_t>(c.num_objects()) ||
      f.morphism_map.size() != static_cast<std::size_t>(c.num_morphisms())) {
    report.add("functor maps have the wrong size");
    return report;
  }
  for (int x : f.object_map) {
    if (x < 0 || x >= d.num_objects()) {
      report.add("object image out of range");
      return report;
    }
  }
  for (int n : f.morphism_map) {
    if (n < 0 || n >= d.num_morphisms()) {
      report.add("morphism image out of range");
      return report;
    }
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const int n = f.morphism_map[m];
    if (d.src(n) != f.object_map[c.src(m)] || d.tgt(n) != f.object_map[c.tgt(m)]) {
      report.add("endpoints of " + c.morphism_id(m) + " not preserved");
    }
  }
  if (!report.ok()) return report;
  for (int x = 0; x < c.num_objects(); ++x) {
    if (f.morphism_map[c.identity(x)] != d.identity(f.object_map[x])) {
      report.add("identity of " + c.object_id(x) + " not preserved");
    }
  }
  for (int a = 0; a < c.num_morphisms(); ++a) {
    for (int b : c.out(c.tgt(a))) {
      if (f.morphism_map[c.compose(b, a)] !=
          d.compose(f.morphism_map[b], f.morphism_map[a])) {
        report.add("composite (" + c.morphism_id(b) + ", " + c.morphism_id(a) +
                   ") not preserved");
      }
    }
  }
  return report;
}

bool is_marked_functor(const Functor& f, const Marking& dom_marking,
                       const Marking& cod_marking) {
  for (std::size_t m = 0; m < f.morphism_map.size(); ++m) {
    if (dom_marking.contains(static_cast<int>(m)) &&
        !cod_marking.contains(f.morphism_map[m])) {
      return false;
    }
  }
  return true;
}

ValidationReport check_nat_trans(const NatTrans& alpha) {
  ValidationReport report;
  const FinCat& c = *alpha.source.dom;
  const FinCat& d = *alpha.source.cod;
  if (alpha.components.size() != static_cast<std::size_t>(c.num_objects())) {
    report.add("wrong number of components");
    return report;
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    const int a = alpha.components[x];
    if (d.src(a) != alpha.source.object_map[x] ||
        d.tgt(a) != alpha.target.object_map[x]) {
      report.add("component at " + c.object_id(x) + " has wrong endpoints");
    }
  }
  if (!report.ok()) return report;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const int lhs = d.compose(alpha.target.morphism_map[m], alpha.components[c.src(m)]);
    const int rhs = d.compose(alpha.components[c.tgt(m)], alpha.source.morphism_map[m]);
    if (lhs != rhs) report.add("naturality fails at " + c.morphism_id(m));
  }
  return report;
}

// --- operations ---------------------------------------------------------------

std::optional<int> inverse_of(const FinCat& c, int f) {
  const int x = c.src(f);
  const int y = c.tgt(f);
  for (int g : c.hom(y, x)) {
    if (c.compose(g, f) == c.identity(x) && c.compose(f, g) == c.identity(y)) {
      return g;
    }
  }
  return std::nullopt;
}

bool is_iso(const FinCat& c, int f) {
  if (f < 0 || f >= c.num_morphisms()) {
    throw Error(ErrorKind::kUnknownMorphism, "index " + std::to_string(f));
  }
  return inverse_of(c, f).has_value();
}

Marking iso_marking(const FinCat& c) {
  std::vector<bool> bits(c.num_morphisms(), false);
  for (int m = 0; m < c.num_morphisms(); ++m) bits[m] = is_iso(c, m);
  return Marking(std::move(bits));
}

Marking saturate_marking(const FinCat& c, const std::vector<int>& seed) {
  std::vector<bool> bits = iso_marking(c).bits();
  for (int m : seed) {
    if (m < 0 || m >= c.num_morphisms()) {
      throw Error(ErrorKind::kUnknownMorphism, "index " + std::to_string(m));
    }
    bits[m] = true;
  }
  std::vector<int> work;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (bits[m]) work.push_back(m);
  }
  while (!work.empty()) {
    const int m = work.back();
    work.pop_back();
    auto mark = [&](int h) {
      if (!bits[h]) {
        bits[h] = true;
        work.push_back(h);
      }
    };
    for (int g : c.out(c.tgt(m))) {
      if (bits[g]) mark(c.compose(g, m));
    }
    for (int f : c.in(c.src(m))) {
      if (bits[f]) mark(c.compose(m, f));
    }
  }
  return Marking(std::move(bits));
}

MarkedFinCat flat_marking(const CatPtr& c) {
  return MarkedFinCat(c, iso_marking(*c));
}

MarkedFinCat sharp_marking(const CatPtr& c) {
  return MarkedFinCat(c, Marking(std::vector<bool>(c->num_morphisms(), true)));
}

CatPtr opposite(const FinCat& c) {
  CatBuilder b;
  for (int x = 0; x < c.num_objects(); ++x) b.add_object(c.object_id(x));
  for (int m = 0; m < c.num_morphisms(); ++m) {
    b.add_morphism(c.morphism_id(m), c.tgt(m), c.src(m));
  }
  for (int x = 0; x < c.num_objects(); ++x) b.set_identity(x, c.identity(x));
  b.set_compose_fn([&c](int g, int f) { return c.compose(f, g); });
  return b.build(false).cat;
}

MarkedFinCat opposite(const MarkedFinCat& c) {
  return MarkedFinCat(opposite(c.cat()), c.marking());
}

ProductCat product_with_index(const MarkedFinCat& a, const MarkedFinCat& b) {
  const FinCat& ca = a.cat();
  const FinCat& cb = b.cat();
  const int nb = cb.num_objects();
  const int mb = cb.num_morphisms();
  CatBuilder builder;
  for (int x = 0; x < ca.num_objects(); ++x) {
    for (int y = 0; y < nb; ++y) {
      builder.add_object(tuple_id({ca.object_id(x), cb.object_id(y)}));
    }
  }
  for (int f = 0; f < ca.num_morphisms(); ++f) {
    for (int g = 0; g < mb; ++g) {
      builder.add_morphism(tuple_id({ca.morphism_id(f), cb.morphism_id(g)}),
                           ca.src(f) * nb + cb.src(g), ca.tgt(f) * nb + cb.tgt(g));
    }
  }
  for (int x = 0; x < ca.num_objects(); ++x) {
    for (int y = 0; y < nb; ++y) {
      builder.set_identity(x * nb + y, ca.identity(x) * mb + cb.identity(y));
    }
  }
  builder.set_compose_fn([&](int h, int k) {
    return ca.compose(h / mb, k / mb) * mb + cb.compose(h % mb, k % mb);
  });
  auto built = builder.build(false);

  ProductCat out;
  out.right_objects = nb;
  out.right_morphisms = mb;
  out.object_index = built.object_index;
  out.morphism_index = built.morphism_index;
  out.object_parts.resize(built.object_index.size());
  for (std::size_t i = 0; i < built.object_index.size(); ++i) {
    out.object_parts[built.object_index[i]] = {static_cast<int>(i) / nb,
                                               static_cast<int>(i) % nb};
  }
  std::vector<bool> marked(built.morphism_index.size(), false);
  out.morphism_parts.resize(built.morphism_index.size());
  for (std::size_t i = 0; i < built.morphism_index.size(); ++i) {
    const int f = static_cast<int>(i) / mb;
    const int g = static_cast<int>(i) % mb;
    out.morphism_parts[built.morphism_index[i]] = {f, g};
    marked[built.morphism_index[i]] = a.is_marked(f) && b.is_marked(g);
  }
  out.cat = MarkedFinCat(built.cat, Marking(std::move(marked)));
  return out;
}

MarkedFinCat product(const MarkedFinCat& a, const MarkedFinCat& b) {
  return product_with_index(a, b).cat;
}

Functor product_functor(const ProductCat& from, const ProductCat& to, const Functor& u,
                        const Functor& v) {
  const FinCat& c = from.cat.cat();
  Functor out{from.cat.cat_ptr(), to.cat.cat_ptr(), {}, {}};
  for (int x = 0; x < c.num_objects(); ++x) {
    auto [a, b] = from.object_parts[x];
    out.object_map.push_back(to.object(u.on_object(a), v.on_object(b)));
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    auto [a, b] = from.morphism_parts[m];
    out.morphism_map.push_back(to.morphism(u(a), v(b)));
  }
  return out;
}

Subcategory wide_subcategory(const FinCat& c, const std::vector<bool>& keep) {
  Subcategory sub;
  CatBuilder b;
  for (int x = 0; x < c.num_objects(); ++x) {
    b.add_object(c.object_id(x));
    sub.parent_object.push_back(x);
    sub.object_of.push_back(x);
  }
  sub.morphism_of.assign(c.num_morphisms(), -1);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (!keep[m] && !c.is_identity(m)) continue;
    sub.morphism_of[m] = b.add_morphism(c.morphism_id(m), c.src(m), c.tgt(m));
    sub.parent_morphism.push_back(m);
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    b.set_identity(x, sub.morphism_of[c.identity(x)]);
  }
  const auto& parent = sub.parent_morphism;
  const auto& of = sub.morphism_of;
  b.set_compose_fn([&](int g, int f) { return of[c.compose(parent[g], parent[f])]; });
  auto built = b.build(false);
  sub.cat = built.cat;
  // Builder indices already follow id order, so they are final indices.
  return sub;
}

Subcategory full_subcategory(const FinCat& c, const std::vector<int>& objects) {
  Subcategory sub;
  std::vector<int> sorted = objects;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  sub.object_of.assign(c.num_objects(), -1);
  sub.morphism_of.assign(c.num_morphisms(), -1);
  CatBuilder b;
  for (int x : sorted) {
    sub.object_of[x] = b.add_object(c.object_id(x));
    sub.parent_object.push_back(x);
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (sub.object_of[c.src(m)] < 0 || sub.object_of[c.tgt(m)] < 0) continue;
    sub.morphism_of[m] = b.add_morphism(c.morphism_id(m), sub.object_of[c.src(m)],
                                        sub.object_of[c.tgt(m)]);
    sub.parent_morphism.push_back(m);
  }
  for (int x : sorted) b.set_identity(sub.object_of[x], sub.morphism_of[c.identity(x)]);
  const auto& parent = sub.parent_morphism;
  const auto& of = sub.morphism_of;
  b.set_compose_fn([&](int g, int f) { return of[c.compose(parent[g], parent[f])]; });
  sub.cat = b.build(false).cat;
  return sub;
}

CatPtr marked_subcategory(const MarkedFinCat& c) {
  return wide_subcategory(c.cat(), c.marking().bits()).cat;
}

// --- ids ----------------------------------------------------------------------

std::string tuple_id(std::span<const std::string> parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += ')';
  return out;
}

std::string tuple_id(std::initializer_list<std::string_view> parts) {
  std::string out = "(";
  bool first = true;
  for (auto p : parts) {
    if (!first) out += ',';
    first = false;
    out += p;
  }
  out += ')';
  return out;
}

// --- shapes -------------------------------------------------------------------

namespace shapes {
namespace {

CatPtr make(std::vector<std::string> objects,
            std::vector<RawCategory::Morphism> morphisms,
            std::vector<RawCategory::Composite> composition) {
  RawCategory raw;
  raw.objects = std::move(objects);
  raw.morphisms = std::move(morphisms);
  raw.composition = std::move(composition);
  return validate_category(raw);
}

}  // namespace

CatPtr terminal() { return make({"*"}, {}, {}); }

CatPtr discrete(int n) {
  std::vector<std::string> objs;
  for (int i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  return make(objs, {}, {});
}

CatPtr ordinal(int n) {
  std::vector<std::string> objs;
  for (int i = 0; i <= n; ++i) objs.push_back(std::to_string(i));
  std::vector<RawCategory::Morphism> mors;
  auto name = [](int i, int j) {
    return std::to_string(i) + "<" + std::to_string(j);
  };
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      mors.push_back({name(i, j), std::to_string(i), std::to_string(j)});
    }
  }
  std::vector<RawCategory::Composite> comps;
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) comps.push_back({name(j, k), name(i, j), name(i, k)});
    }
  }
  return make(objs, mors, comps);
}

CatPtr walking_arrow() { return make({"0", "1"}, {{"u", "0", "1"}}, {}); }

CatPtr walking_iso() {
  return make({"0", "1"}, {{"u", "0", "1"}, {"v", "1", "0"}},
              {{"v", "u", "id_0"}, {"u", "v", "id_1"}});
}

CatPtr parallel_pair() {
  return make({"0", "1"}, {{"f", "0", "1"}, {"g", "0", "1"}}, {});
}

CatPtr split_idempotent() {
  return make({"a", "b"}, {{"r", "a", "b"}, {"s", "b", "a"}, {"e", "a", "a"}},
              {{"r", "s", "id_b"},
               {"s", "r", "e"},
               {"e", "e", "e"},
               {"r", "e", "r"},
               {"e", "s", "s"}});
}

CatPtr monoid3() {
  return make({"*"}, {{"a", "*", "*"}, {"z", "*", "*"}},
              {{"a", "a", "z"}, {"a", "z", "z"}, {"z", "a", "z"}, {"z", "z", "z"}});
}

CatPtr span() {
  return make({"a", "x", "y"}, {{"p", "a", "x"}, {"q", "a", "y"}}, {});
}

CatPtr cospan() {
  return make({"b", "x", "y"}, {{"g", "x", "b"}, {"h", "y", "b"}}, {});
}

}  // namespace shapes
}  // namespace laxcat
