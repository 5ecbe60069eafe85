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

#include "laxcat/io.hpp"

#include <fstream>
#include <initializer_list>
#include <optional>
#include <map>
#include <set>

namespace laxcat {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParseError, what); }

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) parse_error(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) parse_error("unknown key \"" + key + "\" in " + where);
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) parse_error(where + " is missing \"" + key + "\"");
  return *it;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) parse_error(where + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> texts(const json& j, const std::string& where) {
  if (!j.is_array()) parse_error(where + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(text(e, where + " entry"));
  return out;
}

std::map<std::string, std::string> text_map(const json& j, const std::string& where) {
  if (!j.is_object()) parse_error(where + " must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = text(v, where + "." + k);
  return out;
}

json resolve(const json& j, const std::filesystem::path& folder) {
  if (j.is_string()) return load_json(folder / j.get<std::string>());
  return j;
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) parse_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// --- categories -------------------------------------------------------------

MarkedFinCat category_from_json(const json& j) {
  only_keys(j, {"objects", "morphisms", "identities", "composition", "marked"}, "category");
  RawCategory raw;
  raw.objects = texts(need(j, "objects", "category"), "objects");
  if (j.contains("morphisms")) {
    const json& ms = j["morphisms"];
    if (!ms.is_array()) parse_error("morphisms must be an array");
    for (const auto& m : ms) {
      only_keys(m, {"id", "src", "tgt"}, "morphism");
      raw.morphisms.push_back({text(need(m, "id", "morphism"), "id"), text(need(m, "src", "morphism"), "src"),
                               text(need(m, "tgt", "morphism"), "tgt")});
    }
  }
  if (j.contains("identities")) raw.identities = text_map(j["identities"], "identities");
  if (j.contains("composition")) {
    const json& cs = j["composition"];
    if (!cs.is_array()) parse_error("composition must be an array");
    for (const auto& c : cs) {
      only_keys(c, {"after", "before", "equals"}, "composite");
      raw.composition.push_back({text(need(c, "after", "composite"), "after"),
                                 text(need(c, "before", "composite"), "before"),
                                 text(need(c, "equals", "composite"), "equals")});
    }
  }
  CatPtr cat = validate_category(raw);
  std::vector<bool> bits(cat->num_morphisms(), false);
  for (int x = 0; x < cat->num_objects(); ++x) bits[cat->identity(x)] = true;
  if (j.contains("marked")) {
    for (const auto& id : texts(j["marked"], "marked")) bits[cat->morphism_index(id)] = true;
    return MarkedFinCat(cat, Marking(bits));
  }
  return flat_marking(cat);
}

json category_to_json(const FinCat& c, const Marking* marking) {
  json j;
  j["objects"] = json::array();
  for (int x = 0; x < c.num_objects(); ++x) j["objects"].push_back(c.object_id(x));
  j["morphisms"] = json::array();
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    j["morphisms"].push_back(
        {{"id", c.morphism_id(m)}, {"src", c.object_id(c.src(m))}, {"tgt", c.object_id(c.tgt(m))}});
  }
  j["identities"] = json::object();
  for (int x = 0; x < c.num_objects(); ++x) j["identities"][c.object_id(x)] = c.morphism_id(c.identity(x));
  j["composition"] = json::array();
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (int g : c.out(c.tgt(f))) {
      if (c.is_identity(g)) continue;
      j["composition"].push_back({{"after", c.morphism_id(g)},
                                  {"before", c.morphism_id(f)},
                                  {"equals", c.morphism_id(c.compose(g, f))}});
    }
  }
  if (marking) {
    j["marked"] = json::array();
    for (int m : marking->members()) {
      if (!c.is_identity(m)) j["marked"].push_back(c.morphism_id(m));
    }
  }
  return j;
}

json category_to_json(const MarkedFinCat& c) { return category_to_json(c.cat(), &c.marking()); }

// --- functors and diagrams --------------------------------------------------

Functor functor_from_json(const json& j, const CatPtr& dom, const CatPtr& cod) {
  only_keys(j, {"object_map", "morphism_map"}, "functor");
  std::map<std::string, std::string> om = text_map(need(j, "object_map", "functor"), "object_map");
  std::map<std::string, std::string> mm;
  if (j.contains("morphism_map")) mm = text_map(j["morphism_map"], "morphism_map");
  return functor_from_ids(dom, cod, om, mm);
}

json functor_to_json(const Functor& f) {
  json j;
  j["object_map"] = json::object();
  for (int x = 0; x < f.dom->num_objects(); ++x) {
    j["object_map"][f.dom->object_id(x)] = f.cod->object_id(f.object_map[x]);
  }
  j["morphism_map"] = json::object();
  for (int m = 0; m < f.dom->num_morphisms(); ++m) {
    j["morphism_map"][f.dom->morphism_id(m)] = f.cod->morphism_id(f.morphism_map[m]);
  }
  return j;
}

CatDiagram diagram_from_json(const json& j, const std::filesystem::path& folder) {
  only_keys(j, {"base", "fibers", "transitions"}, "diagram");
  MarkedFinCat base = category_from_json(resolve(need(j, "base", "diagram"), folder));
  const FinCat& b = base.cat();
  const json& fibers = need(j, "fibers", "diagram");
  if (!fibers.is_object()) parse_error("fibers must be an object");
  CatDiagram f{base, std::vector<CatPtr>(b.num_objects()), {}, {}};
  std::vector<Marking> markings(b.num_objects());
  bool any_marked = false;
  for (const auto& [id, value] : fibers.items()) {
    json cj = resolve(value, folder);
    any_marked = any_marked || cj.contains("marked");
    MarkedFinCat fc = category_from_json(cj);
    int i = b.object_index(id);
    f.fibers[i] = fc.cat_ptr();
    markings[i] = fc.marking();
  }
  for (int i = 0; i < b.num_objects(); ++i) {
    if (!f.fibers[i]) parse_error("no fiber given for " + b.object_id(i));
  }
  if (any_marked) f.fiber_markings = std::move(markings);

  std::vector<std::optional<Functor>> trans(b.num_morphisms());
  if (j.contains("transitions")) {
    const json& ts = j["transitions"];
    if (!ts.is_object()) parse_error("transitions must be an object");
    for (const auto& [id, value] : ts.items()) {
      int m = b.morphism_index(id);
      trans[m] = functor_from_json(value, f.fibers[b.src(m)], f.fibers[b.tgt(m)]);
    }
  }
  for (int m = 0; m < b.num_morphisms(); ++m) {
    if (!trans[m]) {
      if (!b.is_identity(m)) parse_error("no transition given for " + b.morphism_id(m));
      trans[m] = identity_functor(f.fibers[b.src(m)]);
    }
    f.transitions.push_back(std::move(*trans[m]));
  }
  validate_diagram(f);
  return f;
}

json diagram_to_json(const CatDiagram& f) {
  const FinCat& b = f.base.cat();
  json j;
  j["base"] = category_to_json(f.base);
  j["fibers"] = json::object();
  for (int i = 0; i < b.num_objects(); ++i) {
    j["fibers"][b.object_id(i)] = f.fiber_markings.empty()
                                      ? category_to_json(f.fiber(i))
                                      : category_to_json(f.fiber(i), &f.fiber_markings[i]);
  }
  j["transitions"] = json::object();
  for (int m = 0; m < b.num_morphisms(); ++m) {
    if (!b.is_identity(m)) j["transitions"][b.morphism_id(m)] = functor_to_json(f.transition(m));
  }
  return j;
}

// --- presentations ----------------------------------------------------------

PresentedCat presentation_from_json(const json& j) {
  only_keys(j, {"objects", "arrows", "relations", "marked"}, "presentation");
  PresentedCat p;
  p.objects = texts(need(j, "objects", "presentation"), "objects");
  std::map<std::string, int> obj, arrow;
  for (std::size_t x = 0; x < p.objects.size(); ++x) obj[p.objects[x]] = static_cast<int>(x);
  auto object = [&](const std::string& id) {
    auto it = obj.find(id);
    if (it == obj.end()) parse_error("unknown object " + id);
    return it->second;
  };
  if (j.contains("arrows")) {
    if (!j["arrows"].is_array()) parse_error("arrows must be an array");
    for (const auto& a : j["arrows"]) {
      only_keys(a, {"id", "src", "tgt"}, "arrow");
      std::string id = text(need(a, "id", "arrow"), "id");
      arrow[id] = static_cast<int>(p.arrows.size());
      p.arrows.push_back({id, object(text(need(a, "src", "arrow"), "src")),
                          object(text(need(a, "tgt", "arrow"), "tgt"))});
    }
  }
  auto path = [&](const json& pj) {
    std::vector<int> out;
    for (const auto& id : texts(pj, "path")) {
      auto it = arrow.find(id);
      if (it == arrow.end()) parse_error("unknown arrow " + id);
      out.push_back(it->second);
    }
    return out;
  };
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) parse_error("relations must be an array");
    for (const auto& r : j["relations"]) {
      only_keys(r, {"lhs", "rhs", "at"}, "relation");
      PresentedCat::Relation rel;
      rel.lhs = path(need(r, "lhs", "relation"));
      rel.rhs = path(need(r, "rhs", "relation"));
      if (r.contains("at")) {
        rel.src = object(text(r["at"], "at"));
      } else if (!rel.lhs.empty()) {
        rel.src = p.arrows[rel.lhs.front()].src;
      } else if (!rel.rhs.empty()) {
        rel.src = p.arrows[rel.rhs.front()].src;
      } else {
        parse_error("relation between two empty paths needs \"at\"");
      }
      p.relations.push_back(std::move(rel));
    }
  }
  ValidationReport r = p.check();
  if (!r.ok()) parse_error("invalid presentation: " + r.summary());
  if (j.contains("marked")) {
    std::vector<int> marked;
    for (const auto& id : texts(j["marked"], "marked")) {
      auto it = arrow.find(id);
      if (it == arrow.end()) parse_error("unknown arrow " + id);
      marked.push_back(it->second);
    }
    p = adjoin_inverses(p, marked);
  }
  return p;
}

json presentation_to_json(const PresentedCat& p) {
  json j;
  j["objects"] = p.objects;
  j["arrows"] = json::array();
  for (const auto& a : p.arrows) {
    j["arrows"].push_back({{"id", a.id}, {"src", p.objects[a.src]}, {"tgt", p.objects[a.tgt]}});
  }
  j["relations"] = json::array();
  for (const auto& r : p.relations) {
    json lhs = json::array(), rhs = json::array();
    for (int a : r.lhs) lhs.push_back(p.arrows[a].id);
    for (int a : r.rhs) rhs.push_back(p.arrows[a].id);
    json rel{{"lhs", lhs}, {"rhs", rhs}};
    if (r.lhs.empty() || r.rhs.empty()) rel["at"] = p.objects[r.src];
    j["relations"].push_back(std::move(rel));
  }
  return j;
}

// --- reports ----------------------------------------------------------------

json localization_to_json(const LocalizationResult& l) {
  json j;
  if (l.completed()) {
    j["status"] = "completed";
    j["category"] = category_to_json(*l.cat);
    if (l.quotient) j["quotient"] = functor_to_json(*l.quotient);
  } else {
    const BoundReport& b = *l.bound;
    j["status"] = b.kind == ErrorKind::kWordBoundExceeded ? "word_bound_exceeded" : "size_bound_exceeded";
    j["bound"] = {{"kind", std::string(to_string(b.kind))},
                  {"limit", b.limit},
                  {"frontier", b.frontier},
                  {"hom_src", b.hom_src},
                  {"hom_tgt", b.hom_tgt},
                  {"hom_size", b.hom_size},
                  {"message", b.message()}};
  }
  j["words_defined"] = l.words_defined;
  return j;
}

json verdict_to_json(const EquivalenceVerdict& v) {
  json j;
  j["verdict"] = to_string(v.verdict);
  if (v.witness) j["witness"] = functor_to_json(*v.witness);
  if (v.inverse) j["inverse"] = functor_to_json(*v.inverse);
  if (!v.positive()) j["certificate"] = v.certificate;
  return j;
}

json probe_verdict_to_json(const ProbeVerdict& v) {
  json j;
  j["ok"] = v.ok();
  j["probes"] = json::array();
  for (const auto& o : v.outcomes) j["probes"].push_back({{"probe", o.probe}, {"ok", o.ok}, {"detail", o.detail}});
  return j;
}

std::vector<Probe> probes_from_json(const json& j, const std::filesystem::path& folder) {
  only_keys(j, {"version", "probes"}, "probe manifest");
  std::vector<Probe> out;
  for (const json& entry : need(j, "probes", "probe manifest")) {
    only_keys(entry, {"name", "category"}, "probe");
    std::string name = text(need(entry, "name", "probe"), "probe name");
    out.push_back({name, category_from_json(resolve(need(entry, "category", "probe"), folder)).cat_ptr()});
  }
  if (out.empty()) parse_error("probe manifest lists no probes");
  return out;
}

json probes_to_json(const std::vector<Probe>& probes, int version) {
  json j;
  j["version"] = version;
  j["probes"] = json::array();
  for (const Probe& p : probes) j["probes"].push_back({{"name", p.name}, {"category", category_to_json(*p.cat)}});
  return j;
}

GenParams params_from_json(const json& j, GenParams p) {
  only_keys(j,
            {"seed", "max_objects", "max_morphisms", "relation_density", "marking_density",
             "fiber_max_objects", "fiber_max_morphisms", "curated_probability", "diagram_retries"},
            "params");
  try {
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_objects")) p.max_objects = j["max_objects"].get<int>();
    if (j.contains("max_morphisms")) p.max_morphisms = j["max_morphisms"].get<int>();
    if (j.contains("relation_density")) p.relation_density = j["relation_density"].get<double>();
    if (j.contains("marking_density")) p.marking_density = j["marking_density"].get<double>();
    if (j.contains("fiber_max_objects")) p.fiber_max_objects = j["fiber_max_objects"].get<int>();
    if (j.contains("fiber_max_morphisms")) p.fiber_max_morphisms = j["fiber_max_morphisms"].get<int>();
    if (j.contains("curated_probability")) p.curated_probability = j["curated_probability"].get<double>();
    if (j.contains("diagram_retries")) p.diagram_retries = j["diagram_retries"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("params: ") + e.what());
  }
  p.validate();
  return p;
}

json params_to_json(const GenParams& p) {
  return {{"seed", p.seed},
          {"max_objects", p.max_objects},
          {"max_morphisms", p.max_morphisms},
          {"relation_density", p.relation_density},
          {"marking_density", p.marking_density},
          {"fiber_max_objects", p.fiber_max_objects},
          {"fiber_max_morphisms", p.fiber_max_morphisms},
          {"curated_probability", p.curated_probability},
          {"diagram_retries", p.diagram_retries}};
}

}  // namespace laxcat
