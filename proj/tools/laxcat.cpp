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

// laxcat: constructions on finite marked categories and theorem checks.
// Exit codes: 0 ok, 1 counterexample, 2 resource bound, 3 invalid input.

#include <charconv>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "laxcat/check.hpp"
#include "laxcat/constructions.hpp"
#include "laxcat/equiv.hpp"
#include "laxcat/grothendieck.hpp"
#include "laxcat/limits.hpp"

using namespace laxcat;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kResource = 2;
constexpr int kInput = 3;

struct Common {
  std::string out;
  int word_bound = LocalizationBounds{}.word_bound;
  std::string size_bound;
  std::string probes;
};

// "M" caps morphisms; "O,M" caps objects and morphisms.
Bounds parse_size_bound(const std::string& s, Bounds b) {
  if (s.empty()) return b;
  auto number = [&](std::string_view part) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size() || v == 0) {
      throw Error(ErrorKind::kParseError, "bad --size-bound \"" + s + "\"");
    }
    return v;
  };
  auto comma = s.find(',');
  if (comma == std::string::npos) {
    b.max_morphisms = number(s);
  } else {
    b.max_objects = number(std::string_view(s).substr(0, comma));
    b.max_morphisms = number(std::string_view(s).substr(comma + 1));
  }
  return b;
}

Bounds size_of(const Common& c) { return parse_size_bound(c.size_bound, Bounds{4096, 1 << 15}); }

LocalizationBounds localization_of(const Common& c) {
  LocalizationBounds l;
  if (c.word_bound < 1) throw Error(ErrorKind::kParseError, "--word-bound must be positive");
  l.word_bound = c.word_bound;
  if (!c.size_bound.empty()) l.morphism_bound = size_of(c).max_morphisms;
  return l;
}

std::vector<Probe> probes_of(const Common& c) {
  if (c.probes.empty()) return probe_suite();
  std::filesystem::path p(c.probes);
  return probes_from_json(load_json(p), p.parent_path());
}

void emit(const Common& c, const json& j) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_json(c.out, j);
  }
}

MarkedFinCat read_category(const std::string& file) { return category_from_json(load_json(file)); }

CatDiagram read_diagram(const std::string& file) {
  std::filesystem::path p(file);
  return diagram_from_json(load_json(p), p.parent_path());
}

int object_arg(const FinCat& c, const std::string& id) { return c.object_index(id); }

std::string kind_of(const json& j) {
  if (!j.is_object()) return "unknown";
  if (j.contains("fibers")) return "diagram";
  if (j.contains("arrows")) return "presentation";
  if (j.contains("sizes")) return "set_diagram";
  if (j.contains("probes")) return "probes";
  if (j.contains("theorem") && j.contains("instance")) return "failure";
  return "category";
}

int run_localization(const Common& c, const LocalizationResult& l) {
  emit(c, localization_to_json(l));
  if (!l.completed()) {
    std::cerr << l.bound->message() << "\n";
    return kResource;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lax limits and colimits of finite marked categories"};
  app.require_subcommand(1);
  Common common;
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", common.out, "write the result here"); };
  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--word-bound", common.word_bound, "longest word explored by localization");
    cmd->add_option("--size-bound", common.size_bound, "cap on derived categories: MORPHISMS or OBJECTS,MORPHISMS");
  };

  std::string file, file2, object;
  bool cartesian = false, marked = false, probe_check = false;

  auto* validate = app.add_subcommand("validate", "parse and validate any input file");
  validate->add_option("file", file)->required();
  add_out(validate);

  auto* tw = app.add_subcommand("tw", "twisted arrow category");
  tw->add_option("category", file)->required();
  add_out(tw);
  add_bounds(tw);

  auto* sl = app.add_subcommand("slice", "slice over an object");
  auto* cosl = app.add_subcommand("coslice", "coslice under an object");
  for (auto* cmd : {sl, cosl}) {
    cmd->add_option("category", file)->required();
    cmd->add_option("--object", object, "object id")->required();
    add_out(cmd);
  }

  auto* groth = app.add_subcommand("grothendieck", "Grothendieck construction of a diagram");
  groth->add_option("diagram", file)->required();
  groth->add_flag("--cartesian", cartesian, "contravariant construction");
  add_out(groth);
  add_bounds(groth);

  auto* secs = app.add_subcommand("sections", "sections of the Grothendieck construction");
  secs->add_option("diagram", file)->required();
  secs->add_flag("--marked", marked, "only marked sections");
  secs->add_flag("--cartesian", cartesian, "sections of the cartesian construction");
  add_out(secs);
  add_bounds(secs);

  auto* laxlim = app.add_subcommand("laxlim", "lax limit");
  auto* oplaxlim = app.add_subcommand("oplaxlim", "oplax limit");
  for (auto* cmd : {laxlim, oplaxlim}) {
    cmd->add_option("diagram", file)->required();
    add_out(cmd);
    add_bounds(cmd);
  }

  auto* laxcolim = app.add_subcommand("laxcolim", "lax colimit by localization");
  auto* oplaxcolim = app.add_subcommand("oplaxcolim", "oplax colimit by localization");
  for (auto* cmd : {laxcolim, oplaxcolim}) {
    cmd->add_option("diagram", file)->required();
    cmd->add_flag("--probe-check", probe_check, "also compare mapping-out categories on the probes");
    cmd->add_option("--probes", common.probes, "probe manifest");
    add_out(cmd);
    add_bounds(cmd);
  }

  auto* loc = app.add_subcommand("localize", "localize a marked category or a presentation");
  loc->add_option("file", file)->required();
  add_out(loc);
  add_bounds(loc);

  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two categories");
  equiv->add_option("first", file)->required();
  equiv->add_option("second", file2)->required();
  add_out(equiv);

  auto* skel = app.add_subcommand("skeleton", "skeleton of a category");
  skel->add_option("category", file)->required();
  add_out(skel);

  CheckOptions opt;
  std::string theorem, params_file, replay;
  int max_objects = 0, max_morphisms = 0, max_skip = -1;
  bool timing = false, no_minimize = false;
  auto* check = app.add_subcommand("check", "seeded theorem check");
  check->add_option("theorem", theorem)->check(CLI::IsMember(theorem_names()));
  check->add_option("--seed", opt.seed);
  check->add_option("--count", opt.count)->check(CLI::NonNegativeNumber);
  check->add_option("--jobs", opt.jobs)->check(CLI::PositiveNumber);
  check->add_option("--max-objects", max_objects)->check(CLI::PositiveNumber);
  check->add_option("--max-morphisms", max_morphisms)->check(CLI::NonNegativeNumber);
  check->add_option("--max-skip", max_skip)->check(CLI::NonNegativeNumber);
  check->add_option("--out", opt.out, "folder for counterexample dumps");
  check->add_option("--probes", common.probes, "probe manifest");
  check->add_option("--params", params_file, "generator parameter manifest");
  check->add_option("--replay", replay, "re-evaluate a dumped failure.json");
  check->add_flag("--timing", timing, "include wall time in the report");
  check->add_flag("--no-minimize", no_minimize, "dump failures unshrunk");
  add_bounds(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    Bounds size = size_of(common);
    if (*validate) {
      json j = load_json(file);
      std::string kind = kind_of(j);
      std::filesystem::path folder = std::filesystem::path(file).parent_path();
      if (kind == "diagram") diagram_from_json(j, folder);
      else if (kind == "presentation") {
        ValidationReport r = presentation_from_json(j).check();
        if (!r.ok()) throw Error(ErrorKind::kParseError, r.summary());
      } else if (kind == "set_diagram") set_diagram_from_json(j);
      else if (kind == "probes") probes_from_json(j, folder);
      else if (kind == "failure") default_count(j.at("theorem").get<std::string>());
      else category_from_json(j);
      emit(common, json{{"kind", kind}, {"valid", true}});
      return kOk;
    }
    if (*tw) {
      TwistedArrowCat t = twisted_arrow(read_category(file).cat_ptr(), size);
      emit(common, category_to_json(*t.cat));
      return kOk;
    }
    if (*sl || *cosl) {
      MarkedFinCat c = read_category(file);
      SliceCat s = *sl ? slice(c, object_arg(c.cat(), object)) : coslice(c, object_arg(c.cat(), object));
      emit(common, category_to_json(s.cat));
      return kOk;
    }
    if (*groth) {
      CatDiagram f = read_diagram(file);
      FiberedCat e = cartesian ? grothendieck_cart(f, size) : grothendieck_cocart(f, size);
      emit(common, category_to_json(e.total));
      return kOk;
    }
    if (*secs) {
      CatDiagram f = read_diagram(file);
      FiberedCat e = cartesian ? grothendieck_cart(f, size) : grothendieck_cocart(f, size);
      emit(common, category_to_json(*sections(e, marked, size).cat));
      return kOk;
    }
    if (*laxlim || *oplaxlim) {
      CatDiagram f = read_diagram(file);
      LaxLimitResult r = *laxlim ? lax_limit(f, size) : oplax_limit(f, size);
      emit(common, category_to_json(*r.cat));
      return kOk;
    }
    if (*laxcolim || *oplaxcolim) {
      CatDiagram f = read_diagram(file);
      bool oplax = static_cast<bool>(*oplaxcolim);
      LocalizationResult l = oplax ? oplax_colimit(f, localization_of(common), size)
                                   : lax_colimit(f, localization_of(common), size);
      if (!probe_check) return run_localization(common, l);
      ProbeVerdict v = probe_check_colimit_theorem(f, probes_of(common), oplax, size);
      json j = localization_to_json(l);
      j["probe_check"] = probe_verdict_to_json(v);
      emit(common, j);
      if (!v.ok()) return kCounterexample;
      return l.completed() ? kOk : kResource;
    }
    if (*loc) {
      json j = load_json(file);
      if (kind_of(j) == "presentation") {
        PresentedCat p = presentation_from_json(j);
        p.bounds = localization_of(common);
        return run_localization(common, solve_presentation(p));
      }
      return run_localization(common, localize(category_from_json(j), localization_of(common)));
    }
    if (*equiv) {
      EquivalenceVerdict v = is_equivalent(read_category(file).cat_ptr(), read_category(file2).cat_ptr());
      emit(common, verdict_to_json(v));
      return v.positive() ? kOk : kCounterexample;
    }
    if (*skel) {
      emit(common, category_to_json(*skeleton(read_category(file).cat_ptr()).cat));
      return kOk;
    }
    if (*check) {
      EvalContext ctx{localization_of(common), size, probes_of(common)};
      if (!replay.empty()) {
        Evaluation e = replay_failure(load_json(replay), ctx);
        const char* names[] = {"pass", "fail", "bound_exceeded"};
        emit(common, json{{"outcome", names[static_cast<int>(e.outcome)]}, {"reason", e.reason}});
        return e.outcome == Outcome::kPass ? kOk : e.outcome == Outcome::kFail ? kCounterexample : kResource;
      }
      if (theorem.empty()) throw Error(ErrorKind::kParseError, "check needs a theorem or --replay");
      opt.theorem = theorem;
      opt.localization = ctx.localization;
      opt.size = size;
      opt.probes = ctx.probes;
      opt.minimize = !no_minimize;
      if (max_objects > 0) opt.max_objects = max_objects;
      if (check->count("--max-morphisms")) opt.max_morphisms = max_morphisms;
      if (max_skip >= 0) opt.max_skip = max_skip;
      if (!params_file.empty()) opt.params = params_from_json(load_json(params_file), default_params(theorem));
      CheckReport report = run_check(opt);
      std::cout << report.to_json(timing).dump(2) << "\n";
      if (timing) std::cerr << "wall time " << report.wall_seconds << " s\n";
      for (const auto& f : report.failure_cases) std::cerr << "counterexample: " << (opt.out / f.file).string() << "\n";
      return report.exit_code();
    }
  } catch (const Error& e) {
    std::cerr << "laxcat: " << e.what() << "\n";
    return is_resource_error(e.kind()) ? kResource : kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "laxcat: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
