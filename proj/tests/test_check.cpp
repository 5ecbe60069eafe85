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

#include <filesystem>

#include "doctest.h"
#include "laxcat/check.hpp"
#include "test_util.hpp"

using namespace laxcat;
using namespace laxcat::testing;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("laxcat-test-" + name);
  std::filesystem::remove_all(p);
  return p;
}

int total_fiber_objects(const CatDiagram& f) {
  int n = 0;
  for (const auto& c : f.fibers) n += c->num_objects();
  return n;
}

}  // namespace

TEST_CASE("theorem table") {
  CHECK(theorem_names().size() == 12);
  for (const auto& t : theorem_names()) {
    CHECK(default_count(t) > 0);
    CHECK_NOTHROW(default_params(t).validate());
  }
  CHECK(default_count("thm-lax-lim") == 200);
  CHECK(default_params("thm-lax-lim").max_objects == 4);
  CHECK(default_params("thm-lax-lim").max_morphisms == 14);
  CHECK(default_params("thm-lax-lim").fiber_max_objects == 3);
  CHECK_THROWS_AS(default_count("thm-nonsense"), Error);
}

TEST_CASE("small runs pass") {
  for (const auto& t : theorem_names()) {
    CAPTURE(t);
    CheckOptions o;
    o.theorem = t;
    o.seed = 11;
    o.count = t.find("probe") != std::string::npos ? 3 : 8;
    o.out = scratch("small");
    CheckReport r = run_check(o);
    CHECK(r.instances == o.count);
    CHECK(r.passes + r.failures + r.bound_exceeded == r.instances);
    CHECK(r.failures == 0);
    CHECK(r.exit_code() == 0);
  }
}

TEST_CASE("reports are deterministic") {
  for (const std::string t : {"thm-lax-lim", "cofinality-left", "pullback-remark"}) {
    CheckOptions o;
    o.theorem = t;
    o.seed = 5;
    o.count = 30;
    std::string first = run_check(o).to_json().dump();
    CHECK(run_check(o).to_json().dump() == first);
    o.jobs = 3;
    CHECK(run_check(o).to_json().dump() == first);
    o.seed = 6;
    CHECK(run_check(o).to_json().dump() != first);
  }
  // Timing only appears on request.
  CheckOptions o;
  o.theorem = "ff-lemma";
  o.count = 2;
  CheckReport r = run_check(o);
  CHECK_FALSE(r.to_json().contains("wall_seconds"));
  CHECK(r.to_json(true).contains("wall_seconds"));
}

TEST_CASE("instances replay from their serialization") {
  EvalContext ctx;
  for (const auto& t : theorem_names()) {
    CAPTURE(t);
    json inst = generate_instance(t, default_params(t), 99);
    CHECK(generate_instance(t, default_params(t), 99) == inst);
    json reparsed = json::parse(inst.dump());
    Evaluation a = evaluate_instance(t, inst, ctx);
    Evaluation b = replay_failure(json{{"theorem", t}, {"instance", reparsed}}, ctx);
    CHECK(a.outcome == b.outcome);
    CHECK(a.reason == b.reason);
  }
  CHECK_THROWS_AS(replay_failure(json{{"instance", json::object()}}, ctx), Error);
}

TEST_CASE("skips and the quota") {
  CheckOptions o;
  o.theorem = "thm-lax-lim";
  o.seed = 2;
  o.count = 20;
  o.size = Bounds{2, 4};
  CheckReport r = run_check(o);
  CHECK(r.failures == 0);
  CHECK(r.bound_exceeded > 1);
  CHECK(r.max_skip == 1);
  CHECK(r.exit_code() == 2);
  CHECK(r.skips.size() == static_cast<std::size_t>(r.bound_exceeded));
  o.max_skip = 20;
  CHECK(run_check(o).exit_code() == 0);
}

TEST_CASE("non-replete subcategories break the fully faithful lemma") {
  CatDiagram f = constant_diagram(flat_marking(shapes::terminal()), shapes::walking_iso());
  EvalContext ctx;
  json inst{{"diagram", diagram_to_json(f)}, {"subcategories", {{"*", {"0"}}}}};
  Evaluation e = evaluate_instance("ff-lemma", inst, ctx);
  CHECK(e.outcome == Outcome::kFail);
  CHECK(e.reason.find("essential image") != std::string::npos);
  inst["subcategories"]["*"] = {"0", "1"};
  CHECK(evaluate_instance("ff-lemma", inst, ctx).outcome == Outcome::kPass);
}

TEST_CASE("monotonicity rejects a smaller marking") {
  CatDiagram f = point_to_arrow(true);
  json inst{{"diagram", diagram_to_json(f)}, {"larger_marking", json::array()}};
  CHECK_THROWS_AS(evaluate_instance("monotonicity", inst, EvalContext{}), Error);
  inst["larger_marking"] = {"u"};
  CHECK(evaluate_instance("monotonicity", inst, EvalContext{}).outcome == Outcome::kPass);
  // Flat diagram, larger marking: the marked sections sit inside.
  json flat{{"diagram", diagram_to_json(point_to_arrow(false))}, {"larger_marking", {"u"}}};
  CHECK(evaluate_instance("monotonicity", flat, EvalContext{}).outcome == Outcome::kPass);
}

TEST_CASE("minimize_diagram") {
  GenParams p = default_params("thm-lax-lim");
  Rng rng(404);
  CatDiagram f;
  do {
    f = gen_diagram(gen_marking(gen_category(p, rng), p, rng), p, rng);
  } while (f.base.cat().num_objects() < 3 || total_fiber_objects(f) < 5);

  // Keeps failing while the base has two objects.
  CatDiagram a = minimize_diagram(f, [](const CatDiagram& d) { return d.base.cat().num_objects() >= 2; });
  CHECK(a.base.cat().num_objects() == 2);
  CHECK(check_diagram(a).ok());
  for (const auto& c : a.fibers) CHECK(c->num_objects() >= 1);

  // Some fiber with two objects: one base object, a two-object fiber.
  auto two = [](const CatDiagram& d) {
    for (const auto& c : d.fibers) {
      if (c->num_objects() >= 2) return true;
    }
    return false;
  };
  if (two(f)) {
    CatDiagram b = minimize_diagram(f, two);
    CHECK(b.base.cat().num_objects() == 1);
    CHECK(b.fibers[0]->num_objects() == 2);
    CHECK(check_diagram(b).ok());
  }

  // Never failing below the input: unchanged.
  CatDiagram c = minimize_diagram(f, [&](const CatDiagram& d) {
    return d.base.cat().num_objects() == f.base.cat().num_objects() && total_fiber_objects(d) == total_fiber_objects(f);
  });
  CHECK(c.base.cat() == f.base.cat());
  CHECK(total_fiber_objects(c) == total_fiber_objects(f));
}

TEST_CASE("minimize_set_diagram and set diagram files") {
  GenParams p = default_params("cofinality-left");
  Rng rng(8);
  SetDiagram f;
  do {
    f = gen_set_diagram(gen_category(p, rng), p, rng, false);
  } while (f.base->num_objects() < 3);
  json j = set_diagram_to_json(f);
  SetDiagram g = set_diagram_from_json(json::parse(j.dump()));
  CHECK(g.sizes == f.sizes);
  CHECK(g.action == f.action);
  CHECK(*g.base == *f.base);

  SetDiagram m = minimize_set_diagram(f, [](const SetDiagram& d) { return d.base->num_objects() >= 1; });
  CHECK(m.base->num_objects() == 1);
  CHECK(check_set_diagram(m).ok());

  json bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(set_diagram_from_json(bad), Error);
}

TEST_CASE("failure dumps") {
  CheckOptions o;
  o.theorem = "thm-lax-lim";
  o.seed = 3;
  o.count = 12;
  o.out = scratch("dumps");
  // Pretend every instance with a two-object base is a counterexample.
  o.evaluator = [](const json& inst) {
    CatDiagram f = diagram_from_json(inst.at("diagram"));
    if (f.base.cat().num_objects() >= 2) return Evaluation{Outcome::kFail, "two objects"};
    return Evaluation{Outcome::kPass, {}};
  };
  CheckReport r = run_check(o);
  REQUIRE(r.failures > 0);
  CHECK(r.exit_code() == 1);
  for (const auto& fc : r.failure_cases) {
    CAPTURE(fc.index);
    REQUIRE_FALSE(fc.file.empty());
    json dump = load_json(o.out / fc.file);
    CHECK(dump["theorem"] == "thm-lax-lim");
    CHECK(dump["index"] == fc.index);
    CHECK(dump["instance_seed"] == fc.instance_seed);
    CHECK(dump["reason"] == "two objects");
    CHECK(dump["params"] == params_to_json(r.params));
    CHECK(dump["instance"] == generate_instance("thm-lax-lim", r.params, fc.instance_seed));
    CatDiagram small = diagram_from_json(dump["minimized"]["diagram"]);
    CHECK(small.base.cat().num_objects() == 2);
    CHECK(std::filesystem::exists((o.out / fc.file).parent_path() / "diagram.json"));
    CHECK_FALSE(dump["replay"].empty());
    // The real theorem holds on the dumped instance.
    CHECK(replay_failure(dump, EvalContext{}).outcome == Outcome::kPass);
  }
  std::filesystem::remove_all(o.out);
}
