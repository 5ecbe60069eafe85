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

// Seeded theorem checks. Each check generates instances, serializes them,
// and evaluates the serialized form, so a dumped failure replays through
// exactly the code path that produced it.

#ifndef LAXCAT_CHECK_HPP
#define LAXCAT_CHECK_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "laxcat/generator.hpp"
#include "laxcat/io.hpp"
#include "laxcat/localization.hpp"

namespace laxcat {

enum class Outcome { kPass, kFail, kSkip };

struct Evaluation {
  Outcome outcome = Outcome::kPass;
  std::string reason;
};

struct CheckOptions {
  std::string theorem;
  std::uint64_t seed = 0;
  int count = 0;  // 0: the theorem's default
  int jobs = 1;
  std::optional<int> max_objects;
  std::optional<int> max_morphisms;
  std::optional<GenParams> params;  // replaces the theorem defaults
  LocalizationBounds localization;
  Bounds size{4096, 1 << 15};
  std::optional<int> max_skip;  // default: count / 20
  std::filesystem::path out = "laxcat-failures";
  std::vector<Probe> probes = probe_suite();
  bool minimize = true;
  // Replaces the theorem's own evaluation; used to exercise the dump path.
  std::function<Evaluation(const json& instance)> evaluator;
};

struct FailureCase {
  int index = 0;
  std::uint64_t instance_seed = 0;
  std::string reason;
  std::string file;  // dumped instance, relative to the output folder
};

struct SkipCase {
  int index = 0;
  std::string reason;
};

struct CheckReport {
  std::string theorem;
  std::uint64_t seed = 0;
  int count = 0;
  GenParams params;
  int instances = 0;
  int passes = 0;
  int failures = 0;
  int bound_exceeded = 0;
  int max_skip = 0;
  std::vector<FailureCase> failure_cases;
  std::vector<SkipCase> skips;
  double wall_seconds = 0;

  // 0 pass, 1 counterexample, 2 too many bound skips.
  int exit_code() const;
  json to_json(bool timing = false) const;
};

struct EvalContext {
  LocalizationBounds localization;
  Bounds size{4096, 1 << 15};
  std::vector<Probe> probes = probe_suite();
};

const std::vector<std::string>& theorem_names();
int default_count(const std::string& theorem);
GenParams default_params(const std::string& theorem);

// The serialized instance for one seed. Throws kGenerationExhausted.
json generate_instance(const std::string& theorem, const GenParams& p, std::uint64_t instance_seed);
// Resource errors become kSkip; invalid input propagates.
Evaluation evaluate_instance(const std::string& theorem, const json& instance, const EvalContext& ctx);

CheckReport run_check(const CheckOptions& options);

// Replays a dumped failure file ({"theorem", "instance", …}).
Evaluation replay_failure(const json& dump, const EvalContext& ctx);

// Greedy shrinking: delete base objects, then fiber objects, while `fails`
// keeps returning true on the (re-validated) smaller diagram.
CatDiagram minimize_diagram(const CatDiagram& f, const std::function<bool(const CatDiagram&)>& fails);
SetDiagram minimize_set_diagram(const SetDiagram& f, const std::function<bool(const SetDiagram&)>& fails);

json set_diagram_to_json(const SetDiagram& f);
SetDiagram set_diagram_from_json(const json& j);

}  // namespace laxcat

#endif  // LAXCAT_CHECK_HPP
