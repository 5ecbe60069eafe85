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

// JSON file formats. Readers reject unknown keys and throw kParseError (or
// the validation error of the object being built).
//
//   category      {"objects", "morphisms": [{"id","src","tgt"}],
//                  "identities"?, "composition": [{"after","before","equals"}],
//                  "marked"?}
//   diagram       {"base", "fibers": {obj: category}, "transitions":
//                  {mor: {"object_map", "morphism_map"}}}; base and fibers
//                  may be file names, resolved against the diagram's folder
//   presentation  {"objects", "arrows": [{"id","src","tgt"}], "relations":
//                  [{"lhs": [ids], "rhs": [ids], "at"?}], "marked"?}; paths
//                  list arrows in the order they are traversed

#ifndef LAXCAT_IO_HPP
#define LAXCAT_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "laxcat/diagram.hpp"
#include "laxcat/equiv.hpp"
#include "laxcat/fincat.hpp"
#include "laxcat/generator.hpp"
#include "laxcat/localization.hpp"

namespace laxcat {

using json = nlohmann::ordered_json;

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

// A category without "marked" is flat. Listed marks are saturated with the
// identities; anything else that is not a valid marking is rejected.
MarkedFinCat category_from_json(const json& j);
json category_to_json(const FinCat& c, const Marking* marking = nullptr);
json category_to_json(const MarkedFinCat& c);

Functor functor_from_json(const json& j, const CatPtr& dom, const CatPtr& cod);
// Identities included.
json functor_to_json(const Functor& f);

CatDiagram diagram_from_json(const json& j, const std::filesystem::path& folder = {});
json diagram_to_json(const CatDiagram& f);

// "marked" arrows get formal inverses and inverse laws.
PresentedCat presentation_from_json(const json& j);
json presentation_to_json(const PresentedCat& p);

json localization_to_json(const LocalizationResult& l);
json verdict_to_json(const EquivalenceVerdict& v);
json probe_verdict_to_json(const ProbeVerdict& v);

// {"version", "probes": [{"name", "category"}]}; categories may be file names.
std::vector<Probe> probes_from_json(const json& j, const std::filesystem::path& folder = {});
json probes_to_json(const std::vector<Probe>& probes, int version = 1);

GenParams params_from_json(const json& j, GenParams defaults = {});
json params_to_json(const GenParams& p);

}  // namespace laxcat

#endif  // LAXCAT_IO_HPP
