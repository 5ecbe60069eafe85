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

// Seeded random categories, markings and diagrams. Categories come from a
// random acyclic quiver: free category, then a random quotient by parallel
// path identifications, occasionally replaced by a curated non-poset seed.

#ifndef LAXCAT_GENERATOR_HPP
#define LAXCAT_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "laxcat/diagram.hpp"
#include "laxcat/fincat.hpp"
#include "laxcat/limits.hpp"

namespace laxcat {

struct GenParams {
  std::uint64_t seed = 0;
  int max_objects = 4;
  int max_morphisms = 14;  // non-identity
  double relation_density = 0.5;
  double marking_density = 0.3;
  int fiber_max_objects = 3;
  int fiber_max_morphisms = 4;  // non-identity
  double curated_probability = 0.15;
  int diagram_retries = 40;

  // Throws kParseError naming the offending field.
  void validate() const;
};

// mt19937_64 with explicit reductions, so streams are identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  // Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[below(i + 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; derives per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k);

struct Quiver {
  int num_objects = 0;
  std::vector<std::pair<int, int>> edges;  // must be acyclic
};

std::size_t path_count(const Quiver& q);
// Objects "0".."n-1", edges "f0", "f1", … and composites "g*f".
CatPtr free_category(const Quiver& q);
// Identifies random parallel paths of the free category, each candidate
// pair with probability `density`, closing under composition; then keeps
// merging until at most max_non_identity non-identity morphisms remain
// (when possible).
CatPtr random_quotient(const Quiver& q, double density, Rng& rng,
                       int max_non_identity = 1 << 20);

CatPtr gen_category(const GenParams& p, Rng& rng);
CatPtr gen_category(const GenParams& p);
MarkedFinCat gen_marking(const CatPtr& c, const GenParams& p, Rng& rng);
// Throws kGenerationExhausted after p.diagram_retries fresh fiber draws.
CatDiagram gen_diagram(const MarkedFinCat& base, const GenParams& p, Rng& rng);
// Set-valued diagram with values of size 1..3 (0 allowed when
// allow_empty).
SetDiagram gen_set_diagram(const CatPtr& base, const GenParams& p, Rng& rng,
                           bool allow_empty = false);

}  // namespace laxcat

#endif  // LAXCAT_GENERATOR_HPP
