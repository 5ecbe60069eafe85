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

// Backtracking enumeration of functors and natural transformations between
// finite categories. Everything that needs "all functors C → D with some
// property" goes through here: functor categories, section categories,
// isomorphism search and diagram generation.

#ifndef LAXCAT_SEARCH_HPP
#define LAXCAT_SEARCH_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "laxcat/fincat.hpp"

namespace laxcat {

// Counts search nodes; throws kSearchBudgetExceeded when exhausted.
class SearchBudget {
 public:
  explicit SearchBudget(std::size_t nodes) : remaining_(nodes), initial_(nodes) {}

  void spend() {
    if (remaining_ == 0) {
      throw Error(ErrorKind::kSearchBudgetExceeded,
                  "search budget of " + std::to_string(initial_) +
                      " nodes exhausted");
    }
    --remaining_;
  }
  std::size_t used() const { return initial_ - remaining_; }

 private:
  std::size_t remaining_;
  std::size_t initial_;
};

struct FunctorConstraints {
  // Empty functions allow everything.
  std::function<bool(int x, int y)> object_allowed;
  std::function<bool(int m, int n)> morphism_allowed;
  // Per object of the domain: forced image, or -1.
  std::vector<int> fixed_objects;
  // Require injectivity on objects and on morphisms.
  bool injective = false;
};

// Return false to stop the enumeration.
using FunctorVisitor = std::function<bool(const std::vector<int>& object_map,
                                          const std::vector<int>& morphism_map)>;

// Visits every functor c → d satisfying the constraints. Returns false iff
// the visitor stopped early.
bool for_each_functor(const FinCat& c, const FinCat& d,
                      const FunctorConstraints& constraints,
                      const FunctorVisitor& visit,
                      SearchBudget* budget = nullptr);

using ComponentFilter = std::function<bool(int x, int component)>;
using NatTransVisitor = std::function<bool(const std::vector<int>& components)>;

// Visits every natural transformation F ⇒ G between functors c → d given by
// their object and morphism maps.
bool for_each_nat_trans(const FinCat& c, const FinCat& d,
                        const std::vector<int>& src_objects,
                        const std::vector<int>& src_morphisms,
                        const std::vector<int>& tgt_objects,
                        const std::vector<int>& tgt_morphisms,
                        const ComponentFilter& filter,
                        const NatTransVisitor& visit,
                        SearchBudget* budget = nullptr);

}  // namespace laxcat

#endif  // LAXCAT_SEARCH_HPP
