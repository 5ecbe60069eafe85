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

// Isomorphism and equivalence of finite categories. Equivalence is decided
// by comparing skeletons, so every positive answer carries an explicit
// functor and every negative one a certificate.

#ifndef LAXCAT_EQUIV_HPP
#define LAXCAT_EQUIV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "laxcat/fincat.hpp"

namespace laxcat {

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

enum class Verdict { kIsomorphic, kEquivalent, kInequivalent };
const char* to_string(Verdict v);

struct EquivalenceVerdict {
  Verdict verdict = Verdict::kInequivalent;
  std::optional<Functor> witness;  // C → D
  std::optional<Functor> inverse;  // D → C, inverse up to natural iso
  std::string certificate;         // set when negative
  std::size_t nodes = 0;           // search nodes spent

  bool positive() const { return verdict != Verdict::kInequivalent; }
};

struct Skeleton {
  CatPtr cat;
  Functor inclusion;   // skeleton → C
  Functor retraction;  // C → skeleton, x ↦ its representative
  std::vector<int> representative;  // object of C -> representative in C
};

// Representatives are the least object id of each isomorphism class.
Skeleton skeleton(const CatPtr& c);
// Number of isomorphism classes of objects.
int iso_class_count(const FinCat& c);

bool is_full(const Functor& f);
bool is_faithful(const Functor& f);
bool is_fully_faithful(const Functor& f);
bool is_essentially_surjective(const Functor& f);
// Functor, fully faithful and essentially surjective, checked exhaustively.
bool is_equivalence_functor(const Functor& f);

// Bijective functor search pruned by invariants. When markings are given,
// the witness must also match the markings exactly. Throws
// kSearchBudgetExceeded when the budget runs out.
EquivalenceVerdict is_isomorphic(const CatPtr& c, const CatPtr& d,
                                 std::size_t budget = kDefaultSearchBudget);
EquivalenceVerdict is_isomorphic(const MarkedFinCat& c, const MarkedFinCat& d,
                                 std::size_t budget = kDefaultSearchBudget);

// Isomorphism of skeletons, with the witness transported to c → d.
EquivalenceVerdict is_equivalent(const CatPtr& c, const CatPtr& d,
                                 std::size_t budget = kDefaultSearchBudget);

}  // namespace laxcat

#endif  // LAXCAT_EQUIV_HPP
