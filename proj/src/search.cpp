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

#include "laxcat/search.hpp"

#include <algorithm>
#include <deque>

namespace laxcat {
namespace {

struct Triple {
  int g;
  int f;
  int h;  // g∘f, or -1 when the composite is an identity
};

class FunctorSearch {
 public:
  FunctorSearch(const FinCat& c, const FinCat& d, const FunctorConstraints& k,
                const FunctorVisitor& visit, SearchBudget* budget)
      : c_(c), d_(d), k_(k), visit_(visit), budget_(budget) {
    plan();
  }

  bool run() {
    om_.assign(c_.num_objects(), -1);
    mm_.assign(c_.num_morphisms(), -1);
    used_obj_.assign(d_.num_objects(), false);
    used_mor_.assign(d_.num_morphisms(), false);
    return search();
  }

 private:
  struct Step {
    bool is_object;
    int index;
  };

  void plan() {
    std::vector<bool> obj_done(c_.num_objects(), false);
    std::vector<bool> mor_done(c_.num_morphisms(), false);
    std::vector<int> step_of_mor(c_.num_morphisms(), -1);
    auto add_object = [&](int x) {
      obj_done[x] = true;
      steps_.push_back({true, x});
    };
    for (int root = 0; root < c_.num_objects(); ++root) {
      if (obj_done[root]) continue;
      add_object(root);
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int y = queue.front();
        queue.pop_front();
        auto visit_edge = [&](int m) {
          if (mor_done[m] || c_.is_identity(m)) return;
          const int other = c_.src(m) == y ? c_.tgt(m) : c_.src(m);
          if (!obj_done[other]) {
            add_object(other);
            queue.push_back(other);
          }
          mor_done[m] = true;
          step_of_mor[m] = static_cast<int>(steps_.size());
          steps_.push_back({false, m});
        };
        for (int m : c_.out(y)) visit_edge(m);
        for (int m : c_.in(y)) visit_edge(m);
      }
    }
    triggers_.assign(steps_.size(), {});
    for (int f = 0; f < c_.num_morphisms(); ++f) {
      if (c_.is_identity(f)) continue;
      for (int g : c_.out(c_.tgt(f))) {
        if (c_.is_identity(g)) continue;
        const int h = c_.compose(g, f);
        const bool h_id = c_.is_identity(h);
        int at = std::max(step_of_mor[f], step_of_mor[g]);
        if (!h_id) at = std::max(at, step_of_mor[h]);
        triggers_[at].push_back({g, f, h_id ? -1 : h});
      }
    }
  }

  bool consistent(int step) const {
    for (const Triple& t : triggers_[step]) {
      const int lhs = d_.compose(mm_[t.g], mm_[t.f]);
      const int rhs = t.h < 0 ? d_.identity(om_[c_.src(t.f)]) : mm_[t.h];
      if (lhs != rhs) return false;
    }
    return true;
  }

  // Depth-first over steps_, kept iterative: the step list can be long.
  bool search() {
    const std::size_t n = steps_.size();
    std::vector<std::size_t> next(n + 1, 0);
    std::size_t k = 0;
    bool entering = true;
    while (true) {
      if (entering) {
        if (budget_) budget_->spend();
        if (k == n) {
          if (!visit_(om_, mm_)) return false;
          if (k == 0) return true;
          --k;
          entering = false;
          continue;
        }
        next[k] = 0;
      }
      undo(k);
      if (advance(k, next[k])) {
        ++k;
        entering = true;
      } else {
        if (k == 0) return true;
        --k;
        entering = false;
      }
    }
  }

  void undo(std::size_t k) {
    const Step& step = steps_[k];
    if (step.is_object) {
      int& y = om_[step.index];
      if (y >= 0 && k_.injective) used_obj_[y] = false;
      y = -1;
    } else {
      int& n = mm_[step.index];
      if (n >= 0 && k_.injective) used_mor_[n] = false;
      n = -1;
    }
  }

  // Assigns the first admissible candidate at or after `from`.
  bool advance(std::size_t k, std::size_t& from) {
    const Step& step = steps_[k];
    if (step.is_object) {
      const int x = step.index;
      const bool fixed = !k_.fixed_objects.empty() && k_.fixed_objects[x] >= 0;
      const std::size_t count = fixed ? 1 : static_cast<std::size_t>(d_.num_objects());
      for (; from < count; ++from) {
        const int y = fixed ? k_.fixed_objects[x] : static_cast<int>(from);
        if (k_.object_allowed && !k_.object_allowed(x, y)) continue;
        if (k_.injective && used_obj_[y]) continue;
        om_[x] = y;
        mm_[c_.identity(x)] = d_.identity(y);
        if (k_.injective) used_obj_[y] = true;
        ++from;
        return true;
      }
      return false;
    }
    const int f = step.index;
    const auto& hom = d_.hom(om_[c_.src(f)], om_[c_.tgt(f)]);
    for (; from < hom.size(); ++from) {
      const int n = hom[from];
      if (k_.morphism_allowed && !k_.morphism_allowed(f, n)) continue;
      if (k_.injective && used_mor_[n]) continue;
      mm_[f] = n;
      if (!consistent(k)) {
        mm_[f] = -1;
        continue;
      }
      if (k_.injective) used_mor_[n] = true;
      ++from;
      return true;
    }
    return false;
  }

  const FinCat& c_;
  const FinCat& d_;
  const FunctorConstraints& k_;
  const FunctorVisitor& visit_;
  SearchBudget* budget_;
  std::vector<Step> steps_;
  std::vector<std::vector<Triple>> triggers_;
  std::vector<int> om_, mm_;
  std::vector<bool> used_obj_, used_mor_;
};

}  // namespace

bool for_each_functor(const FinCat& c, const FinCat& d,
                      const FunctorConstraints& constraints,
                      const FunctorVisitor& visit, SearchBudget* budget) {
  if (c.num_objects() > 0 && d.num_objects() == 0) return true;
  FunctorSearch search(c, d, constraints, visit, budget);
  return search.run();
}

bool for_each_nat_trans(const FinCat& c, const FinCat& d,
                        const std::vector<int>& src_objects,
                        const std::vector<int>& src_morphisms,
                        const std::vector<int>& tgt_objects,
                        const std::vector<int>& tgt_morphisms,
                        const ComponentFilter& filter,
                        const NatTransVisitor& visit, SearchBudget* budget) {
  const int n = c.num_objects();
  // Naturality square for m is checked once both endpoints have components.
  std::vector<std::vector<int>> triggers(n);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    triggers[std::max(c.src(m), c.tgt(m))].push_back(m);
  }
  std::vector<int> comps(n, -1);
  std::function<bool(int)> search = [&](int x) -> bool {
    if (budget) budget->spend();
    if (x == n) return visit(comps);
    for (int a : d.hom(src_objects[x], tgt_objects[x])) {
      if (filter && !filter(x, a)) continue;
      comps[x] = a;
      bool ok = true;
      for (int m : triggers[x]) {
        if (d.compose(tgt_morphisms[m], comps[c.src(m)]) !=
            d.compose(comps[c.tgt(m)], src_morphisms[m])) {
          ok = false;
          break;
        }
      }
      if (ok && !search(x + 1)) return false;
    }
    comps[x] = -1;
    return true;
  };
  return search(0);
}

}  // namespace laxcat
