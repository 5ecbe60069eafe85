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

#include "laxcat/generator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "laxcat/search.hpp"

namespace laxcat {

void GenParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kParseError, what); };
  if (max_objects < 1) fail("max_objects must be positive");
  if (max_morphisms < 0) fail("max_morphisms must be non-negative");
  if (fiber_max_objects < 1) fail("fiber_max_objects must be positive");
  if (fiber_max_morphisms < 0) fail("fiber_max_morphisms must be non-negative");
  if (diagram_retries < 1) fail("diagram_retries must be positive");
  auto unit = [](double d) { return d >= 0.0 && d <= 1.0; };
  if (!unit(relation_density)) fail("relation_density must lie in [0,1]");
  if (!unit(marking_density)) fail("marking_density must lie in [0,1]");
  if (!unit(curated_probability)) fail("curated_probability must lie in [0,1]");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Path = std::vector<int>;  // edges in the order they are traversed

struct PathCategory {
  std::vector<Path> paths;  // shortlex order within each source
  std::vector<int> src, tgt;
  std::map<std::pair<int, Path>, int> lookup;  // (source, path) -> index

  int find(int from, const Path& p) const { return lookup.at({from, p}); }
};

PathCategory enumerate_paths(const Quiver& q) {
  std::vector<std::vector<int>> out(q.num_objects);
  for (int e = 0; e < static_cast<int>(q.edges.size()); ++e) out[q.edges[e].first].push_back(e);
  PathCategory pc;
  for (int x = 0; x < q.num_objects; ++x) {
    // Breadth first gives shortlex order.
    std::vector<std::pair<Path, int>> layer{{{}, x}};
    while (!layer.empty()) {
      std::vector<std::pair<Path, int>> next;
      for (auto& [p, end] : layer) {
        pc.lookup[{x, p}] = static_cast<int>(pc.paths.size());
        pc.paths.push_back(p);
        pc.src.push_back(x);
        pc.tgt.push_back(end);
        for (int e : out[end]) {
          Path longer = p;
          longer.push_back(e);
          next.emplace_back(std::move(longer), q.edges[e].second);
        }
      }
      layer = std::move(next);
    }
  }
  return pc;
}

std::string path_name(const Path& p) {
  std::string s;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (!s.empty()) s += '*';
    s += "f" + std::to_string(*it);
  }
  return s;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Keeps the smaller root, so the shortlex-least path represents a class.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Congruence closure: parallel classes stay closed under pre- and
// post-composition.
class PathCongruence {
 public:
  explicit PathCongruence(const PathCategory& pc) : pc_(pc), uf_(static_cast<int>(pc.paths.size())) {
    int n = static_cast<int>(pc.paths.size());
    comp_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int f = 0; f < n; ++f) {
      for (int g = 0; g < n; ++g) {
        if (pc.tgt[f] != pc.src[g]) continue;
        Path p = pc.paths[f];
        p.insert(p.end(), pc.paths[g].begin(), pc.paths[g].end());
        comp_[static_cast<std::size_t>(g) * n + f] = pc.find(pc.src[f], p);
      }
    }
  }

  int size() const { return static_cast<int>(pc_.paths.size()); }
  int compose(int g, int f) const { return comp_[static_cast<std::size_t>(g) * size() + f]; }
  int find(int x) { return uf_.find(x); }

  void merge(int a, int b) {
    if (!uf_.unite(a, b)) return;
    bool changed = true;
    while (changed) {
      changed = false;
      int n = size();
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          if (uf_.find(x) != uf_.find(y)) continue;
          for (int r = 0; r < n; ++r) {
            int a1 = compose(r, x), a2 = compose(r, y);
            if (a1 >= 0 && a2 >= 0 && uf_.unite(a1, a2)) changed = true;
            int b1 = compose(x, r), b2 = compose(y, r);
            if (b1 >= 0 && b2 >= 0 && uf_.unite(b1, b2)) changed = true;
          }
        }
      }
    }
  }

  int non_identity_classes() {
    int count = 0;
    for (int x = 0; x < size(); ++x) {
      if (!pc_.paths[x].empty() && uf_.find(x) == x) ++count;
    }
    return count;
  }

 private:
  const PathCategory& pc_;
  UnionFind uf_;
  std::vector<int> comp_;
};

CatPtr build_quotient(const Quiver& q, const PathCategory& pc, PathCongruence& cong) {
  CatBuilder b;
  for (int x = 0; x < q.num_objects; ++x) b.add_object(std::to_string(x));
  std::vector<int> builder_of(pc.paths.size(), -1);
  for (int p = 0; p < cong.size(); ++p) {
    if (cong.find(p) != p) continue;
    std::string id = pc.paths[p].empty() ? "id_" + std::to_string(pc.src[p]) : path_name(pc.paths[p]);
    builder_of[p] = b.add_morphism(id, pc.src[p], pc.tgt[p]);
    if (pc.paths[p].empty()) b.set_identity(pc.src[p], builder_of[p]);
  }
  std::vector<int> class_of_builder;
  for (int p = 0; p < cong.size(); ++p) {
    if (builder_of[p] >= 0) class_of_builder.push_back(p);
  }
  b.set_compose_fn([&](int g, int f) {
    int h = cong.compose(class_of_builder[g], class_of_builder[f]);
    return h < 0 ? -1 : builder_of[cong.find(h)];
  });
  return b.build().cat;
}

std::vector<std::pair<int, int>> parallel_pairs(const PathCategory& pc) {
  std::vector<std::pair<int, int>> pairs;
  int n = static_cast<int>(pc.paths.size());
  for (int a = 0; a < n; ++a) {
    if (pc.paths[a].empty()) continue;
    for (int b = a + 1; b < n; ++b) {
      if (!pc.paths[b].empty() && pc.src[a] == pc.src[b] && pc.tgt[a] == pc.tgt[b]) {
        pairs.emplace_back(a, b);
      }
    }
  }
  return pairs;
}

}  // namespace

std::size_t path_count(const Quiver& q) {
  // Memoized over a DAG; paths starting at x including the empty one.
  std::vector<std::size_t> from(q.num_objects, 0);
  std::vector<int> state(q.num_objects, 0);
  std::function<std::size_t(int)> count = [&](int x) -> std::size_t {
    if (state[x] == 1) throw Error(ErrorKind::kInvalidDiagram, "quiver has a cycle");
    if (state[x] == 2) return from[x];
    state[x] = 1;
    std::size_t total = 1;
    for (const auto& [s, t] : q.edges) {
      if (s == x) total += count(t);
    }
    state[x] = 2;
    return from[x] = total;
  };
  std::size_t total = 0;
  for (int x = 0; x < q.num_objects; ++x) total += count(x);
  return total;
}

CatPtr free_category(const Quiver& q) {
  path_count(q);  // rejects cycles
  PathCategory pc = enumerate_paths(q);
  PathCongruence cong(pc);
  return build_quotient(q, pc, cong);
}

CatPtr random_quotient(const Quiver& q, double density, Rng& rng, int max_non_identity) {
  path_count(q);
  PathCategory pc = enumerate_paths(q);
  PathCongruence cong(pc);
  std::vector<std::pair<int, int>> pairs = parallel_pairs(pc);
  rng.shuffle(pairs);
  for (const auto& [a, b] : pairs) {
    if (rng.chance(density)) cong.merge(a, b);
  }
  for (const auto& [a, b] : pairs) {
    if (cong.non_identity_classes() <= max_non_identity) break;
    cong.merge(a, b);
  }
  return build_quotient(q, pc, cong);
}

namespace {

Quiver random_dag(int n, int max_morphisms, Rng& rng) {
  Quiver q;
  q.num_objects = n;
  if (n < 2 || max_morphisms == 0) return q;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  // Free categories grow fast; quotients bring the count back down.
  std::size_t path_cap = static_cast<std::size_t>(n + 2 * max_morphisms);
  int attempts = rng.between(1, max_morphisms);
  for (int k = 0; k < attempts; ++k) {
    int a = rng.below(n - 1);
    int b = rng.between(a + 1, n - 1);
    q.edges.emplace_back(order[a], order[b]);
    if (path_count(q) > path_cap) {
      q.edges.pop_back();
      break;
    }
  }
  return q;
}

int non_identity_count(const FinCat& c) { return c.num_morphisms() - c.num_objects(); }

}  // namespace

CatPtr gen_category(const GenParams& p, Rng& rng) {
  if (rng.chance(p.curated_probability)) {
    std::vector<CatPtr> seeds;
    for (const CatPtr& c : {shapes::walking_iso(), shapes::monoid3(), shapes::parallel_pair()}) {
      if (c->num_objects() <= p.max_objects && non_identity_count(*c) <= p.max_morphisms) {
        seeds.push_back(c);
      }
    }
    if (!seeds.empty()) return seeds[rng.below(static_cast<int>(seeds.size()))];
  }
  int n = rng.between(1, p.max_objects);
  Quiver q = random_dag(n, p.max_morphisms, rng);
  return random_quotient(q, p.relation_density, rng, p.max_morphisms);
}

CatPtr gen_category(const GenParams& p) {
  Rng rng(p.seed);
  return gen_category(p, rng);
}

MarkedFinCat gen_marking(const CatPtr& c, const GenParams& p, Rng& rng) {
  std::vector<int> seed;
  for (int m = 0; m < c->num_morphisms(); ++m) {
    if (!c->is_identity(m) && rng.chance(p.marking_density)) seed.push_back(m);
  }
  return MarkedFinCat(c, saturate_marking(*c, seed));
}

namespace {

bool same_functor(const Functor& a, const Functor& b) {
  return a.object_map == b.object_map && a.morphism_map == b.morphism_map;
}

constexpr std::size_t kCandidateCap = 256;
constexpr std::size_t kAssignBudget = 20000;

// Random strict transitions between fixed fibers, or nothing when the
// search fails within its budget.
std::optional<std::vector<Functor>> assign_transitions(const FinCat& base,
                                                       const std::vector<CatPtr>& fibers,
                                                       Rng& rng) {
  int nm = base.num_morphisms();
  std::vector<std::optional<Functor>> value(nm);
  std::vector<int> order;
  for (int m = 0; m < nm; ++m) {
    if (base.is_identity(m)) {
      value[m] = identity_functor(fibers[base.src(m)]);
    } else {
      order.push_back(m);
    }
  }
  std::map<std::pair<int, int>, std::vector<Functor>> candidates;
  auto candidates_for = [&](int i, int j) -> const std::vector<Functor>& {
    auto it = candidates.find({i, j});
    if (it != candidates.end()) return it->second;
    std::vector<Functor> all;
    for_each_functor(*fibers[i], *fibers[j], {},
                     [&](const std::vector<int>& om, const std::vector<int>& mm) {
                       all.push_back(Functor{fibers[i], fibers[j], om, mm});
                       return all.size() < kCandidateCap;
                     });
    return candidates.emplace(std::make_pair(i, j), std::move(all)).first->second;
  };
  auto consistent = [&](int phi) {
    for (int g = 0; g < nm; ++g) {
      if (!value[g]) continue;
      for (int f : base.in(base.src(g))) {
        if (!value[f] || (g != phi && f != phi && base.compose(g, f) != phi)) continue;
        int h = base.compose(g, f);
        if (value[h] && !same_functor(compose(*value[g], *value[f]), *value[h])) return false;
      }
    }
    return true;
  };
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> assign = [&](std::size_t k) {
    if (k == order.size()) return true;
    int phi = order[k];
    std::vector<Functor> options;
    for (int g = 0; g < nm && options.empty(); ++g) {
      if (!value[g] || base.is_identity(g)) continue;
      for (int f : base.in(base.src(g))) {
        if (value[f] && !base.is_identity(f) && base.compose(g, f) == phi) {
          options.push_back(compose(*value[g], *value[f]));
          break;
        }
      }
    }
    if (options.empty()) {
      options = candidates_for(base.src(phi), base.tgt(phi));
      rng.shuffle(options);
    }
    for (Functor& option : options) {
      if (++nodes > kAssignBudget) return false;
      value[phi] = std::move(option);
      if (consistent(phi) && assign(k + 1)) return true;
      value[phi].reset();
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  std::vector<Functor> out;
  for (auto& v : value) out.push_back(std::move(*v));
  return out;
}

}  // namespace

CatDiagram gen_diagram(const MarkedFinCat& base, const GenParams& p, Rng& rng) {
  GenParams fp = p;
  fp.max_objects = p.fiber_max_objects;
  fp.max_morphisms = p.fiber_max_morphisms;
  for (int attempt = 0; attempt < p.diagram_retries; ++attempt) {
    std::vector<CatPtr> fibers;
    for (int i = 0; i < base.cat().num_objects(); ++i) fibers.push_back(gen_category(fp, rng));
    auto transitions = assign_transitions(base.cat(), fibers, rng);
    if (!transitions) continue;
    CatDiagram d{base, std::move(fibers), std::move(*transitions), {}};
    validate_diagram(d);
    return d;
  }
  throw Error(ErrorKind::kGenerationExhausted,
              "no strict diagram found after " + std::to_string(p.diagram_retries) + " fiber draws");
}

SetDiagram gen_set_diagram(const CatPtr& base, const GenParams& p, Rng& rng, bool allow_empty) {
  for (int attempt = 0; attempt < p.diagram_retries; ++attempt) {
    std::vector<CatPtr> fibers;
    std::vector<int> sizes;
    for (int i = 0; i < base->num_objects(); ++i) {
      sizes.push_back(rng.between(allow_empty ? 0 : 1, 3));
      fibers.push_back(shapes::discrete(sizes.back()));
    }
    auto transitions = assign_transitions(*base, fibers, rng);
    if (!transitions) continue;
    SetDiagram f{base, sizes, {}, {}};
    for (const Functor& t : *transitions) f.action.push_back(t.object_map);
    return f;
  }
  throw Error(ErrorKind::kGenerationExhausted,
              "no set diagram found after " + std::to_string(p.diagram_retries) + " draws");
}

}  // namespace laxcat
