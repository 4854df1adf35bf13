#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "subset.hpp"

namespace eqlarge {

// ---------------------------------------------------------------------------
// Subgroups

inline bool is_subgroup(const Group& g, const Subset& h) {
  if (h.size() != g.order() || !h.test(g.identity())) return false;
  bool ok = true;
  h.for_each([&](Element a) {
    if (!ok) return;
    if (!h.test(g.inv(a))) ok = false;
    h.for_each([&](Element b) {
      if (ok && !h.test(g.mul(a, b))) ok = false;
    });
  });
  return ok;
}

inline void require_subgroup(const Group& g, const Subset& h) {
  if (!is_subgroup(g, h)) throw NotASubgroup("subset is not a subgroup of " + g.label());
}

inline Subset subgroup_generated(const Group& g, const Subset& s) {
  Subset h(g.order());
  h.set(g.identity());
  std::vector<Element> frontier{g.identity()};
  const auto gens = s.elements();
  while (!frontier.empty()) {
    Element a = frontier.back();
    frontier.pop_back();
    for (Element x : gens) {
      Element b = g.mul(a, x);
      if (!h.test(b)) {
        h.set(b);
        frontier.push_back(b);
      }
    }
  }
  return h;
}

inline Subset subgroup_generated(const Group& g, std::initializer_list<Element> gens) {
  return subgroup_generated(g, Subset(g.order(), gens));
}

inline Subset centralizer(const Group& g, const Subset& s) {
  Subset c(g.order());
  const auto elems = s.elements();
  for (Element a = 0; a < g.order(); ++a) {
    if (std::all_of(elems.begin(), elems.end(), [&](Element b) { return g.mul(a, b) == g.mul(b, a); })) c.set(a);
  }
  return c;
}

inline Subset centralizer(const Group& g, Element x) { return centralizer(g, Subset(g.order(), {x})); }

inline Subset center(const Group& g) { return centralizer(g, g.all()); }

inline Subset normal_closure(const Group& g, const Subset& s) {
  Subset conjugates(g.order());
  s.for_each([&](Element a) {
    for (Element y = 0; y < g.order(); ++y) conjugates.set(g.conj(a, y));
  });
  return subgroup_generated(g, conjugates);
}

inline bool is_normal(const Group& g, const Subset& n) {
  if (!is_subgroup(g, n)) return false;
  bool ok = true;
  n.for_each([&](Element a) {
    for (Element y = 0; ok && y < g.order(); ++y) ok = n.test(g.conj(a, y));
  });
  return ok;
}

/// Subgroup generated by all [a,b] with a in A, b in B.
inline Subset commutator_subgroup(const Group& g, const Subset& a, const Subset& b) {
  Subset gens(g.order());
  a.for_each([&](Element x) { b.for_each([&](Element y) { gens.set(g.comm(x, y)); }); });
  return subgroup_generated(g, gens);
}

inline Subset derived_subgroup(const Group& g) { return commutator_subgroup(g, g.all(), g.all()); }

inline std::size_t index_of(const Group& g, const Subset& h) { return g.order() / h.count(); }

/// Re-index a subgroup as a group in its own right; element i of the result
/// is the i-th smallest member of h. Returns the group and the embedding.
inline std::pair<Group, std::vector<Element>> subgroup_as_group(const Group& g, const Subset& h,
                                                                std::string label = {}) {
  require_subgroup(g, h);
  std::vector<Element> embed = h.elements();
  std::vector<Element> local(g.order(), 0);
  for (std::size_t i = 0; i < embed.size(); ++i) local[embed[i]] = static_cast<Element>(i);
  const std::size_t n = embed.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = local[g.mul(embed[a], embed[b])];
  std::vector<std::string> names;
  if (g.has_names())
    for (Element e : embed) names.push_back(g.name(e));
  if (label.empty()) label = "H<" + g.label();
  return {Group::trusted(n, std::move(table), std::move(label), std::move(names)), std::move(embed)};
}

// ---------------------------------------------------------------------------
// Conjugacy

/// Conjugacy classes, each sorted, ordered by smallest member.
inline std::vector<std::vector<Element>> conjugacy_classes(const Group& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Element>> classes;
  for (Element a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    Subset cls(g.order());
    for (Element y = 0; y < g.order(); ++y) cls.set(g.conj(a, y));
    cls.for_each([&](Element b) { seen[b] = 1; });
    classes.push_back(cls.elements());
  }
  return classes;
}

inline std::size_t class_count(const Group& g) { return conjugacy_classes(g).size(); }

inline Subset conjugacy_class(const Group& g, Element a) {
  Subset cls(g.order());
  for (Element y = 0; y < g.order(); ++y) cls.set(g.conj(a, y));
  return cls;
}

// ---------------------------------------------------------------------------
// Series and numerical invariants

/// gamma_1 = G, gamma_{i+1} = [gamma_i, G], until the series stabilizes.
inline std::vector<Subset> lower_central_series(const Group& g) {
  std::vector<Subset> series{g.all()};
  while (true) {
    Subset next = commutator_subgroup(g, series.back(), g.all());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

/// Z_0 = 1, Z_{i+1} = {g : [g,h] in Z_i for all h}, until it stabilizes.
inline std::vector<Subset> upper_central_series(const Group& g) {
  Subset trivial(g.order(), {g.identity()});
  std::vector<Subset> series{trivial};
  while (true) {
    const Subset& z = series.back();
    Subset next(g.order());
    for (Element a = 0; a < g.order(); ++a) {
      bool central = true;
      for (Element b = 0; central && b < g.order(); ++b) central = z.test(g.comm(a, b));
      if (central) next.set(a);
    }
    if (next == z) break;
    series.push_back(std::move(next));
  }
  return series;
}

/// Least k with gamma_{k+1} = 1; nullopt when G is not nilpotent.
inline std::optional<std::size_t> nilpotency_class(const Group& g) {
  const auto series = lower_central_series(g);
  if (series.back().count() != 1) return std::nullopt;
  return series.size() - 1;
}

inline std::size_t exponent(const Group& g) {
  std::size_t e = 1;
  for (Element a = 0; a < g.order(); ++a) e = std::lcm(e, g.element_order(a));
  return e;
}

inline bool is_2_engel(const Group& g) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y)
      if (g.comm(g.comm(x, y), y) != g.identity()) return false;
  return true;
}

inline std::size_t max_centralizer_index(const Group& g) {
  std::size_t k = 1;
  for (Element a = 0; a < g.order(); ++a) k = std::max(k, index_of(g, centralizer(g, a)));
  return k;
}

inline bool is_p_group(const Group& g, std::size_t p) {
  std::size_t n = g.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

// ---------------------------------------------------------------------------
// Quotients

struct Quotient {
  Group group;
  Homomorphism projection;
  /// representatives[i] is the smallest element of coset i.
  std::vector<Element> representatives;
};

/// G/N on coset representatives; the coset of the identity is element 0 and
/// the remaining cosets are ordered by their smallest member.
inline Quotient quotient(const Group& g, const Subset& n) {
  if (!is_subgroup(g, n)) throw NotASubgroup("quotient by a subset that is not a subgroup");
  for (Element a : n.elements())
    for (Element y = 0; y < g.order(); ++y)
      if (!n.test(g.conj(a, y)))
        throw NotNormal("subgroup is not normal: " + g.name(a) + "^" + g.name(y) + " leaves it");
  const auto members = n.elements();
  std::vector<Element> coset_of(g.order(), static_cast<Element>(-1));
  std::vector<Element> reps;
  auto add_coset = [&](Element a) {
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(a);
    for (Element m : members) coset_of[g.mul(a, m)] = id;
  };
  add_coset(g.identity());
  for (Element a = 0; a < g.order(); ++a)
    if (coset_of[a] == static_cast<Element>(-1)) add_coset(a);
  // smallest member of each coset, for display and as canonical representative
  std::vector<Element> smallest(reps.size(), static_cast<Element>(-1));
  for (Element a = g.order(); a-- > 0;) smallest[coset_of[a]] = a;
  const std::size_t q = reps.size();
  std::vector<Element> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coset_of[g.mul(reps[i], reps[j])];
  std::vector<std::string> names(q);
  for (std::size_t i = 0; i < q; ++i) names[i] = i == 0 ? "e" : g.name(smallest[i]) + "N";
  Group qg = Group::trusted(q, std::move(table), g.label() + "/N", std::move(names));
  return Quotient{std::move(qg), Homomorphism{std::move(coset_of), q}, std::move(smallest)};
}

// ---------------------------------------------------------------------------
// Automorphisms

inline constexpr std::size_t kAutomorphismOrderBound = 64;
inline constexpr std::size_t kAutomorphismGeneratorBound = 3;

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subgroup the most (ties to the smallest index).
inline std::vector<Element> greedy_generating_set(const Group& g) {
  std::vector<Element> gens;
  Subset h(g.order(), {g.identity()});
  while (!h.is_full()) {
    Element best = 0;
    std::size_t best_size = 0;
    for (Element a = 0; a < g.order(); ++a) {
      if (h.test(a)) continue;
      Subset s = Subset::of(g.order(), gens);
      s.set(a);
      const std::size_t size = subgroup_generated(g, s).count();
      if (size > best_size) {
        best_size = size;
        best = a;
      }
    }
    gens.push_back(best);
    h = subgroup_generated(g, Subset::of(g.order(), gens));
  }
  return gens;
}

/// A group of automorphisms: the abstract group plus its action table,
/// action[s][g] = s(g). Composition is (s*t)(g) = s(t(g)).
struct AutomorphismGroup {
  Group group;
  std::vector<std::vector<Element>> action;

  Element apply(Element sigma, Element g) const { return action[sigma][g]; }
};

/// Close a set of bijections of G under composition and tabulate the result.
inline AutomorphismGroup automorphisms_from_maps(const Group& g, std::vector<std::vector<Element>> maps,
                                                 std::string label) {
  std::vector<Element> id(g.order());
  std::iota(id.begin(), id.end(), Element{0});
  std::map<std::vector<Element>, Element> index{{id, 0}};
  std::vector<std::vector<Element>> elems{id};
  auto compose = [&](const std::vector<Element>& s, const std::vector<Element>& t) {
    std::vector<Element> r(g.order());
    for (Element x = 0; x < g.order(); ++x) r[x] = s[t[x]];
    return r;
  };
  for (auto& m : maps)
    if (index.emplace(m, static_cast<Element>(elems.size())).second) elems.push_back(std::move(m));
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      for (auto r : {compose(elems[k], elems[j]), compose(elems[j], elems[k])})
        if (index.emplace(r, static_cast<Element>(elems.size())).second) elems.push_back(std::move(r));
    }
  }
  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) names[a] = a == 0 ? "id" : "s" + std::to_string(a);
  return AutomorphismGroup{Group::trusted(n, std::move(table), std::move(label), std::move(names)),
                           std::move(elems)};
}

/// Aut(G) by brute force over images of a greedy generating set.
inline AutomorphismGroup automorphism_group(const Group& g, std::size_t order_bound = kAutomorphismOrderBound,
                                            std::size_t generator_bound = kAutomorphismGeneratorBound) {
  if (g.order() > order_bound)
    throw OrderBound("automorphism search limited to order " + std::to_string(order_bound));
  const auto gens = greedy_generating_set(g);
  if (gens.size() > generator_bound)
    throw OrderBound("automorphism search limited to " + std::to_string(generator_bound) + " generators");

  // spanning tree: each element is parent * gens[via]
  std::vector<Element> order_bfs{g.identity()}, parent(g.order()), via(g.order());
  std::vector<char> seen(g.order(), 0);
  seen[g.identity()] = 1;
  for (std::size_t k = 0; k < order_bfs.size(); ++k)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Element b = g.mul(order_bfs[k], gens[j]);
      if (!seen[b]) {
        seen[b] = 1;
        parent[b] = order_bfs[k];
        via[b] = static_cast<Element>(j);
        order_bfs.push_back(b);
      }
    }

  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (Element a = 0; a < g.order(); ++a)
      if (g.element_order(a) == g.element_order(gens[j])) candidates[j].push_back(a);

  std::vector<std::vector<Element>> found;
  std::vector<Element> images(gens.size());
  auto try_images = [&]() {
    std::vector<Element> m(g.order());
    m[g.identity()] = g.identity();
    for (std::size_t k = 1; k < order_bfs.size(); ++k) {
      Element b = order_bfs[k];
      m[b] = g.mul(m[parent[b]], images[via[b]]);
    }
    std::vector<char> hit(g.order(), 0);
    for (Element v : m)
      if (hit[v]++) return;
    for (Element a = 0; a < g.order(); ++a)
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (m[g.mul(a, gens[j])] != g.mul(m[a], images[j])) return;
    found.push_back(std::move(m));
  };
  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (j == gens.size()) {
      try_images();
      return;
    }
    for (Element c : candidates[j]) {
      // relations among the first j+1 generators: orders of pairwise products
      bool ok = true;
      for (std::size_t i = 0; ok && i < j; ++i)
        ok = g.element_order(g.mul(gens[i], gens[j])) == g.element_order(g.mul(images[i], c)) &&
             g.element_order(g.mul(gens[j], gens[i])) == g.element_order(g.mul(c, images[i]));
      if (!ok) continue;
      images[j] = c;
      self(self, j + 1);
    }
  };
  recurse(recurse, 0);
  std::sort(found.begin(), found.end());
  return automorphisms_from_maps(g, std::move(found), "Aut(" + g.label() + ")");
}

/// Inn(G): conjugation maps g -> a^-1 g a, isomorphic to G/Z(G).
inline AutomorphismGroup inner_automorphisms(const Group& g) {
  std::vector<std::vector<Element>> maps;
  for (Element a = 0; a < g.order(); ++a) {
    std::vector<Element> m(g.order());
    for (Element x = 0; x < g.order(); ++x) m[x] = g.conj(x, a);
    maps.push_back(std::move(m));
  }
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  return automorphisms_from_maps(g, std::move(maps), "Inn(" + g.label() + ")");
}

inline bool is_automorphism(const Group& g, const std::vector<Element>& m) {
  std::vector<char> hit(g.order(), 0);
  for (Element v : m)
    if (v >= g.order() || hit[v]++) return false;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (m[g.mul(a, b)] != g.mul(m[a], m[b])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Mc witness

struct McWitness {
  std::size_t class_bound = 0;
  /// witness_sets[i] lists element indices of the quotient G/Z_i(G).
  std::vector<std::vector<Element>> witness_sets;
  std::size_t s = 0;
};

inline constexpr std::size_t kMcSearchBound = 10'000'000;

/// Minimum-size A with C_Q(A) = Z(Q), by search over subsets in size order.
inline std::vector<Element> minimum_center_witness(const Group& q, std::size_t budget = kMcSearchBound) {
  const Subset z = center(q);
  if (z.is_full()) return {};
  std::vector<Element> noncentral;
  for (Element a = 0; a < q.order(); ++a)
    if (!z.test(a)) noncentral.push_back(a);
  std::vector<Subset> cents;
  for (Element a : noncentral) cents.push_back(centralizer(q, a));
  std::size_t visited = 0;
  for (std::size_t size = 1; size <= noncentral.size(); ++size) {
    std::vector<std::size_t> pick;
    std::vector<Element> found;
    auto search = [&](auto&& self, std::size_t start, const Subset& acc) -> bool {
      if (++visited > budget) throw OrderBound("Mc witness search exceeded its budget");
      if (pick.size() == size) {
        if (acc == z) {
          for (auto i : pick) found.push_back(noncentral[i]);
          return true;
        }
        return false;
      }
      for (std::size_t i = start; i < noncentral.size(); ++i) {
        pick.push_back(i);
        if (self(self, i + 1, acc & cents[i])) return true;
        pick.pop_back();
      }
      return false;
    };
    if (search(search, 0, q.all())) return found;
  }
  return noncentral;  // unreachable: the full non-central set always works
}

inline McWitness mc_witness(const Group& g, std::size_t k, std::size_t budget = kMcSearchBound) {
  if (k == 0) throw PreconditionViolated("mc_witness needs k >= 1");
  const auto upper = upper_central_series(g);
  McWitness w;
  w.class_bound = k;
  for (std::size_t i = 0; i < k; ++i) {
    const Subset& zi = i < upper.size() ? upper[i] : upper.back();
    Quotient q = quotient(g, zi);
    w.witness_sets.push_back(minimum_center_witness(q.group, budget));
    w.s = std::max(w.s, w.witness_sets.back().size());
  }
  return w;
}

}  // namespace eqlarge
