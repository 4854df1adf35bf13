#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "error.hpp"
#include "group.hpp"
#include "largeness.hpp"
#include "structure.hpp"
#include "subset.hpp"
#include "word.hpp"

namespace eqlarge {

/// Exact proportion; always reduced.
using Probability = boost::rational<std::int64_t>;

inline std::string to_string(const Probability& p) {
  return std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
}

inline nlohmann::json probability_json(const Probability& p) {
  return {{"value", to_string(p)}, {"numerator", p.numerator()}, {"denominator", p.denominator()}};
}

struct SolveOptions {
  std::size_t max_arity = 4;
  std::uint64_t index_bound = std::uint64_t{1} << 26;
};

/// Solutions of an equation as a bit set over G^n; tuple (a_1..a_n) has
/// index ((a_1 |G| + a_2) |G| + ...) + a_n.
class SolutionSet {
 public:
  SolutionSet(const Group& g, std::size_t arity, Subset bits) : group_(&g), arity_(arity), bits_(std::move(bits)) {
    count_ = bits_.count();
  }

  const Group& group() const noexcept { return *group_; }
  std::size_t arity() const noexcept { return arity_; }
  const Subset& bits() const noexcept { return bits_; }
  std::size_t count() const noexcept { return count_; }
  std::size_t total() const noexcept { return bits_.size(); }
  Probability probability() const {
    return {static_cast<std::int64_t>(count_), static_cast<std::int64_t>(total())};
  }

  std::vector<Element> decode(Element index) const {
    std::vector<Element> out(arity_);
    const auto n = static_cast<Element>(group_->order());
    for (std::size_t i = arity_; i-- > 0;) {
      out[i] = index % n;
      index /= n;
    }
    return out;
  }

  /// Indices are listed when there are at most list_limit of them.
  nlohmann::json to_json(std::size_t list_limit = 4096) const {
    nlohmann::json j = {{"group", group_->label()},
                        {"arity", arity_},
                        {"count", count_},
                        {"total", total()},
                        {"probability", eqlarge::to_string(probability())}};
    if (count_ <= list_limit) j["indices"] = bits_.elements();
    return j;
  }

 private:
  const Group* group_;
  std::size_t arity_;
  Subset bits_;
  std::size_t count_ = 0;
};

/// Arity used for enumeration: equations without variables still live in G^1.
inline std::size_t enumeration_arity(const Equation& eq) { return eq.arity == 0 ? 1 : eq.arity; }

inline std::uint64_t checked_tuple_count(const Group& g, std::size_t arity, const SolveOptions& opts) {
  if (arity > opts.max_arity)
    throw IndexBound("equation has " + std::to_string(arity) + " variables; the cap is " + std::to_string(opts.max_arity));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    total *= g.order();
    if (total > opts.index_bound)
      throw IndexBound(g.label() + "^" + std::to_string(arity) + " exceeds the index bound of " +
                       std::to_string(opts.index_bound));
  }
  return total;
}

inline SolutionSet solution_set(const Group& g, const Equation& eq, const Bindings& bindings = {},
                                const SolveOptions& opts = {}) {
  const std::size_t arity = enumeration_arity(eq);
  const std::uint64_t total = checked_tuple_count(g, arity, opts);
  const CompiledWord lhs(g, eq.lhs, bindings), rhs(g, eq.rhs, bindings);
  const bool rhs_constant = rhs.arity() == 0;
  std::vector<Element> a(arity, 0);
  const Element c = rhs_constant ? rhs(a) : 0;
  Subset bits(static_cast<std::size_t>(total));
  const auto n = static_cast<Element>(g.order());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (lhs(a) == (rhs_constant ? c : rhs(a))) bits.set(static_cast<Element>(idx));
    for (std::size_t i = arity; i-- > 0;) {
      if (++a[i] < n) break;
      a[i] = 0;
    }
  }
  return SolutionSet(g, arity, std::move(bits));
}

inline Probability probability(const Group& g, const Equation& eq, const Bindings& bindings = {},
                               const SolveOptions& opts = {}) {
  return solution_set(g, eq, bindings, opts).probability();
}

/// k(G)/|G| from the conjugacy classes.
inline Probability commuting_probability(const Group& g) {
  return {static_cast<std::int64_t>(class_count(g)), static_cast<std::int64_t>(g.order())};
}

/// Largeness of the solution set inside the power group G^n.
inline LargenessReport equation_largeness(const Group& g, const Equation& eq, const Bindings& bindings = {},
                                          std::uint64_t budget = default_node_budget(), const SolveOptions& opts = {}) {
  const SolutionSet s = solution_set(g, eq, bindings, opts);
  const ProductView view = ProductView::power(g, s.arity());
  return largeness_report(view, s.bits(), budget);
}

// ---------------------------------------------------------------------------
// Autocommutativity

inline void require_action(const Group& g, const AutomorphismGroup& sigma) {
  if (sigma.action.size() != sigma.group.order())
    throw PreconditionViolated("ActionNotClosed: action table has the wrong number of rows");
  for (const auto& row : sigma.action) {
    if (row.size() != g.order()) throw PreconditionViolated("ActionNotClosed: action row of the wrong length");
    std::vector<char> hit(g.order(), 0);
    for (Element e : row) {
      if (e >= g.order() || hit[e]) throw PreconditionViolated("ActionNotClosed: action row is not a permutation");
      hit[e] = 1;
    }
  }
}

struct Autocommutativity {
  Probability degree;
  std::size_t fixed_pairs = 0;
  /// H re-indexed as a group, and its embedding into G.
  Group h_group;
  std::vector<Element> h_embedding;
  /// {(s, h) : s(h) = h} over Sigma x H, index s |H| + h.
  Subset pairs;
};

inline Autocommutativity autocommutativity(const Group& g, const Subset& h, const AutomorphismGroup& sigma) {
  require_subgroup(g, h);
  require_action(g, sigma);
  Autocommutativity r;
  auto [hg, embed] = subgroup_as_group(g, h);
  r.h_group = std::move(hg);
  r.h_embedding = std::move(embed);
  const std::size_t hn = r.h_embedding.size();
  r.pairs = Subset(sigma.group.order() * hn);
  for (Element s = 0; s < sigma.group.order(); ++s)
    for (std::size_t i = 0; i < hn; ++i)
      if (sigma.apply(s, r.h_embedding[i]) == r.h_embedding[i]) r.pairs.set(static_cast<Element>(s * hn + i));
  r.fixed_pairs = r.pairs.count();
  r.degree = Probability(static_cast<std::int64_t>(r.fixed_pairs), static_cast<std::int64_t>(r.pairs.size()));
  return r;
}

inline Probability autocommutativity_degree(const Group& g, const Subset& h, const AutomorphismGroup& sigma) {
  return autocommutativity(g, h, sigma).degree;
}

/// Elements fixed by every automorphism in sigma.
inline Subset fixed_subgroup(const Group& g, const AutomorphismGroup& sigma) {
  require_action(g, sigma);
  Subset fix = g.all();
  for (const auto& row : sigma.action)
    for (Element e = 0; e < g.order(); ++e)
      if (row[e] != e) fix.reset(e);
  if (!is_subgroup(g, fix)) throw Error("internal: fixed points do not form a subgroup");
  return fix;
}

}  // namespace eqlarge
