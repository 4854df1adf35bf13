#pragma once

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "group.hpp"
#include "structure.hpp"
#include "subset.hpp"

namespace eqlarge {

template <class G>
concept FiniteGroup = requires(const G& g, Element a) {
  { g.order() } -> std::convertible_to<std::size_t>;
  { g.identity() } -> std::convertible_to<Element>;
  { g.mul(a, a) } -> std::convertible_to<Element>;
  { g.inv(a) } -> std::convertible_to<Element>;
};

inline constexpr std::uint64_t kDefaultCoverNodes = 10'000'000;
inline constexpr std::uint64_t kDefaultNaiveBudget = 1'000'000;

/// Node cap for cover searches; EQLARGE_BUDGET_NODES overrides the default.
inline std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("EQLARGE_BUDGET_NODES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultCoverNodes;
}

/// A count that may be infinite; Tag supplies the printed name of infinity.
template <class Tag>
struct Extended {
  std::optional<std::size_t> value;

  static Extended infinite() { return {}; }
  static Extended finite(std::size_t v) { return {v}; }
  bool is_finite() const noexcept { return value.has_value(); }
  /// At least k (infinity dominates every k).
  bool at_least(std::size_t k) const noexcept { return !value || *value >= k; }
  bool at_most(std::size_t k) const noexcept { return value && *value <= k; }
  std::string str() const { return value ? std::to_string(*value) : std::string(Tag::name); }
  nlohmann::json to_json() const { return value ? nlohmann::json(*value) : nlohmann::json(Tag::name); }
  friend bool operator==(const Extended&, const Extended&) = default;
};

struct UnboundedTag {
  static constexpr const char* name = "Unbounded";
};
struct InfiniteTag {
  static constexpr const char* name = "Infinite";
};
using LargenessNumber = Extended<UnboundedTag>;
using GenericityNumber = Extended<InfiniteTag>;

struct CoverCertificate {
  std::vector<Element> translators;
  bool covered = false;
};

inline nlohmann::json to_json(const CoverCertificate& c) {
  return {{"translators", c.translators}, {"covered", c.covered}};
}

template <FiniteGroup G>
Subset left_translate(const G& g, Element a, const Subset& x) {
  Subset out(g.order());
  x.for_each([&](Element e) { out.set(g.mul(a, e)); });
  return out;
}

template <FiniteGroup G>
Subset right_translate(const G& g, const Subset& x, Element a) {
  Subset out(g.order());
  x.for_each([&](Element e) { out.set(g.mul(e, a)); });
  return out;
}

template <FiniteGroup G>
bool covers(const G& g, const Subset& y, const std::vector<Element>& translators) {
  Subset u(g.order());
  for (Element t : translators) u |= left_translate(g, t, y);
  return u.is_full();
}

namespace detail {

/// Exact search for a cover of G by at most k left translates of Y.
template <FiniteGroup G>
class CoverSearch {
 public:
  CoverSearch(const G& g, const Subset& y, std::uint64_t budget)
      : g_(g), y_(y), y_elems_(y.elements()), budget_(budget) {
    for (Element e : y_elems_) y_inv_.push_back(g.inv(e));
    if (g.order() <= kTranslateCacheLimit) cache_.resize(g.order());
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  /// Greedy cover: repeatedly cover the smallest uncovered element with the
  /// candidate that covers most new elements.
  std::vector<Element> greedy() {
    std::vector<Element> out{g_.identity()};
    Subset covered = y_;
    while (!covered.is_full()) {
      const Element h = first_uncovered(covered);
      Element best = 0;
      std::size_t best_gain = 0;
      std::size_t tried = 0;
      for (Element yi : y_inv_) {
        const Element cand = g_.mul(h, yi);
        const std::size_t gain = translate(cand).count_minus(covered);
        if (gain > best_gain || (gain == best_gain && cand < best)) {
          best = cand;
          best_gain = gain;
        }
        if (++tried >= kGreedyCandidates) break;
      }
      out.push_back(best);
      covered |= translate(best);
    }
    return out;
  }

  /// Some cover by at most k translates, or nullopt after an exhaustive search.
  std::optional<std::vector<Element>> search(std::size_t k) {
    if (k == 0) return std::nullopt;
    chosen_ = {g_.identity()};
    Subset covered = y_;
    Subset forbidden(g_.order());
    if (dfs(covered, forbidden, k - 1)) return chosen_;
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kTranslateCacheLimit = 1u << 14;
  static constexpr std::size_t kGreedyCandidates = 512;
  static constexpr std::size_t kBranchScan = 64;

  Element first_uncovered(const Subset& covered) const {
    for (Element e = 0; e < g_.order(); ++e)
      if (!covered.test(e)) return e;
    return static_cast<Element>(g_.order());
  }

  const Subset& translate(Element a) {
    if (!cache_.empty()) {
      auto& slot = cache_[a];
      if (!slot) slot = left_translate(g_, a, y_);
      return *slot;
    }
    scratch_ = left_translate(g_, a, y_);
    return scratch_;
  }

  bool dfs(const Subset& covered, const Subset& forbidden, std::size_t remaining) {
    if (++nodes_ > budget_)
      throw BudgetExceeded("cover search exceeded " + std::to_string(budget_) + " nodes");
    const std::size_t uncovered = g_.order() - covered.count();
    if (uncovered == 0) return true;
    if (remaining == 0 || uncovered > remaining * y_elems_.size()) return false;

    // fail-first: among the first few uncovered elements, the one with the
    // fewest allowed translators
    Element h = 0;
    std::size_t best = SIZE_MAX, scanned = 0;
    for (Element e = covered.complement().first(); e < g_.order() && scanned < kBranchScan;
         e = next_uncovered(covered, e)) {
      std::size_t c = 0;
      for (Element yi : y_inv_) c += forbidden.test(g_.mul(e, yi)) ? 0 : 1;
      if (c < best) {
        best = c;
        h = e;
        if (c <= 1) break;
      }
      ++scanned;
    }
    if (best == 0) return false;

    std::vector<Element> cands;
    for (Element yi : y_inv_) {
      const Element cand = g_.mul(h, yi);
      if (!forbidden.test(cand)) cands.push_back(cand);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    Subset excluded = forbidden;
    for (Element cand : cands) {
      chosen_.push_back(cand);
      if (dfs(covered | translate(cand), excluded, remaining - 1)) return true;
      chosen_.pop_back();
      excluded.set(cand);
    }
    return false;
  }

  Element next_uncovered(const Subset& covered, Element e) const {
    for (++e; e < g_.order(); ++e)
      if (!covered.test(e)) return e;
    return static_cast<Element>(g_.order());
  }

  const G& g_;
  const Subset& y_;
  std::vector<Element> y_elems_, y_inv_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::optional<Subset>> cache_;
  Subset scratch_;
  std::vector<Element> chosen_;
};

inline void check_universe(std::size_t order, const Subset& x) {
  if (x.size() != order)
    throw PreconditionViolated("subset of size " + std::to_string(x.size()) + " used in a group of order " +
                               std::to_string(order));
}

}  // namespace detail

struct CoverResult {
  GenericityNumber number;
  CoverCertificate certificate;
  std::uint64_t nodes = 0;
};

/// Minimum number of left translates of Y covering G (Infinite for Y empty).
template <FiniteGroup G>
CoverResult cover_number(const G& g, const Subset& y, std::uint64_t budget = default_node_budget()) {
  detail::check_universe(g.order(), y);
  CoverResult r;
  if (y.empty()) return r;
  detail::CoverSearch<G> s(g, y, budget);
  auto best = s.greedy();
  const std::size_t m = y.count(), n = g.order();
  for (std::size_t k = (n + m - 1) / m; k < best.size(); ++k) {
    if (auto found = s.search(k)) {
      best = std::move(*found);
      break;
    }
  }
  r.number = GenericityNumber::finite(best.size());
  r.certificate = {std::move(best), true};
  r.nodes = s.nodes();
  return r;
}

/// Is G covered by k left translates of X? The certificate holds the cover
/// when one exists.
template <FiniteGroup G>
bool is_k_generic(const G& g, const Subset& x, std::size_t k, CoverCertificate* certificate = nullptr,
                  std::uint64_t budget = default_node_budget()) {
  detail::check_universe(g.order(), x);
  if (k == 0) throw PreconditionViolated("k must be at least 1");
  if (certificate) *certificate = {};
  if (x.empty()) return false;
  const std::size_t m = x.count(), n = g.order();
  if (k * m < n) return false;
  detail::CoverSearch<G> s(g, x, budget);
  if (auto greedy = s.greedy(); greedy.size() <= k) {
    if (certificate) *certificate = {std::move(greedy), true};
    return true;
  }
  auto found = s.search(std::min(k, n - m + 1));
  if (found && certificate) *certificate = {*found, true};
  return found.has_value();
}

struct LargenessDecision {
  bool large = false;
  /// On false: k translators whose left translates of X have empty intersection.
  std::vector<Element> witness;
};

/// Do any k left translates of X intersect? Decided on the complement.
template <FiniteGroup G>
LargenessDecision is_k_large(const G& g, const Subset& x, std::size_t k, std::uint64_t budget = default_node_budget()) {
  detail::check_universe(g.order(), x);
  if (k == 0) throw PreconditionViolated("k must be at least 1");
  LargenessDecision d;
  if (x.is_full()) {
    d.large = true;
    return d;
  }
  CoverCertificate cert;
  d.large = !is_k_generic(g, x.complement(), k, &cert, budget);
  if (!d.large) {
    d.witness = cert.translators;
    while (d.witness.size() < k) d.witness.push_back(d.witness.front());
  }
  return d;
}

template <FiniteGroup G>
GenericityNumber genericity_number(const G& g, const Subset& x, std::uint64_t budget = default_node_budget()) {
  return cover_number(g, x, budget).number;
}

template <FiniteGroup G>
LargenessNumber largeness_number(const G& g, const Subset& x, std::uint64_t budget = default_node_budget()) {
  detail::check_universe(g.order(), x);
  if (x.is_full()) return LargenessNumber::infinite();
  return LargenessNumber::finite(*cover_number(g, x.complement(), budget).number.value - 1);
}

/// Direct definition: some k left translates with the first fixed to the
/// identity have empty intersection?
template <FiniteGroup G>
bool naive_is_k_large(const G& g, const Subset& x, std::size_t k, std::uint64_t budget = kDefaultNaiveBudget) {
  detail::check_universe(g.order(), x);
  if (k == 0) throw PreconditionViolated("k must be at least 1");
  if (x.empty()) return false;
  const std::size_t n = g.order();
  std::uint64_t tuples = 1;
  for (std::size_t i = 1; i < k; ++i) {
    tuples *= n;
    if (tuples > budget) throw BudgetExceeded("naive largeness check needs " + std::to_string(n) + "^" +
                                              std::to_string(k - 1) + " tuples");
  }
  std::vector<Subset> translates;
  translates.reserve(n);
  for (Element a = 0; a < n; ++a) translates.push_back(left_translate(g, a, x));
  std::vector<Element> idx(k - 1, 0);
  while (true) {
    Subset acc = x;
    for (Element a : idx) acc &= translates[a];
    if (acc.empty()) return false;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
    if (i == idx.size()) return true;
  }
}

struct LargenessReport {
  std::size_t subset_size = 0;
  std::size_t group_order = 0;
  GenericityNumber genericity;
  LargenessNumber largeness;
  /// Cover of G by translates of X.
  CoverCertificate genericity_certificate;
  /// Cover of G by translates of G \ X: the same translators applied to X
  /// have empty intersection.
  CoverCertificate largeness_certificate;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;

  nlohmann::json to_json(bool with_timing = false) const {
    nlohmann::json j = {{"subset_size", subset_size},
                        {"group_order", group_order},
                        {"genericity_number", genericity.to_json()},
                        {"largeness_number", largeness.to_json()},
                        {"genericity_certificate", eqlarge::to_json(genericity_certificate)},
                        {"largeness_certificate", eqlarge::to_json(largeness_certificate)},
                        {"nodes", nodes}};
    if (with_timing) j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

template <FiniteGroup G>
LargenessReport largeness_report(const G& g, const Subset& x, std::uint64_t budget = default_node_budget()) {
  detail::check_universe(g.order(), x);
  const auto start = std::chrono::steady_clock::now();
  LargenessReport r;
  r.subset_size = x.count();
  r.group_order = g.order();
  if (!x.empty()) {
    auto c = cover_number(g, x, budget);
    r.genericity = c.number;
    r.genericity_certificate = std::move(c.certificate);
    r.nodes += c.nodes;
  }
  if (!x.is_full()) {
    auto c = cover_number(g, x.complement(), budget);
    r.largeness = LargenessNumber::finite(*c.number.value - 1);
    r.largeness_certificate = std::move(c.certificate);
    r.nodes += c.nodes;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Largeness report of X ∩ H inside the subgroup H, reindexed as a group.
inline LargenessReport restrict_largeness(const Group& g, const Subset& x, const Subset& h,
                                          std::uint64_t budget = default_node_budget()) {
  detail::check_universe(g.order(), x);
  require_subgroup(g, h);
  auto [hg, embed] = subgroup_as_group(g, h);
  Subset local(hg.order());
  for (Element i = 0; i < hg.order(); ++i)
    if (x.test(embed[i])) local.set(i);
  return largeness_report(hg, local, budget);
}

}  // namespace eqlarge
