#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "error.hpp"
#include "group.hpp"
#include "largeness.hpp"
#include "probability.hpp"
#include "structure.hpp"
#include "subset.hpp"
#include "supercommutator.hpp"
#include "word.hpp"

namespace eqlarge {

struct CheckResult {
  std::string check;
  std::string group;
  bool hypothesis_holds = false;
  bool conclusion_holds = true;
  bool vacuous = true;
  bool passed = true;
  std::optional<Probability> margin;
  nlohmann::json witness;
  std::size_t instances = 0;
  std::size_t nonvacuous_instances = 0;
  std::size_t skipped = 0;

  nlohmann::json to_json() const {
    return {{"check", check},
            {"group", group},
            {"hypothesis_holds", hypothesis_holds},
            {"conclusion_holds", conclusion_holds},
            {"vacuous", vacuous},
            {"passed", passed},
            {"margin", margin ? nlohmann::json(to_string(*margin)) : nlohmann::json(nullptr)},
            {"instances", instances},
            {"nonvacuous_instances", nonvacuous_instances},
            {"skipped", skipped},
            {"witness", witness}};
  }
};

struct CheckOptions {
  std::uint64_t budget = default_node_budget();
  /// Constants are swept over all of G up to this order, else over a sample.
  std::size_t full_sweep_order = 24;
};

struct CheckSpec {
  std::string id;
  std::string statement;
  std::string cost;
  std::size_t max_order;
  std::function<CheckResult(const Group&, const CheckOptions&)> run;
};

namespace verify_detail {

struct Instance {
  std::string label;
  bool hypothesis = false;
  bool conclusion = true;
  std::optional<Probability> margin;
  nlohmann::json data = nlohmann::json::object();
};

class Collector {
 public:
  Collector(std::string id, const Group& g) : id_(std::move(id)), group_(g.label()) {}

  void add(Instance in) {
    ++r_.instances;
    if (in.hypothesis) ++r_.nonvacuous_instances;
    const bool ok = !in.hypothesis || in.conclusion;
    if (!ok && !failure_) failure_ = in;
    if (in.hypothesis) {
      if (in.margin && (!r_.margin || *in.margin < *r_.margin)) {
        r_.margin = in.margin;
        tightest_ = in;
      }
      if (!first_) first_ = in;
    }
  }
  void skip() { ++r_.skipped; }

  CheckResult finish() {
    r_.check = id_;
    r_.group = group_;
    r_.hypothesis_holds = r_.nonvacuous_instances > 0;
    r_.vacuous = !r_.hypothesis_holds;
    r_.passed = !failure_.has_value();
    r_.conclusion_holds = r_.passed;
    const Instance* w = failure_ ? &*failure_ : tightest_ ? &*tightest_ : first_ ? &*first_ : nullptr;
    if (w) {
      r_.witness = w->data;
      r_.witness["instance"] = w->label;
      r_.witness["hypothesis"] = w->hypothesis;
      r_.witness["conclusion"] = w->conclusion;
    }
    return r_;
  }

 private:
  std::string id_, group_;
  CheckResult r_;
  std::optional<Instance> failure_, tightest_, first_;
};

/// Stable seed from text (FNV-1a).
inline std::uint64_t seed_of(std::string_view a, std::string_view b) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : a) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  h = (h ^ 0xFF) * 1099511628211ULL;
  for (char c : b) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h;
}

inline Probability ratio(std::size_t a, std::size_t b) {
  return {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
}

inline std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> d;
  for (std::size_t i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

inline std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime(p)) out.push_back(p);
  return out;
}

inline std::size_t count_powers(const Group& g, long long e, Element target) {
  std::size_t c = 0;
  for (Element x = 0; x < g.order(); ++x) c += g.pow(x, e) == target ? 1 : 0;
  return c;
}

inline Subset power_solutions(const Group& g, long long e, Element target) {
  Subset s(g.order());
  for (Element x = 0; x < g.order(); ++x)
    if (g.pow(x, e) == target) s.set(x);
  return s;
}

/// Values of a word over all of G^arity, in mixed-radix order.
struct WordTable {
  std::size_t arity = 1;
  std::size_t total = 0;
  std::vector<Element> values;
  std::vector<std::size_t> counts;

  Subset solutions(Element c) const {
    Subset s(total);
    for (std::size_t i = 0; i < total; ++i)
      if (values[i] == c) s.set(static_cast<Element>(i));
    return s;
  }
  Probability mu(Element c) const { return ratio(counts[c], total); }
  bool identity(Element c) const { return counts[c] == total; }
};

inline WordTable tabulate(const Group& g, const Word& w, const Bindings& b, std::size_t arity = 0) {
  WordTable t;
  const std::set<int> vs = variables(w);
  const std::size_t need = vs.empty() ? 1 : static_cast<std::size_t>(*vs.rbegin()) + 1;
  t.arity = std::max(arity, need);
  SolveOptions opts;
  opts.max_arity = 4;
  t.total = static_cast<std::size_t>(checked_tuple_count(g, t.arity, opts));
  const CompiledWord cw(g, w, b);
  t.values.resize(t.total);
  t.counts.assign(g.order(), 0);
  std::vector<Element> a(t.arity, 0);
  const auto n = static_cast<Element>(g.order());
  for (std::size_t i = 0; i < t.total; ++i) {
    const Element v = cw(a);
    t.values[i] = v;
    ++t.counts[v];
    for (std::size_t j = t.arity; j-- > 0;) {
      if (++a[j] < n) break;
      a[j] = 0;
    }
  }
  return t;
}

inline bool large_in_power(const Group& g, std::size_t arity, const Subset& x, std::size_t k, std::uint64_t budget) {
  if (x.is_full()) return true;
  if (x.empty()) return false;
  const ProductView view = ProductView::power(g, arity);
  return is_k_large(view, x, k, budget).large;
}

/// Elements used for constant parameters: all of G when small, otherwise a
/// fixed sample (identity, generators, a non-central element).
inline std::vector<Element> parameter_sweep(const Group& g, std::size_t full_order) {
  if (g.order() <= full_order) {
    std::vector<Element> all(g.order());
    std::iota(all.begin(), all.end(), Element{0});
    return all;
  }
  std::vector<Element> s{g.identity()};
  for (Element e : greedy_generating_set(g)) s.push_back(e);
  const Subset z = center(g);
  for (Element e = 0; e < g.order(); ++e)
    if (!z.test(e)) {
      s.push_back(e);
      break;
    }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::string el(const Group& g, Element e) { return g.name(e); }

/// Checked k^e for largeness thresholds; nullopt when absurdly large.
inline std::optional<std::size_t> ipow(std::size_t k, std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > (std::size_t{1} << 40) / std::max<std::size_t>(k, 1)) return std::nullopt;
    v *= k;
  }
  return v;
}

/// m > n - 1/2 - sqrt(n - 3/4), decided in integers.
inline bool above_two_generic_threshold(std::size_t n, std::size_t m) {
  const long long t = 2 * static_cast<long long>(n) - 2 * static_cast<long long>(m) - 1;
  return t < 0 || t * t < 4 * static_cast<long long>(n) - 3;
}

/// m < 1/2 + sqrt(n - 3/4), decided in integers.
inline bool below_two_large_threshold(std::size_t n, std::size_t m) {
  const long long t = 2 * static_cast<long long>(m) - 1;
  return t < 0 || t * t < 4 * static_cast<long long>(n) - 3;
}

/// m/n <= 1 - 1/sqrt(2n), decided in integers.
inline bool within_sqrt2n_bound(std::size_t n, std::size_t m) {
  const long long d = static_cast<long long>(n) - static_cast<long long>(m);
  return 2 * d * d >= static_cast<long long>(n);
}

inline Subset random_subset(std::size_t n, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution coin(density);
  Subset s(n);
  for (Element e = 0; e < n; ++e)
    if (coin(rng)) s.set(e);
  return s;
}

inline std::vector<std::pair<std::string, Subset>> test_subgroups(const Group& g) {
  std::vector<std::pair<std::string, Subset>> out;
  auto add = [&](std::string name, Subset h) {
    for (const auto& [_, s] : out)
      if (s == h) return;
    out.emplace_back(std::move(name), std::move(h));
  };
  add("G", g.all());
  add("Z(G)", center(g));
  add("G'", derived_subgroup(g));
  for (Element a = 0; a < g.order(); ++a) add("<" + g.name(a) + ">", subgroup_generated(g, {a}));
  return out;
}

inline Word bind_word(std::string_view text) { return parse_word(text); }

// ---------------------------------------------------------------------------
// Individual checks

inline CheckResult frobenius(const Group& g, const CheckOptions&) {
  Collector col("frobenius", g);
  for (std::size_t d : divisors(g.order())) {
    const std::size_t c = count_powers(g, static_cast<long long>(d), g.identity());
    col.add({"d=" + std::to_string(d), true, c % d == 0, std::nullopt, {{"d", d}, {"count", c}}});
  }
  return col.finish();
}

inline CheckResult miller_bound(const Group& g, const CheckOptions&) {
  Collector col("miller_bound", g);
  const std::size_t c = count_powers(g, 2, g.identity());
  const Probability mu = ratio(c, g.order()), bound(3, 4);
  col.add({"x^2=1", !g.is_abelian(), mu <= bound, bound - mu, {{"mu", to_string(mu)}, {"bound", "3/4"}}});
  return col.finish();
}

inline CheckResult laffey_p(const Group& g, const CheckOptions&) {
  Collector col("laffey_p", g);
  for (std::size_t p : prime_divisors(g.order())) {
    const std::size_t c = count_powers(g, static_cast<long long>(p), g.identity());
    const Probability mu = ratio(c, g.order()), bound = ratio(p, p + 1);
    col.add({"p=" + std::to_string(p), !is_p_group(g, p), mu <= bound, bound - mu,
             {{"p", p}, {"mu", to_string(mu)}, {"bound", to_string(bound)}}});
  }
  return col.finish();
}

inline CheckResult iiyori_yamaki(const Group& g, const CheckOptions&) {
  Collector col("iiyori_yamaki", g);
  for (std::size_t d : divisors(g.order())) {
    const Subset x = power_solutions(g, static_cast<long long>(d), g.identity());
    col.add({"d=" + std::to_string(d), x.count() == d, is_subgroup(g, x), std::nullopt,
             {{"d", d}, {"count", x.count()}}});
  }
  return col.finish();
}

inline CheckResult erdos_turan(const Group& g, const CheckOptions&) {
  Collector col("erdos_turan", g);
  const auto t = tabulate(g, bind_word("[x1,x2]"), {});
  const Probability mu = t.mu(g.identity()), kg = commuting_probability(g);
  col.add({"[x,y]=1", true, mu == kg, std::nullopt,
           {{"mu", to_string(mu)}, {"classes_over_order", to_string(kg)}}});
  return col.finish();
}

inline CheckResult gustafson_58(const Group& g, const CheckOptions&) {
  Collector col("gustafson_58", g);
  const auto t = tabulate(g, bind_word("[x1,x2]"), {});
  const Probability mu = t.mu(g.identity()), bound(5, 8);
  col.add({"[x,y]=1", !g.is_abelian(), mu <= bound, bound - mu, {{"mu", to_string(mu)}, {"bound", "5/8"}}});
  return col.finish();
}

inline CheckResult two_generic_threshold(const Group& g, const CheckOptions& o) {
  Collector col("two_generic_threshold", g);
  const std::size_t n = g.order();
  auto examine = [&](const Subset& x, const std::string& label) {
    const std::size_t m = x.count();
    if (m == 0 || m == n) return;
    try {
      if (above_two_generic_threshold(n, m))
        col.add({label + " generic", true, is_k_generic(g, x, 2, nullptr, o.budget), std::nullopt, {{"m", m}}});
      if (below_two_large_threshold(n, m))
        col.add({label + " large", true, !is_k_large(g, x, 2, o.budget).large, std::nullopt, {{"m", m}}});
    } catch (const BudgetExceeded&) {
      col.skip();
    }
  };
  if (n <= 12) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Subset x(n);
      for (Element e = 0; e < n; ++e)
        if ((bits >> e) & 1U) x.set(e);
      examine(x, "mask=" + std::to_string(bits));
    }
  } else {
    std::mt19937_64 rng(seed_of("two_generic_threshold", g.label()));
    // extremal sizes: just above the genericity threshold and just below the
    // largeness threshold
    std::size_t m_hi = n - 1;
    while (m_hi > 1 && above_two_generic_threshold(n, m_hi - 1)) --m_hi;
    std::size_t m_lo = 1;
    while (below_two_large_threshold(n, m_lo + 1) && m_lo + 1 < n) ++m_lo;
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), Element{0});
    for (int i = 0; i < 256; ++i) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const std::size_t m = (i % 3 == 0) ? m_hi : (i % 3 == 1) ? m_lo : 1 + rng() % (n - 1);
      Subset x(n);
      for (std::size_t j = 0; j < m; ++j) x.set(perm[j]);
      examine(x, "sample=" + std::to_string(i));
    }
  }
  return col.finish();
}

inline CheckResult sqrt2n_bound(const Group& g, const CheckOptions&) {
  Collector col("sqrt2n_bound", g);
  const std::size_t n = g.order(), e = exponent(g);
  for (std::size_t l = 1; l <= 12; ++l) {
    const std::size_t m = count_powers(g, static_cast<long long>(l), g.identity());
    const long long d = static_cast<long long>(n - m);
    col.add({"l=" + std::to_string(l), l % e != 0, within_sqrt2n_bound(n, m), std::nullopt,
             {{"l", l}, {"count", m}, {"slack", 2 * d * d - static_cast<long long>(n)}}});
  }
  return col.finish();
}

inline CheckResult measure_lemma(const Group& g, const CheckOptions& o) {
  Collector col("measure_lemma", g);
  const std::size_t n = g.order();
  std::mt19937_64 rng(seed_of("measure_lemma", g.label()));
  for (int i = 0; i < 40; ++i) {
    const double density = 0.15 + 0.8 * static_cast<double>(i) / 40.0;
    const Subset x = random_subset(n, rng, density);
    const std::size_t m = x.count();
    for (std::size_t k = 1; k <= 4; ++k) {
      try {
        const std::string label = "sample=" + std::to_string(i) + " k=" + std::to_string(k);
        const bool generic = is_k_generic(g, x, k, nullptr, o.budget);
        col.add({label + " generic", generic, k * m >= n, std::nullopt, {{"m", m}, {"k", k}}});
        const bool dense = k * m > (k - 1) * n;
        col.add({label + " dense", dense, dense && is_k_large(g, x, k, o.budget).large, std::nullopt,
                 {{"m", m}, {"k", k}}});
      } catch (const BudgetExceeded&) {
        col.skip();
      }
    }
  }
  return col.finish();
}

inline CheckResult subgroup_lemma(const Group& g, const CheckOptions& o) {
  Collector col("subgroup_lemma", g);
  const std::size_t n = g.order();
  std::mt19937_64 rng(seed_of("subgroup_lemma", g.label()));
  std::vector<std::pair<std::string, Subset>> subs;
  for (auto& [name, h] : test_subgroups(g))
    if (h.count() < n) subs.emplace_back(name, h);
  for (int i = 0; i < 24; ++i) {
    Subset x = random_subset(n, rng, 0.7 + 0.29 * (i % 4) / 3.0);
    try {
      const LargenessNumber lg = largeness_number(g, x, o.budget);
      for (const auto& [name, h] : subs) {
        const std::size_t k = n / h.count();
        const LargenessReport r = restrict_largeness(g, x, h, o.budget);
        const std::size_t l = lg.is_finite() ? *lg.value / k : SIZE_MAX;
        col.add({"sample=" + std::to_string(i) + " H=" + name, lg.at_least(k), r.largeness.at_least(l), std::nullopt,
                 {{"index", k}, {"largeness_in_G", lg.to_json()}, {"largeness_in_H", r.largeness.to_json()}}});
      }
    } catch (const BudgetExceeded&) {
      col.skip();
    }
  }
  return col.finish();
}

/// Word family shared by the centraliser-index checks: (text, uses g).
inline const std::vector<std::string>& fc_words() {
  static const std::vector<std::string> words = {"x1^2", "[x1,g]", "x1*g*x2", "[x1,x2]*x1^3", "x1^3"};
  return words;
}

inline std::size_t named_constants(const Word& w) {
  std::set<std::string> cs;
  collect_constants(w, cs);
  return cs.size();
}

template <class F>
void sweep_fc_family(const Group& g, const CheckOptions& o, F&& per_value) {
  const auto params = parameter_sweep(g, o.full_sweep_order);
  for (const auto& text : fc_words()) {
    const Word w = bind_word(text);
    const bool uses_g = named_constants(w) > 0;
    for (Element gp : uses_g ? params : std::vector<Element>{g.identity()}) {
      const WordTable t = tabulate(g, w, {{"g", gp}});
      for (Element c : params) per_value(text, w, uses_g, gp, t, c);
    }
  }
}

inline CheckResult bfc_bound(const Group& g, const CheckOptions& o) {
  Collector col("bfc_bound", g);
  const std::size_t k = max_centralizer_index(g);
  sweep_fc_family(g, o, [&](const std::string& text, const Word&, bool uses_g, Element gp, const WordTable& t,
                            Element c) {
    const std::size_t n = t.arity, m = uses_g ? 1 : 0;
    const auto d = ipow(k, n * n + m * n);
    const std::string label = text + " g=" + el(g, gp) + " c=" + el(g, c);
    const Probability mu = t.mu(c);
    if (!d) {
      // bound within 2^-40 of 1: any proper solution set is below it
      col.add({label, !t.identity(c), t.counts[c] < t.total, std::nullopt, {{"mu", to_string(mu)}}});
      return;
    }
    const Probability bound = Probability(1) - Probability(1, static_cast<std::int64_t>(2 * *d));
    col.add({label, !t.identity(c), mu <= bound, bound - mu, {{"mu", to_string(mu)}, {"bound", to_string(bound)}}});
  });
  return col.finish();
}

inline CheckResult center_by_finite(const Group& g, const CheckOptions& o) {
  Collector col("center_by_finite", g);
  const std::size_t k = g.order() / center(g).count();
  sweep_fc_family(g, o, [&](const std::string& text, const Word&, bool, Element gp, const WordTable& t, Element c) {
    const auto kn = ipow(k, t.arity);
    const std::string label = text + " g=" + el(g, gp) + " c=" + el(g, c);
    const std::size_t threshold = kn ? 2 * *kn : SIZE_MAX;
    try {
      const bool hyp = t.counts[c] > 0 && threshold <= t.total + 1 &&
                       large_in_power(g, t.arity, t.solutions(c), threshold, o.budget);
      col.add({label, hyp || t.identity(c), t.identity(c), std::nullopt, {{"threshold", threshold}}});
    } catch (const BudgetExceeded&) {
      col.skip();
    }
  });
  return col.finish();
}

inline CheckResult central_identity(const Group& g, const CheckOptions& o) {
  Collector col("central_identity", g);
  const Subset z = center(g);
  const auto zs = z.elements();
  sweep_fc_family(g, o, [&](const std::string& text, const Word& w, bool, Element gp, const WordTable& t, Element c) {
    const std::string label = text + " g=" + el(g, gp) + " c=" + el(g, c);
    try {
      const bool hyp = t.counts[c] > 0 && large_in_power(g, t.arity, t.solutions(c), 2, o.budget);
      if (!hyp) {
        col.add({label, false, true, std::nullopt, {}});
        return;
      }
      const CompiledWord cw(g, w, {{"g", g.identity()}});
      bool ok = true;
      std::vector<Element> a(t.arity, 0);
      std::vector<std::size_t> idx(t.arity, 0);
      while (true) {
        for (std::size_t i = 0; i < t.arity; ++i) a[i] = zs[idx[i]];
        if (cw(a) != g.identity()) ok = false;
        std::size_t i = 0;
        while (i < t.arity && ++idx[i] == zs.size()) idx[i++] = 0;
        if (i == t.arity || !ok) break;
      }
      col.add({label, true, ok, std::nullopt, {{"center_order", zs.size()}}});
    } catch (const BudgetExceeded&) {
      col.skip();
    }
  });
  return col.finish();
}

inline CheckResult center_gcd(const Group& g, const CheckOptions& o) {
  Collector col("center_gcd", g);
  static const std::vector<std::vector<long long>> families = {{2}, {3}, {4}, {6}, {2, 4}, {2, 3}, {4, 6}, {3, 6}};
  std::size_t ez = 1;
  center(g).for_each([&](Element e) { ez = std::lcm(ez, g.element_order(e)); });
  const auto params = parameter_sweep(g, o.full_sweep_order);
  for (const auto& ks : families) {
    std::string text;
    long long gcd = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (i) text += "*";
      text += "x" + std::to_string(i + 1) + "^" + std::to_string(ks[i]);
      gcd = std::gcd(gcd, ks[i]);
    }
    const WordTable t = tabulate(g, bind_word(text), {});
    for (Element c : params) {
      try {
        const bool hyp = t.counts[c] > 0 && large_in_power(g, t.arity, t.solutions(c), 2, o.budget);
        col.add({text + " c=" + el(g, c), hyp, static_cast<long long>(ez) != 0 && gcd % static_cast<long long>(ez) == 0,
                 std::nullopt, {{"center_exponent", ez}, {"gcd", gcd}}});
      } catch (const BudgetExceeded&) {
        col.skip();
      }
    }
  }
  return col.finish();
}

inline CheckResult square_eq(const Group& g, const CheckOptions& o) {
  Collector col("square_eq", g);
  const WordTable t = tabulate(g, bind_word("x1^2"), {});
  const bool exp2 = 2 % exponent(g) == 0;
  for (Element c : parameter_sweep(g, o.full_sweep_order)) {
    try {
      const bool structure = g.is_abelian() && exp2 && c == g.identity();
      const Probability mu = t.mu(c), bound(3, 4);
      const bool large4 = t.counts[c] > 0 && large_in_power(g, 1, t.solutions(c), 4, o.budget);
      col.add({"c=" + el(g, c), !structure, mu <= bound && !large4, bound - mu,
               {{"mu", to_string(mu)}, {"four_large", large4}}});
    } catch (const BudgetExceeded&) {
      col.skip();
    }
  }
  return col.finish();
}

inline CheckResult xaxb(const Group& g, const CheckOptions& o) {
  Collector col("xaxb", g);
  const auto params = parameter_sweep(g, std::min<std::size_t>(o.full_sweep_order, 16));
  const bool exp2 = 2 % exponent(g) == 0;
  for (Element a : params)
    for (Element b : params) {
      const Bindings bd{{"a", a}, {"b", b}};
      const SolutionSet s1 = solution_set(g, parse_equation("x1*a*x1 = b"), bd);
      const SolutionSet s2 = solution_set(g, parse_equation("(a*x1)^2 = a*b"), bd);
      const Probability mu = s1.probability(), bound(3, 4);
      const bool same = s1.bits() == s2.bits();
      col.add({"a=" + el(g, a) + " b=" + el(g, b), !(exp2 && a == b), same && mu <= bound, bound - mu,
               {{"mu", to_string(mu)}, {"same_solutions", same}}});
    }
  return col.finish();
}

inline CheckResult cube_7large_engel(const Group& g, const CheckOptions& o) {
  Collector col("cube_7large_engel", g);
  const Subset x = power_solutions(g, 3, g.identity());
  try {
    const bool hyp = large_in_power(g, 1, x, 7, o.budget);
    col.add({"x^3=1", hyp, is_2_engel(g), std::nullopt, {{"count", x.count()}}});
  } catch (const BudgetExceeded&) {
    col.skip();
  }
  return col.finish();
}

inline CheckResult cube_2large_exp3(const Group& g, const CheckOptions& o) {
  Collector col("cube_2large_exp3", g);
  const Subset x = power_solutions(g, 3, g.identity());
  const bool hyp = is_2_engel(g) && large_in_power(g, 1, x, 2, o.budget);
  col.add({"x^3=1", hyp, 3 % exponent(g) == 0, std::nullopt, {{"count", x.count()}, {"exponent", exponent(g)}}});
  return col.finish();
}

inline CheckResult cube_67(const Group& g, const CheckOptions&) {
  Collector col("cube_67", g);
  const Probability mu = ratio(count_powers(g, 3, g.identity()), g.order());
  const bool not_exp3 = 3 % exponent(g) != 0;
  const Probability b67(6, 7), b12(1, 2);
  col.add({"6/7", not_exp3, mu <= b67, b67 - mu, {{"mu", to_string(mu)}, {"bound", "6/7"}}});
  if (is_2_engel(g))
    col.add({"2-Engel 1/2", not_exp3, mu <= b12, b12 - mu, {{"mu", to_string(mu)}, {"bound", "1/2"}}});
  return col.finish();
}

inline CheckResult comm_product(const Group& g, const CheckOptions& o) {
  Collector col("comm_product", g);
  const Subset z = center(g);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto params = parameter_sweep(g, n == 1 ? o.full_sweep_order : 6);
    const auto cs = parameter_sweep(g, o.full_sweep_order);
    std::string text;
    for (std::size_t i = 1; i <= n; ++i)
      text += (i > 1 ? "*" : "") + std::string("[x") + std::to_string(i) + ",g" + std::to_string(i) + "]";
    const Word w = bind_word(text);
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Bindings b;
      bool central = true;
      std::string glabel;
      for (std::size_t i = 0; i < n; ++i) {
        b["g" + std::to_string(i + 1)] = params[idx[i]];
        central = central && z.test(params[idx[i]]);
        glabel += " g" + std::to_string(i + 1) + "=" + el(g, params[idx[i]]);
      }
      const WordTable t = tabulate(g, w, b);
      for (Element c : cs) {
        try {
          const bool structure = central && c == g.identity();
          const Probability mu = t.mu(c), half(1, 2);
          const bool large2 = t.counts[c] > 0 && large_in_power(g, n, t.solutions(c), 2, o.budget);
          col.add({text + glabel + " c=" + el(g, c), !structure, !large2 && mu <= half, half - mu,
                   {{"mu", to_string(mu)}, {"two_large", large2}}});
        } catch (const BudgetExceeded&) {
          col.skip();
        }
      }
      std::size_t i = 0;
      while (i < n && ++idx[i] == params.size()) idx[i++] = 0;
      if (i == n) break;
    }
  }
  return col.finish();
}

inline CheckResult comm_abelian(const Group& g, const CheckOptions& o) {
  Collector col("comm_abelian", g);
  const WordTable t = tabulate(g, bind_word("[x1,x2]"), {});
  for (Element c : parameter_sweep(g, o.full_sweep_order)) {
    try {
      const Probability mu = t.mu(c), bound(3, 4);
      const bool large4 = t.counts[c] > 0 && large_in_power(g, 2, t.solutions(c), 4, o.budget);
      col.add({"c=" + el(g, c), !(g.is_abelian() && c == g.identity()), !large4 && mu <= bound, bound - mu,
               {{"mu", to_string(mu)}, {"four_large", large4}}});
    } catch (const BudgetExceeded&) {
      col.skip();
    }
  }
  return col.finish();
}

inline CheckResult word_comm_abelian(const Group& g, const CheckOptions& o) {
  Collector col("word_comm_abelian", g);
  // w(x1, g) [x1, x2] = c with x1 in the tuple of w and x2 outside it
  static const std::vector<std::string> words = {"x1^2", "[x1,g]", "x1*g", "x1^3*g"};
  const auto params = parameter_sweep(g, std::min<std::size_t>(o.full_sweep_order, 8));
  const auto cs = parameter_sweep(g, o.full_sweep_order);
  for (const auto& wt : words) {
    const Word w = bind_word(wt);
    const Word full = Word::prod(w, bind_word("[x1,x2]"));
    for (Element gp : params) {
      const Bindings b{{"g", gp}};
      const WordTable tw = tabulate(g, w, b), tf = tabulate(g, full, b);
      for (Element c : cs) {
        try {
          const bool structure = g.is_abelian() && tw.identity(c);
          const Probability mu = tf.mu(c), bound(3, 4);
          const bool large4 = tf.counts[c] > 0 && large_in_power(g, 2, tf.solutions(c), 4, o.budget);
          col.add({wt + "*[x1,x2] g=" + el(g, gp) + " c=" + el(g, c), !structure, !large4 && mu <= bound,
                   bound - mu, {{"mu", to_string(mu)}, {"four_large", large4}}});
        } catch (const BudgetExceeded&) {
          col.skip();
        }
      }
    }
  }
  return col.finish();
}

inline bool classes_commute(const Group& g, Element a, Element b) {
  const Subset ca = conjugacy_class(g, a), cb = conjugacy_class(g, b);
  bool ok = true;
  ca.for_each([&](Element x) {
    cb.for_each([&](Element y) { ok = ok && g.mul(x, y) == g.mul(y, x); });
  });
  return ok;
}

inline CheckResult conj_comm(const Group& g, const CheckOptions& o) {
  Collector col("conj_comm", g);
  const auto params = parameter_sweep(g, std::min<std::size_t>(o.full_sweep_order, 24));
  const Word w = bind_word("[g,h^x1]");
  for (Element a : params)
    for (Element b : params) {
      try {
        const std::size_t k = std::min(g.order() / centralizer(g, a).count(), g.order() / centralizer(g, b).count());
        const WordTable t = tabulate(g, w, {{"g", a}, {"h", b}});
        const bool hyp = t.counts[g.identity()] > 0 && large_in_power(g, 1, t.solutions(g.identity()), k, o.budget);
        col.add({"g=" + el(g, a) + " h=" + el(g, b), hyp, classes_commute(g, a, b), std::nullopt, {{"k", k}}});
      } catch (const BudgetExceeded&) {
        col.skip();
      }
    }
  return col.finish();
}

inline CheckResult triple_comm(const Group& g, const CheckOptions& o) {
  Collector col("triple_comm", g);
  const auto params = parameter_sweep(g, std::min<std::size_t>(o.full_sweep_order, 12));
  const auto cs = parameter_sweep(g, o.full_sweep_order);
  const Subset z = center(g);
  const Word w1 = bind_word("[x1,g,h]"), w2 = bind_word("[g,x1,h]");
  for (Element a : params)
    for (Element b : params) {
      const std::size_t k = g.order() / centralizer(g, b).count();
      bool all1 = true, all2 = true;
      for (Element x = 0; x < g.order(); ++x) {
        all1 = all1 && g.comm(g.comm(x, a), b) == g.identity();
        all2 = all2 && g.comm(g.comm(a, x), b) == g.identity();
      }
      const Bindings bd{{"g", a}, {"h", b}};
      const WordTable t1 = tabulate(g, w1, bd), t2 = tabulate(g, w2, bd);
      for (Element c : cs) {
        const std::string label = "g=" + el(g, a) + " h=" + el(g, b) + " c=" + el(g, c);
        try {
          const bool h1 = t1.counts[c] > 0 && large_in_power(g, 1, t1.solutions(c), 2 * k, o.budget);
          col.add({"[x,g,h] " + label, h1, all1, std::nullopt, {{"k", k}}});
          if (z.test(c)) {
            const bool h2 = t2.counts[c] > 0 && large_in_power(g, 1, t2.solutions(c), 2 * k, o.budget);
            col.add({"[g,x,h] " + label, h2, all2, std::nullopt, {{"k", k}}});
          }
        } catch (const BudgetExceeded&) {
          col.skip();
        }
      }
    }
  return col.finish();
}

inline CheckResult nilp_mc(const Group& g, const CheckOptions& o) {
  Collector col("nilp_mc", g);
  const auto cls = nilpotency_class(g);
  const auto cs = parameter_sweep(g, o.full_sweep_order);
  for (std::size_t k = 1; k <= 2; ++k) {
    if (k == 2 && g.order() > 24) break;
    const McWitness mc = mc_witness(g, k);
    std::string text = "[x1";
    for (std::size_t i = 2; i <= k + 1; ++i) text += ",x" + std::to_string(i);
    text += "]";
    const WordTable t = tabulate(g, bind_word(text), {});
    const auto sk = ipow(mc.s + 1, k);
    const Probability bound = Probability(1) - Probability(1, static_cast<std::int64_t>(2 * sk.value_or(1)));
    for (Element c : cs) {
      const bool structure = cls && *cls <= k && c == g.identity();
      const Probability mu = t.mu(c);
      col.add({"k=" + std::to_string(k) + " c=" + el(g, c), !structure, mu <= bound, bound - mu,
               {{"k", k}, {"s", mc.s}, {"mu", to_string(mu)}, {"bound", to_string(bound)}}});
    }
  }
  return col.finish();
}

struct SupercommutatorFamilyEntry {
  const char* text;
  /// minimum number of z-variables per factor
  std::size_t n;
};

/// Products of supercommutators in x-variables and z-variables z1, z2; the z's
/// are bound to constants.
inline const std::vector<SupercommutatorFamilyEntry>& supercommutator_family() {
  static const std::vector<SupercommutatorFamilyEntry> family = {
      {"[x1,z1]", 1},         {"[x1,x2]", 0},        {"[[x1,z1],z2]", 2}, {"[x1,z1]*[x2,z1]", 1},
      {"[[x1,x2],z1]", 1},    {"[x1,[z1,z2]]", 2},   {"[x1,x2,x1]", 0},   {"[x1,z1]*[x1,z2]", 1},
      {"[x1^-1,z1]", 1},      {"[[x1,z1],[x2,z2]]", 2}};
  return family;
}

inline CheckResult supercomm_const(const Group& g, const CheckOptions& o) {
  Collector col("supercomm_const", g);
  const auto cls = nilpotency_class(g);
  if (!cls) {
    col.add({"not nilpotent", false, true, std::nullopt, {}});
    return col.finish();
  }
  const std::size_t k = *cls;
  const auto params = parameter_sweep(g, std::min<std::size_t>(o.full_sweep_order, 8));
  const auto cs = parameter_sweep(g, o.full_sweep_order);
  for (const auto& entry : supercommutator_family()) {
    const Word w = bind_word(entry.text);
    const std::size_t threshold = entry.n >= k ? 1 : (std::size_t{1} << (k - entry.n));
    for (Element z1 : params)
      for (Element z2 : params) {
        if (named_constants(w) < 2 && z2 != params.front()) continue;
        const WordTable t = tabulate(g, w, {{"z1", z1}, {"z2", z2}});
        for (Element c : cs) {
          try {
            const bool hyp = t.counts[c] > 0 && large_in_power(g, t.arity, t.solutions(c), threshold, o.budget);
            col.add({std::string(entry.text) + " z1=" + el(g, z1) + " z2=" + el(g, z2) + " c=" + el(g, c), hyp,
                     c == g.identity(), std::nullopt, {{"class", k}, {"threshold", threshold}}});
          } catch (const BudgetExceeded&) {
            col.skip();
          }
        }
      }
  }
  return col.finish();
}

inline CheckResult nilpotent_identity(const Group& g, const CheckOptions& o) {
  Collector col("nilpotent_identity", g);
  const auto cls = nilpotency_class(g);
  if (!cls) {
    col.add({"not nilpotent", false, true, std::nullopt, {}});
    return col.finish();
  }
  static const std::vector<std::string> words = {"x1^2",     "x1^3",          "[x1,x2]",    "[x1,g]",
                                                 "x1*g*x1", "[x1,x2,x2]",    "x1^2*x2^2", "[x1,g]*x1^2",
                                                 "x1^4",    "[x1^2,x2]*g"};
  const std::size_t threshold = std::size_t{1} << *cls;
  const auto params = parameter_sweep(g, std::min<std::size_t>(o.full_sweep_order, 8));
  const auto cs = parameter_sweep(g, o.full_sweep_order);
  for (const auto& text : words) {
    const Word w = bind_word(text);
    const bool uses_g = named_constants(w) > 0;
    for (Element gp : uses_g ? params : std::vector<Element>{g.identity()}) {
      const WordTable t = tabulate(g, w, {{"g", gp}});
      for (Element c : cs) {
        try {
          const bool hyp = t.counts[c] > 0 && large_in_power(g, t.arity, t.solutions(c), threshold, o.budget);
          col.add({text + " g=" + el(g, gp) + " c=" + el(g, c), hyp, t.identity(c), std::nullopt,
                   {{"class", *cls}, {"threshold", threshold}}});
        } catch (const BudgetExceeded&) {
          col.skip();
        }
      }
    }
  }
  return col.finish();
}

inline CheckResult nilpotent_exponent(const Group& g, const CheckOptions& o) {
  Collector col("nilpotent_exponent", g);
  const auto cls = nilpotency_class(g);
  if (!cls) {
    col.add({"not nilpotent", false, true, std::nullopt, {}});
    return col.finish();
  }
  const std::size_t threshold = std::size_t{1} << *cls, e = exponent(g);
  for (long long n = 1; n <= 8; ++n)
    for (Element c : parameter_sweep(g, o.full_sweep_order)) {
      try {
        const Subset x = power_solutions(g, n, c);
        const bool hyp = large_in_power(g, 1, x, threshold, o.budget);
        col.add({"n=" + std::to_string(n) + " c=" + el(g, c), hyp,
                 c == g.identity() && static_cast<std::size_t>(n) % e == 0, std::nullopt,
                 {{"class", *cls}, {"exponent", e}}});
      } catch (const BudgetExceeded&) {
        col.skip();
      }
    }
  return col.finish();
}

inline CheckResult autocomm(const Group& g, const CheckOptions& o) {
  Collector col("autocomm", g);
  std::vector<AutomorphismGroup> sigmas;
  sigmas.push_back(inner_automorphisms(g));
  try {
    sigmas.push_back(automorphism_group(g));
  } catch (const Error&) {
    col.skip();
  }
  for (const auto& sigma : sigmas) {
    const Subset fix = fixed_subgroup(g, sigma);
    for (const auto& [name, h] : test_subgroups(g)) {
      try {
        const Autocommutativity ac = autocommutativity(g, h, sigma);
        const ProductView view({&sigma.group, &ac.h_group});
        const bool large4 = is_k_large(view, ac.pairs, 4, o.budget).large;
        const Probability bound(3, 4);
        col.add({sigma.group.label() + " H=" + name, !h.is_subset_of(fix), ac.degree <= bound && !large4,
                 bound - ac.degree,
                 {{"sigma", sigma.group.label()}, {"sigma_order", sigma.group.order()}, {"ac", to_string(ac.degree)},
                  {"four_large", large4}}});
      } catch (const BudgetExceeded&) {
        col.skip();
      }
    }
  }
  return col.finish();
}

}  // namespace verify_detail

/// All checks in canonical order.
inline const std::vector<CheckSpec>& check_registry() {
  using namespace verify_detail;
  static const std::vector<CheckSpec> registry = {
      {"frobenius", "d | |G| implies d divides the number of solutions of x^d = 1", "cheap", 4096, frobenius},
      {"miller_bound", "G non-abelian implies mu(x^2 = 1) <= 3/4", "cheap", 4096, miller_bound},
      {"laffey_p", "p | |G| and G not a p-group implies mu(x^p = 1) <= p/(p+1)", "cheap", 4096, laffey_p},
      {"iiyori_yamaki", "d | |G| and exactly d solutions of x^d = 1 implies they form a subgroup", "cheap", 4096,
       iiyori_yamaki},
      {"erdos_turan", "mu([x,y] = 1) equals the number of conjugacy classes over |G|", "cheap", 256, erdos_turan},
      {"gustafson_58", "G non-abelian implies mu([x,y] = 1) <= 5/8", "cheap", 256, gustafson_58},
      {"two_generic_threshold", "m > n - 1/2 - sqrt(n - 3/4) implies 2-generic; m < 1/2 + sqrt(n - 3/4) implies not 2-large",
       "moderate", 128, two_generic_threshold},
      {"sqrt2n_bound", "exponent not dividing l implies mu(x^l = 1) <= 1 - 1/sqrt(2n)", "cheap", 4096, sqrt2n_bound},
      {"measure_lemma", "k-generic implies proportion >= 1/k; proportion > 1 - 1/k implies k-large", "moderate", 128,
       measure_lemma},
      {"subgroup_lemma", "X kl-large in G and |G:H| = k implies X cap H l-large in H", "moderate", 64, subgroup_lemma},
      {"bfc_bound", "w(x,g) = c not an identity implies mu <= 1 - 1/(2k^(n^2+mn)), k the largest centraliser index",
       "moderate", 64, bfc_bound},
      {"center_by_finite", "w(x,g) = c 2k^n-large with k = |G:Z(G)| implies an identity", "moderate", 32,
       center_by_finite},
      {"central_identity", "w(x,g) = c 2-large implies w(x,1) = 1 on Z(G)^n", "moderate", 32, central_identity},
      {"center_gcd", "x1^k1...xn^kn = c 2-large implies exp Z(G) divides gcd(k1..kn)", "moderate", 64, center_gcd},
      {"square_eq", "x^2 = c 4-large implies G abelian of exponent 2 and c = 1; otherwise mu <= 3/4", "cheap", 256,
       square_eq},
      {"xaxb", "xax = b has the solutions of (ax)^2 = ab; mu <= 3/4 unless exponent 2 and a = b", "cheap", 64, xaxb},
      {"cube_7large_engel", "x^3 = 1 7-large implies 2-Engel", "cheap", 256, cube_7large_engel},
      {"cube_2large_exp3", "2-Engel and x^3 = 1 2-large implies exponent 3", "cheap", 256, cube_2large_exp3},
      {"cube_67", "exponent not dividing 3 implies mu(x^3 = 1) <= 6/7, and <= 1/2 when 2-Engel", "cheap", 4096,
       cube_67},
      {"comm_product", "prod [x_i,g_i] = c 2-large implies all g_i central and c = 1; otherwise mu <= 1/2", "moderate",
       32, comm_product},
      {"comm_abelian", "[x,y] = c 4-large implies G abelian and c = 1; otherwise mu <= 3/4", "moderate", 64,
       comm_abelian},
      {"word_comm_abelian", "w(x,g)[x,y] = c 4-large implies G abelian and w = c identically", "moderate", 32,
       word_comm_abelian},
      {"conj_comm", "[g,h^x] = 1 k-large, k the smaller centraliser index, implies g^G and h^G commute", "moderate", 64,
       conj_comm},
      {"triple_comm", "[x,g,h] = c 2k-large, k = |G:C(h)|, implies [G,g,h] = 1; likewise [g,x,h] = c with c central",
       "moderate", 64, triple_comm},
      {"nilp_mc", "unless class <= k and c = 1, mu([x0..xk] = c) <= 1 - (s+1)^-k / 2", "moderate", 32, nilp_mc},
      {"supercomm_const",
       "class k nilpotent, v a product of supercommutators with var' >= n, v = c max(2^(k-n),1)-large implies c = 1",
       "moderate", 32, supercomm_const},
      {"nilpotent_identity", "class k nilpotent and v = c 2^k-large implies v = c identically", "moderate", 32,
       nilpotent_identity},
      {"nilpotent_exponent", "class k nilpotent and x^n = c 2^k-large implies c = 1 and exp G divides n", "cheap", 256,
       nilpotent_exponent},
      {"autocomm", "H not fixed by Sigma implies ac(H;Sigma) <= 3/4 and the fixed-pair set is not 4-large", "moderate",
       64, autocomm},
  };
  return registry;
}

inline const CheckSpec& find_check(std::string_view id) {
  for (const auto& c : check_registry())
    if (c.id == id) return c;
  std::string known;
  for (const auto& c : check_registry()) known += (known.empty() ? "" : ", ") + c.id;
  throw UnknownCheck("unknown check '" + std::string(id) + "'; known checks: " + known);
}

inline CheckResult run_check(std::string_view id, const Group& g, const CheckOptions& options = {}) {
  const CheckSpec& spec = find_check(id);
  if (g.order() > spec.max_order)
    throw OrderBound("check " + spec.id + " is limited to groups of order <= " + std::to_string(spec.max_order));
  return spec.run(g, options);
}

struct CheckSummary {
  std::size_t passed = 0, failed = 0, vacuous = 0, nonvacuous = 0, skipped_instances = 0;
};

struct SuiteReport {
  std::vector<CheckResult> results;
  std::vector<std::string> errors;

  std::map<std::string, CheckSummary> per_check() const {
    std::map<std::string, CheckSummary> m;
    for (const auto& r : results) {
      auto& s = m[r.check];
      (r.passed ? s.passed : s.failed) += 1;
      (r.vacuous ? s.vacuous : s.nonvacuous) += 1;
      s.skipped_instances += r.skipped;
    }
    return m;
  }
  std::size_t failed() const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](auto& r) { return !r.passed; }));
  }
  std::size_t vacuous() const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](auto& r) { return r.vacuous; }));
  }
  bool ok() const { return failed() == 0 && errors.empty(); }

  /// The results as a JSON array, in canonical order.
  nlohmann::json to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(r.to_json());
    return arr;
  }

  nlohmann::json summary_json() const {
    auto checks = nlohmann::json::object();
    for (const auto& [id, s] : per_check())
      checks[id] = {{"passed", s.passed},
                    {"failed", s.failed},
                    {"vacuous", s.vacuous},
                    {"nonvacuous", s.nonvacuous},
                    {"skipped_instances", s.skipped_instances}};
    return {{"total", results.size()},
            {"passed", results.size() - failed()},
            {"failed", failed()},
            {"vacuous", vacuous()},
            {"per_check", checks},
            {"errors", errors}};
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "check,group,passed,vacuous,margin\n";
    for (const auto& r : results)
      out << r.check << ',' << r.group << ',' << (r.passed ? "true" : "false") << ',' << (r.vacuous ? "true" : "false")
          << ',' << (r.margin ? to_string(*r.margin) : "") << '\n';
    return out.str();
  }
};

/// Every selected check on every selected group, ordered by registry position
/// and then by the order of the groups given.
inline SuiteReport run_suite(const std::vector<Group>& groups, const std::vector<std::string>& check_ids,
                             const CheckOptions& options = {}, unsigned jobs = 1) {
  std::vector<const CheckSpec*> specs;
  for (const auto& spec : check_registry())
    if (std::find(check_ids.begin(), check_ids.end(), spec.id) != check_ids.end()) specs.push_back(&spec);
  for (const auto& id : check_ids) find_check(id);
  struct Task {
    const CheckSpec* spec;
    const Group* group;
  };
  std::vector<Task> tasks;
  for (const auto* spec : specs)
    for (const auto& g : groups)
      if (g.order() <= spec->max_order) tasks.push_back({spec, &g});
  std::vector<std::optional<CheckResult>> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        results[i] = tasks[i].spec->run(*tasks[i].group, options);
      } catch (const std::exception& e) {
        errors[i] = tasks[i].spec->id + " on " + tasks[i].group->label() + ": " + e.what();
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  SuiteReport report;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (results[i]) report.results.push_back(std::move(*results[i]));
    if (!errors[i].empty()) report.errors.push_back(errors[i]);
  }
  return report;
}

inline std::vector<std::string> all_check_ids() {
  std::vector<std::string> ids;
  for (const auto& c : check_registry()) ids.push_back(c.id);
  return ids;
}

// ---------------------------------------------------------------------------
// Counterexample search

inline const std::vector<std::string>& open_questions() {
  static const std::vector<std::string> ids = {"oq_cube_5large", "oq_comm_2large_c", "oq_gamma_k"};
  return ids;
}

struct Counterexample {
  std::string question;
  std::string group;
  nlohmann::json data;
  bool reverified = false;
};

namespace verify_detail {

/// Independent confirmation of a reported witness: solution sets come from the
/// probability module and largeness from an exact cover number.
inline bool reverify(const std::string& q, const Group& g, const nlohmann::json& data) {
  if (q == "oq_cube_5large") {
    const SolutionSet s = solution_set(g, parse_equation("x1^3 = #e"));
    const auto l = largeness_number(g, s.bits());
    const SolutionSet engel = solution_set(g, parse_equation("[x1,x2,x2] = #e"));
    return l.at_least(5) && engel.count() != engel.total();
  }
  if (q == "oq_comm_2large_c") {
    const Element c = data.at("c").get<Element>();
    const SolutionSet s = solution_set(g, parse_equation("[x1,x2] = c"), {{"c", c}});
    const ProductView v = ProductView::power(g, 2);
    return c != g.identity() && largeness_number(v, s.bits()).at_least(2);
  }
  if (q == "oq_gamma_k") {
    const Element gp = data.at("g").get<Element>();
    const std::size_t k = data.at("k").get<std::size_t>();
    const Subset cg = centralizer(g, gp);
    const ProductView v = ProductView::power(g, k);
    std::string text = "[x1";
    for (std::size_t i = 2; i <= k; ++i) text += ",x" + std::to_string(i);
    text += "]";
    const CompiledWord w(g, parse_word(k == 1 ? "x1" : text));
    Subset s(v.order());
    for (Element e = 0; e < v.order(); ++e)
      if (cg.test(w(v.decode(e)))) s.set(e);
    const auto lcs = lower_central_series(g);
    const Subset& gk = k - 1 < lcs.size() ? lcs[k - 1] : lcs.back();
    return largeness_number(v, s).at_least(std::size_t{1} << k) && !gk.is_subset_of(cg);
  }
  return false;
}

}  // namespace verify_detail

/// First witness to an open question among the given groups, re-verified.
inline std::optional<Counterexample> search_counterexample(std::string_view question, const std::vector<Group>& groups,
                                                           std::uint64_t budget = default_node_budget()) {
  using namespace verify_detail;
  const std::string q(question);
  if (std::find(open_questions().begin(), open_questions().end(), q) == open_questions().end())
    throw UnknownCheck("UnknownQuestion: '" + q + "'");
  for (const auto& g : groups) {
    std::optional<nlohmann::json> found;
    if (q == "oq_cube_5large") {
      if (!is_2_engel(g) && large_in_power(g, 1, power_solutions(g, 3, g.identity()), 5, budget))
        found = nlohmann::json::object();
    } else if (q == "oq_comm_2large_c") {
      const WordTable t = tabulate(g, parse_word("[x1,x2]"), {});
      for (Element c = 0; c < g.order() && !found; ++c)
        if (c != g.identity() && t.counts[c] > 0 && large_in_power(g, 2, t.solutions(c), 2, budget))
          found = nlohmann::json{{"c", c}, {"c_name", g.name(c)}};
    } else {
      const auto lcs = lower_central_series(g);
      for (std::size_t k = 1; k <= 2 && !found; ++k) {
        if (k == 2 && g.order() > 24) break;
        const Subset& gk = k - 1 < lcs.size() ? lcs[k - 1] : lcs.back();
        const WordTable t = tabulate(g, parse_word(k == 1 ? "x1" : "[x1,x2]"), {}, k);
        for (Element gp = 0; gp < g.order() && !found; ++gp) {
          const Subset cg = centralizer(g, gp);
          if (gk.is_subset_of(cg)) continue;
          Subset s(t.total);
          for (std::size_t i = 0; i < t.total; ++i)
            if (cg.test(t.values[i])) s.set(static_cast<Element>(i));
          if (large_in_power(g, k, s, std::size_t{1} << k, budget))
            found = nlohmann::json{{"g", gp}, {"g_name", g.name(gp)}, {"k", k}};
        }
      }
    }
    if (found) {
      Counterexample ce{q, g.label(), *found, reverify(q, g, *found)};
      return ce;
    }
  }
  return std::nullopt;
}

}  // namespace eqlarge
