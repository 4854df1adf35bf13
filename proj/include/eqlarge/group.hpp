#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "subset.hpp"

namespace eqlarge {

/// Groups up to this order get an exhaustive associativity check when built
/// from a raw Cayley table.
inline constexpr std::size_t kAssociativityValidationBound = 512;

/// Largest order for which a multiplication table is materialized.
inline constexpr std::size_t kDefaultOrderBound = 4096;

/// A finite group given by its full multiplication table.
///
/// Elements are the indices 0..order()-1; names are for display only. Groups
/// are immutable once built.
class Group {
 public:
  Group() : Group(1, 0, {0}, "C1", {"e"}) {}

  /// Build from a table without any validation. Callers guarantee the group
  /// axioms (catalog and permutation constructions).
  static Group trusted(std::size_t order, std::vector<Element> table, std::string label,
                       std::vector<std::string> names = {}) {
    Element id = 0;
    for (Element e = 0; e < order; ++e) {
      if (table[static_cast<std::size_t>(e) * order + e] == e) {
        id = e;
        break;
      }
    }
    return Group(order, id, std::move(table), std::move(label), std::move(names));
  }

  /// Validate a Cayley table and derive identity and inverses from it.
  static Group from_cayley_table(const std::vector<std::vector<Element>>& rows,
                                 std::vector<std::string> names = {}, std::string label = "G");

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const noexcept { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const noexcept { return inverses_[a]; }

  /// x^y = y^-1 x y
  Element conj(Element x, Element y) const noexcept { return mul(mul(inv(y), x), y); }
  /// [x,y] = x^-1 y^-1 x y
  Element comm(Element x, Element y) const noexcept { return mul(mul(inv(x), inv(y)), mul(x, y)); }

  Element pow(Element a, long long k) const noexcept {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    Element result = identity_;
    while (k) {
      if (k & 1) result = mul(result, a);
      a = mul(a, a);
      k >>= 1;
    }
    return result;
  }

  std::size_t element_order(Element a) const noexcept {
    std::size_t n = 1;
    for (Element p = a; p != identity_; p = mul(p, a)) ++n;
    return n;
  }

  const std::string& label() const noexcept { return label_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool has_names() const noexcept { return !names_.empty(); }
  std::string name(Element e) const {
    if (e < names_.size()) return names_[e];
    return "#" + std::to_string(e);
  }
  std::optional<Element> find_name(std::string_view n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return static_cast<Element>(i);
    return std::nullopt;
  }

  Group relabeled(std::string label) const {
    Group g = *this;
    g.label_ = std::move(label);
    return g;
  }

  bool is_abelian() const noexcept {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Row-major copy of the table, for serialization.
  std::vector<std::vector<Element>> rows() const {
    std::vector<std::vector<Element>> out(order_);
    for (std::size_t a = 0; a < order_; ++a)
      out[a].assign(table_.begin() + static_cast<std::ptrdiff_t>(a * order_),
                    table_.begin() + static_cast<std::ptrdiff_t>((a + 1) * order_));
    return out;
  }

  Subset none() const { return Subset(order_); }
  Subset all() const { return Subset::full(order_); }

 private:
  Group(std::size_t order, Element identity, std::vector<Element> table, std::string label,
        std::vector<std::string> names)
      : order_(order), identity_(identity), table_(std::move(table)), label_(std::move(label)),
        names_(std::move(names)) {
    inverses_.resize(order_);
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b)
        if (mul(a, b) == identity_) {
          inverses_[a] = b;
          break;
        }
  }

  std::size_t order_;
  Element identity_;
  std::vector<Element> table_;
  std::vector<Element> inverses_;
  std::string label_;
  std::vector<std::string> names_;
};

inline Group Group::from_cayley_table(const std::vector<std::vector<Element>>& rows,
                                      std::vector<std::string> names, std::string label) {
  const std::size_t n = rows.size();
  auto fail = [](const std::string& axiom, const std::string& detail) {
    throw NotAGroup(axiom + ": " + detail);
  };
  if (n == 0) fail("order", "empty table");
  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) fail("shape", "row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()));
    for (Element v : rows[r]) {
      if (v >= n) fail("range", "entry " + std::to_string(v) + " in row " + std::to_string(r));
      table.push_back(v);
    }
  }
  if (!names.empty() && names.size() != n) fail("names", "expected " + std::to_string(n) + " names");

  auto at = [&](std::size_t a, std::size_t b) { return table[a * n + b]; };
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      if (seen_row[at(r, c)]++)
        fail("latin square", "row " + std::to_string(r) + " repeats " + std::to_string(at(r, c)));
      if (seen_col[at(c, r)]++)
        fail("latin square", "column " + std::to_string(r) + " repeats " + std::to_string(at(c, r)));
    }
  }
  std::optional<Element> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = at(e, g) == g && at(g, e) == g;
    if (ok) identity = static_cast<Element>(e);
  }
  if (!identity) fail("identity", "no two-sided identity element");
  if (n <= kAssociativityValidationBound) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t ab = at(a, b);
        for (std::size_t c = 0; c < n; ++c)
          if (at(ab, c) != at(a, at(b, c)))
            fail("associativity", "witness (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                                      std::to_string(c) + ")");
      }
  }
  return Group(n, *identity, std::move(table), std::move(label), std::move(names));
}

/// A group homomorphism stored as its table of images.
///
/// The map refers to source and target by index only; construct through
/// Homomorphism::checked to validate it against concrete groups.
struct Homomorphism {
  std::vector<Element> map;
  std::size_t target_order = 0;

  std::size_t source_order() const noexcept { return map.size(); }
  Element operator()(Element g) const { return map[g]; }

  static Homomorphism checked(const Group& source, const Group& target, std::vector<Element> map) {
    if (map.size() != source.order()) throw PreconditionViolated("homomorphism map has wrong length");
    for (Element v : map)
      if (v >= target.order()) throw PreconditionViolated("homomorphism image out of range");
    if (map[source.identity()] != target.identity())
      throw PreconditionViolated("homomorphism does not fix the identity");
    for (Element a = 0; a < source.order(); ++a)
      for (Element b = 0; b < source.order(); ++b)
        if (map[source.mul(a, b)] != target.mul(map[a], map[b]))
          throw PreconditionViolated("map is not multiplicative at (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ")");
    return Homomorphism{std::move(map), target.order()};
  }

  bool is_surjective() const {
    std::vector<char> hit(target_order, 0);
    for (Element v : map) hit[v] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }
};

inline Subset image_subset(const Homomorphism& phi, const Subset& x) {
  if (x.size() != phi.source_order()) throw PreconditionViolated("subset does not live in the source group");
  Subset out(phi.target_order);
  x.for_each([&](Element g) { out.set(phi(g)); });
  return out;
}

inline Subset preimage_subset(const Homomorphism& phi, const Subset& y) {
  if (y.size() != phi.target_order) throw PreconditionViolated("subset does not live in the target group");
  Subset out(phi.source_order());
  for (Element g = 0; g < phi.source_order(); ++g)
    if (y.test(phi(g))) out.set(g);
  return out;
}

// ---------------------------------------------------------------------------
// Mixed-radix products. index(g_1..g_n) = sum g_i * |G|^(n-1-i), so the
// leftmost coordinate is the most significant digit.

/// Implicit direct product of groups; nothing is tabulated, so it scales to
/// power groups whose full table would not fit in memory.
class ProductView {
 public:
  explicit ProductView(std::vector<const Group*> factors) : factors_(std::move(factors)) {
    order_ = 1;
    for (const Group* g : factors_) {
      if (g->order() != 0 && order_ > (std::size_t{1} << 31) / g->order()) throw IndexBound("product group too large");
      order_ *= g->order();
    }
    identity_ = encode_with([&](std::size_t i) { return factors_[i]->identity(); });
  }

  static ProductView power(const Group& g, std::size_t n) { return ProductView(std::vector<const Group*>(n, &g)); }

  std::size_t order() const noexcept { return order_; }
  std::size_t arity() const noexcept { return factors_.size(); }
  const Group& factor(std::size_t i) const { return *factors_[i]; }
  Element identity() const noexcept { return identity_; }

  std::vector<Element> decode(Element e) const {
    std::vector<Element> out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      out[i] = static_cast<Element>(e % factors_[i]->order());
      e = static_cast<Element>(e / factors_[i]->order());
    }
    return out;
  }
  Element encode(const std::vector<Element>& coords) const {
    return encode_with([&](std::size_t i) { return coords[i]; });
  }

  Element mul(Element a, Element b) const noexcept {
    Element result = 0, scale = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const auto n = static_cast<Element>(factors_[i]->order());
      result += factors_[i]->mul(a % n, b % n) * scale;
      a /= n;
      b /= n;
      scale *= n;
    }
    return result;
  }
  Element inv(Element a) const noexcept {
    Element result = 0, scale = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const auto n = static_cast<Element>(factors_[i]->order());
      result += factors_[i]->inv(a % n) * scale;
      a /= n;
      scale *= n;
    }
    return result;
  }

  /// Projection of an element onto coordinate i.
  Element coordinate(Element e, std::size_t i) const noexcept {
    for (std::size_t j = factors_.size(); --j > i;) e = static_cast<Element>(e / factors_[j]->order());
    return static_cast<Element>(e % factors_[i]->order());
  }

 private:
  template <class F>
  Element encode_with(F&& coord) const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) e = e * factors_[i]->order() + coord(i);
    return static_cast<Element>(e);
  }

  std::vector<const Group*> factors_;
  std::size_t order_ = 1;
  Element identity_ = 0;
};

/// Materialize a ProductView into a tabulated Group.
inline Group materialize(const ProductView& view, std::string label, std::size_t bound = kDefaultOrderBound) {
  const std::size_t n = view.order();
  if (n > bound) throw OrderBound("product of order " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
  std::vector<Element> table(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = view.mul(a, b);
  std::vector<std::string> names(n);
  for (Element e = 0; e < n; ++e) {
    auto c = view.decode(e);
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + view.factor(i).name(c[i]);
    names[e] = s + ")";
  }
  return Group::trusted(n, std::move(table), std::move(label), std::move(names));
}

inline Group direct_product(const Group& g, const Group& h, std::size_t bound = kDefaultOrderBound) {
  return materialize(ProductView({&g, &h}), g.label() + "x" + h.label(), bound);
}

inline Group power(const Group& g, std::size_t n, std::size_t bound = kDefaultOrderBound) {
  if (n == 0) throw PreconditionViolated("power exponent must be positive");
  return materialize(ProductView::power(g, n), g.label() + "^" + std::to_string(n), bound);
}

/// Projection G_1 x ... x G_n -> G_i as a Homomorphism.
inline Homomorphism projection(const ProductView& view, std::size_t i) {
  Homomorphism phi;
  phi.target_order = view.factor(i).order();
  phi.map.resize(view.order());
  for (Element e = 0; e < view.order(); ++e) phi.map[e] = view.coordinate(e, i);
  return phi;
}

// ---------------------------------------------------------------------------
// Permutation groups

using Permutation = std::vector<Element>;  // 0-based images

inline std::string cycle_string(const Permutation& p) {
  std::string out;
  std::vector<char> done(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !done[j]; j = p[j]) {
      done[j] = 1;
      if (j != i) out += " ";
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

/// Closure of the generators under composition; the identity is element 0.
/// Products compose left to right: (p*q)(i) = q(p(i)).
inline Group from_permutation_generators(std::size_t degree, const std::vector<Permutation>& generators,
                                         std::string label = "G", std::size_t bound = kDefaultOrderBound) {
  for (const auto& g : generators) {
    if (g.size() != degree) throw NotAPermutation("generator has length " + std::to_string(g.size()));
    std::vector<char> hit(degree, 0);
    for (Element v : g) {
      if (v >= degree || hit[v]++) throw NotAPermutation("generator is not a bijection on " + std::to_string(degree) + " points");
    }
  }
  auto compose = [&](const Permutation& p, const Permutation& q) {
    Permutation r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = q[p[i]];
    return r;
  };
  Permutation id(degree);
  std::iota(id.begin(), id.end(), Element{0});
  std::vector<Permutation> elems{id};
  std::map<Permutation, Element> index{{id, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : generators) {
      Permutation p = compose(elems[k], g);
      if (index.emplace(p, static_cast<Element>(elems.size())).second) {
        elems.push_back(std::move(p));
        if (elems.size() > bound) throw OrderBound("permutation group exceeds order bound " + std::to_string(bound));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) names[a] = cycle_string(elems[a]);
  return Group::trusted(n, std::move(table), std::move(label), std::move(names));
}

}  // namespace eqlarge
