#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "word.hpp"

namespace eqlarge {

/// Rewrite Engel nodes as nested commutators: [u,v;n] = [[u,v;n-1],v].
inline Word expand_engel(const Word& w) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var:
    case K::Const: return w;
    case K::Inv: return Word::inv(expand_engel(w.operand()));
    case K::Pow: return Word::pow(expand_engel(w.operand()), w.exponent());
    case K::Prod: return Word::prod(expand_engel(w.left()), expand_engel(w.right()));
    case K::Conj: return Word::conj(expand_engel(w.left()), expand_engel(w.right()));
    case K::Comm: return Word::comm(expand_engel(w.left()), expand_engel(w.right()));
    case K::Engel: {
      Word acc = expand_engel(w.left());
      const Word y = expand_engel(w.right());
      for (int i = 0; i < w.engel_length(); ++i) acc = Word::comm(acc, y);
      return acc;
    }
  }
  return w;
}

namespace detail {
inline bool supercommutator_shape(const Word& w) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var:
    case K::Const: return true;
    case K::Inv: return supercommutator_shape(w.operand());
    case K::Comm: return supercommutator_shape(w.left()) && supercommutator_shape(w.right());
    default: return false;
  }
}
}  // namespace detail

/// True iff w is built from variables and constants by inversion and
/// commutators only (after Engel expansion).
inline bool is_supercommutator(const Word& w) { return detail::supercommutator_shape(expand_engel(w)); }

struct VarProfile {
  std::set<int> all_vars;
  std::set<int> vars_in_xbar;
  std::set<int> vars_outside_xbar;

  std::size_t var() const noexcept { return all_vars.size(); }
  std::size_t var_x() const noexcept { return vars_in_xbar.size(); }
  std::size_t var_outside() const noexcept { return vars_outside_xbar.size(); }
};

inline VarProfile var_profile(const Word& w, const std::set<int>& xbar) {
  VarProfile p;
  p.all_vars = variables(w);
  for (int v : p.all_vars) (xbar.count(v) ? p.vars_in_xbar : p.vars_outside_xbar).insert(v);
  return p;
}

/// Variable tuples for linearization. ybar[i] pairs with xbar[i]; every other
/// variable of the word belongs to zbar.
struct Linearization {
  std::vector<int> xbar;
  std::vector<int> ybar;
  std::vector<int> zbar;

  std::set<int> x_set() const { return {xbar.begin(), xbar.end()}; }
  std::set<int> y_set() const { return {ybar.begin(), ybar.end()}; }
  std::set<int> z_set() const { return {zbar.begin(), zbar.end()}; }

  /// v(xbar) -> v(ybar): rename each x_i to y_i.
  Word to_y(const Word& w) const {
    return substitute(w, [&](int i) {
      for (std::size_t k = 0; k < xbar.size(); ++k)
        if (xbar[k] == i) return Word::var(ybar[k]);
      return Word::var(i);
    });
  }
  /// v(xbar) -> v(ybar * xbar): substitute x_i by y_i x_i.
  Word to_yx(const Word& w) const {
    return substitute(w, [&](int i) {
      for (std::size_t k = 0; k < xbar.size(); ++k)
        if (xbar[k] == i) return Word::prod(Word::var(ybar[k]), Word::var(i));
      return Word::var(i);
    });
  }
};

/// The side condition on a factor w of Phi relative to v: Var_z(w) = Var_z(v);
/// for each x_i in Var_x(v), x_i or y_i occurs in w; w contains at least one
/// x-variable and at least one y-variable.
inline bool dagger_holds(const Word& w, const Word& v, const Linearization& lin) {
  const auto wv = variables(w);
  const auto vv = variables(v);
  const auto zs = lin.z_set();
  std::set<int> wz, vz;
  for (int i : wv)
    if (zs.count(i)) wz.insert(i);
  for (int i : vv)
    if (zs.count(i)) vz.insert(i);
  if (wz != vz) return false;
  bool has_x = false, has_y = false;
  for (std::size_t k = 0; k < lin.xbar.size(); ++k) {
    const bool x_in = wv.count(lin.xbar[k]) > 0, y_in = wv.count(lin.ybar[k]) > 0;
    has_x = has_x || x_in;
    has_y = has_y || y_in;
    if (vv.count(lin.xbar[k]) && !x_in && !y_in) return false;
  }
  // only variables of v, renamed or not, may occur
  for (int i : wv) {
    if (zs.count(i)) continue;
    bool ok = false;
    for (std::size_t k = 0; k < lin.xbar.size(); ++k)
      if ((i == lin.xbar[k] || i == lin.ybar[k]) && vv.count(lin.xbar[k])) ok = true;
    if (!ok) return false;
  }
  return has_x && has_y;
}

inline constexpr std::size_t kLinearizeFactorBound = 2'000'000;

namespace detail {

enum class Role { X, Y, Both, Other };

struct Tagged {
  Word w;
  Role role;
};
using Factors = std::vector<Tagged>;

inline Role combine(Role a, Role b) {
  if (a == Role::Other || b == Role::Other) return Role::Other;
  if (a == Role::Both) return b;
  if (b == Role::Both) return a;
  return a == b ? a : Role::Other;
}

inline Word invert(const Word& w) { return w.kind() == Word::Kind::Inv ? w.operand() : Word::inv(w); }

/// Builds v(ybar*xbar) as a product of tagged supercommutators: exactly one
/// factor is v(xbar) (role X) and one is v(ybar) (role Y), or a single factor
/// of role Both when v has no x-variables. All other factors satisfy the
/// side condition relative to the subterm being expanded.
class Linearizer {
 public:
  Linearizer(const Linearization& lin, std::size_t bound) : lin_(lin), xs_(lin.x_set()), bound_(bound) {}

  Factors raw(const Word& v) {
    using K = Word::Kind;
    if (var_profile(v, xs_).var_x() == 0) return {{v, Role::Both}};
    switch (v.kind()) {
      case K::Var: return {{lin_.to_y(v), Role::Y}, {v, Role::X}};
      case K::Inv: {
        Factors inner = raw(v.operand());
        Factors out;
        out.reserve(inner.size());
        for (auto it = inner.rbegin(); it != inner.rend(); ++it) {
          if (it->role == Role::X) out.push_back({v, Role::X});
          else if (it->role == Role::Y) out.push_back({lin_.to_y(v), Role::Y});
          else out.push_back({invert(it->w), Role::Other});
        }
        return out;
      }
      case K::Comm: return commutator(raw(v.left()), raw(v.right()), v);
      default: throw NotASupercommutator("linearize: '" + to_string(v) + "' is not a supercommutator");
    }
  }

  /// Move the X factor to the front and the Y factor right after it using
  /// f e = e f [f,e].
  Factors normalize(Factors f, const Word& v) {
    move_to(f, Role::X, 0, v);
    move_to(f, Role::Y, 1, v);
    return f;
  }

 private:
  void grow(std::size_t n) const {
    if (n > bound_) throw BudgetExceeded("linearization exceeds " + std::to_string(bound_) + " factors");
  }

  void move_to(Factors& f, Role role, std::size_t target, const Word& v) {
    std::size_t pos = 0;
    while (pos < f.size() && f[pos].role != role) ++pos;
    if (pos == f.size()) throw PreconditionViolated("linearize: missing factor for v(" + std::string(role == Role::X ? "x" : "y") + ")");
    while (pos > target) {
      Tagged e = f[pos], g = f[pos - 1];
      Tagged c{Word::comm(g.w, e.w), Role::Other};
      f[pos - 1] = e;
      f[pos] = g;
      f.insert(f.begin() + static_cast<std::ptrdiff_t>(pos + 1), std::move(c));
      grow(f.size());
      --pos;
    }
    (void)v;
  }

  bool good(const Word& phi, const Word& v) const { return dagger_holds(phi, v, lin_); }

  /// list^phi, either as phi^-1 list phi (phi already satisfies the side
  /// condition for v) or factorwise c^phi = c [c, phi].
  Factors conjugate(Factors list, const Tagged& phi, const Word& v) {
    if (list.empty()) return list;
    Factors out;
    if (phi.role == Role::Other && good(phi.w, v)) {
      out.reserve(list.size() + 2);
      out.push_back({invert(phi.w), Role::Other});
      for (auto& t : list) out.push_back(std::move(t));
      out.push_back({phi.w, Role::Other});
    } else {
      out.reserve(2 * list.size());
      for (auto& t : list) {
        Word c = Word::comm(t.w, phi.w);
        out.push_back(std::move(t));
        out.push_back({std::move(c), Role::Other});
      }
    }
    grow(out.size());
    return out;
  }

  static void append(Factors& dst, Factors src) {
    for (auto& t : src) dst.push_back(std::move(t));
  }

  /// [a, b_1...b_q] = [a,b_q] [a, b_1...b_{q-1}]^{b_q}
  Factors commute_with(const Tagged& a, const Factors& b, const Word& v) {
    Factors s;
    for (const auto& bj : b) {
      Factors next{{Word::comm(a.w, bj.w), combine(a.role, bj.role)}};
      append(next, conjugate(std::move(s), bj, v));
      s = std::move(next);
      grow(s.size());
    }
    return s;
  }

  /// [a_1...a_p, B] = [a_1...a_{p-1}, B]^{a_p} [a_p, B]
  Factors commutator(const Factors& a, const Factors& b, const Word& v) {
    Factors r;
    for (const auto& ai : a) {
      Factors next = conjugate(std::move(r), ai, v);
      append(next, commute_with(ai, b, v));
      r = std::move(next);
      grow(r.size());
    }
    return r;
  }

  const Linearization& lin_;
  std::set<int> xs_;
  std::size_t bound_;
};

inline void check_tuples(const Word& v, const Linearization& lin) {
  if (lin.xbar.size() != lin.ybar.size()) throw PreconditionViolated("xbar and ybar must have equal length");
  std::set<int> seen;
  for (const auto* tuple : {&lin.xbar, &lin.ybar, &lin.zbar})
    for (int i : *tuple)
      if (!seen.insert(i).second) throw PreconditionViolated("variable tuples must be pairwise disjoint");
  for (int i : variables(v))
    if (!lin.x_set().count(i) && !lin.z_set().count(i))
      throw PreconditionViolated("variable x" + std::to_string(i + 1) + " is in neither xbar nor zbar");
}

}  // namespace detail

/// Phi with v(ybar*xbar, zbar) = v(xbar, zbar) v(ybar, zbar) Phi, as an
/// ordered list of supercommutator factors each satisfying dagger_holds.
inline std::vector<Word> linearize(const Word& v_in, const Linearization& lin,
                                   std::size_t bound = kLinearizeFactorBound) {
  const Word v = expand_engel(v_in);
  if (!detail::supercommutator_shape(v)) throw NotASupercommutator("'" + to_string(v_in) + "' is not a supercommutator");
  detail::check_tuples(v, lin);
  if (var_profile(v, lin.x_set()).var_x() == 0) throw PreconditionViolated("NoXVariable: v has no variable from xbar");
  detail::Linearizer L(lin, bound);
  auto factors = L.normalize(L.raw(v), v);
  std::vector<Word> phi;
  phi.reserve(factors.size() - 2);
  for (std::size_t i = 2; i < factors.size(); ++i) {
    if (!dagger_holds(factors[i].w, v, lin))
      throw Error("internal: linearization factor " + to_string(factors[i].w) + " violates the side condition");
    phi.push_back(std::move(factors[i].w));
  }
  return phi;
}

/// Variables outside xbar of a word, counting y's and z's alike.
inline std::size_t outside_count(const Word& w, const std::set<int>& xs) { return var_profile(w, xs).var_outside(); }

/// For v = w_1...w_m with var_x(w) > 0 and var'_x(w) >= n for every factor,
/// Phi with v(ybar*xbar) = v(xbar) v(ybar) Phi whose factors all have
/// var_x > 0 and var'_x > n.
inline std::vector<Word> linearize_product(const std::vector<Word>& factors_in, const Linearization& lin,
                                           std::size_t n, std::size_t bound = kLinearizeFactorBound) {
  const auto xs = lin.x_set();
  std::vector<Word> factors;
  for (const auto& w : factors_in) {
    Word e = expand_engel(w);
    if (!detail::supercommutator_shape(e)) throw NotASupercommutator("'" + to_string(w) + "' is not a supercommutator");
    detail::check_tuples(e, lin);
    const auto p = var_profile(e, xs);
    if (p.var_x() == 0 || p.var_outside() < n)
      throw PreconditionViolated("factor " + to_string(w) + " has var_x = " + std::to_string(p.var_x()) +
                                 ", var'_x = " + std::to_string(p.var_outside()) + " (need > 0 and >= " +
                                 std::to_string(n) + ")");
    factors.push_back(std::move(e));
  }
  const std::size_t m = factors.size();
  // tag: 0..m-1 = w_j(x), m..2m-1 = w_j(y), 2m = Phi factor
  struct Item {
    Word w;
    std::size_t tag;
  };
  std::vector<Item> items;
  for (std::size_t j = 0; j < m; ++j) {
    items.push_back({factors[j], j});
    items.push_back({lin.to_y(factors[j]), m + j});
    for (auto& phi : linearize(factors[j], lin, bound)) items.push_back({std::move(phi), 2 * m});
  }
  auto move_tag = [&](std::size_t tag, std::size_t target) {
    std::size_t pos = 0;
    while (items[pos].tag != tag) ++pos;
    while (pos > target) {
      Item e = items[pos], f = items[pos - 1];
      Word c = Word::comm(f.w, e.w);
      items[pos - 1] = std::move(e);
      items[pos] = std::move(f);
      items.insert(items.begin() + static_cast<std::ptrdiff_t>(pos + 1), Item{std::move(c), 2 * m});
      if (items.size() > bound) throw BudgetExceeded("linearization exceeds " + std::to_string(bound) + " factors");
      --pos;
    }
  };
  for (std::size_t j = 0; j < m; ++j) move_tag(j, j);
  for (std::size_t j = 0; j < m; ++j) move_tag(m + j, m + j);
  std::vector<Word> phi;
  for (std::size_t i = 2 * m; i < items.size(); ++i) {
    const auto p = var_profile(items[i].w, xs);
    if (p.var_x() == 0 || p.var_outside() <= n)
      throw Error("internal: product linearization factor " + to_string(items[i].w) + " has too few variables");
    phi.push_back(std::move(items[i].w));
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Equation normal form

namespace detail {

/// Flatten a word into supercommutator factors: products split, powers
/// repeat, u^v becomes v^-1 u v.
inline void supercommutator_factors(const Word& w, std::vector<Word>& out) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Prod:
      supercommutator_factors(w.left(), out);
      supercommutator_factors(w.right(), out);
      return;
    case K::Pow: {
      const long long k = w.exponent();
      std::vector<Word> base;
      supercommutator_factors(k < 0 ? Word::inv(w.operand()) : w.operand(), base);
      for (long long i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), base.begin(), base.end());
      return;
    }
    case K::Conj:
      supercommutator_factors(Word::inv(w.right()), out);
      supercommutator_factors(w.left(), out);
      supercommutator_factors(w.right(), out);
      return;
    case K::Inv:
      if (w.operand().kind() == K::Prod || w.operand().kind() == K::Pow || w.operand().kind() == K::Conj) {
        std::vector<Word> inner;
        supercommutator_factors(w.operand(), inner);
        for (auto it = inner.rbegin(); it != inner.rend(); ++it) out.push_back(invert(*it));
        return;
      }
      [[fallthrough]];
    default:
      if (w.is_identity_const()) return;
      if (!supercommutator_shape(w))
        throw NotASupercommutator("NotAProductOfSupercommutators: factor '" + to_string(w) + "'");
      out.push_back(w);
  }
}

}  // namespace detail

/// The lhs of an equation as a list of supercommutator factors.
inline std::vector<Word> product_factors(const Word& w) {
  std::vector<Word> out;
  detail::supercommutator_factors(expand_engel(w), out);
  return out;
}

/// Equivalent equation whose lhs factors all contain a variable: leading
/// constant factors move to the left of the rhs, trailing ones to the right,
/// and inner ones are pushed left with f K = K f [f,K].
inline Equation move_constants_right(const Equation& eq) {
  if (!variables(eq.rhs).empty()) throw PreconditionViolated("move_constants_right needs a constant right-hand side");
  std::vector<Word> f = product_factors(eq.lhs);
  Word rhs = eq.rhs;
  auto constant = [](const Word& w) { return variables(w).empty(); };
  auto left_mul = [](const Word& a, const Word& b) { return b.is_identity_const() ? a : Word::prod(a, b); };
  while (true) {
    while (!f.empty() && constant(f.front())) {
      rhs = left_mul(detail::invert(f.front()), rhs);
      f.erase(f.begin());
    }
    while (!f.empty() && constant(f.back())) {
      rhs = rhs.is_identity_const() ? detail::invert(f.back()) : Word::prod(rhs, detail::invert(f.back()));
      f.pop_back();
    }
    auto it = std::find_if(f.begin(), f.end(), constant);
    if (it == f.end()) break;
    const auto i = static_cast<std::size_t>(it - f.begin());
    Word k = f[i], g = f[i - 1];
    f[i - 1] = k;
    f[i] = g;
    f.insert(f.begin() + static_cast<std::ptrdiff_t>(i + 1), Word::comm(g, k));
  }
  Equation out;
  out.lhs = product_of(f);
  out.rhs = rhs;
  out.arity = eq.arity;
  return out;
}

}  // namespace eqlarge
