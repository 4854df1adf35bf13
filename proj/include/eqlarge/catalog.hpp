#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "group.hpp"

namespace eqlarge {

// ---------------------------------------------------------------------------
// Named families

inline Group cyclic(std::size_t n) {
  if (n == 0) throw UnknownSpec("C0 is not a group");
  std::vector<Element> table(n * n);
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
    names[a] = a == 0 ? "e" : a == 1 ? "a" : "a^" + std::to_string(a);
  }
  return Group::trusted(n, std::move(table), "C" + std::to_string(n), std::move(names));
}

/// Dihedral group of order 2n: element r^i s^j has index i + n*j.
inline Group dihedral(std::size_t n) {
  if (n == 0) throw UnknownSpec("D0 is not a group");
  const std::size_t order = 2 * n;
  std::vector<Element> table(order * order);
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t a = x % n, b = x / n;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t c = y % n, d = y / n;
      // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
      const std::size_t rot = b ? (a + n - c) % n : (a + c) % n;
      table[x * order + y] = static_cast<Element>(rot + n * ((b + d) % 2));
    }
    std::string r = a == 0 ? "" : a == 1 ? "r" : "r^" + std::to_string(a);
    names[x] = b ? (r.empty() ? "s" : r + "s") : (r.empty() ? "e" : r);
  }
  return Group::trusted(order, std::move(table), "D" + std::to_string(n), std::move(names));
}

inline Group symmetric(std::size_t n) {
  if (n == 0 || n > 6) throw UnknownSpec("S" + std::to_string(n) + " is outside the catalog (1 <= n <= 6)");
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation cycle(n), swap(n);
    for (std::size_t i = 0; i < n; ++i) {
      cycle[i] = static_cast<Element>((i + 1) % n);
      swap[i] = static_cast<Element>(i);
    }
    std::swap(swap[0], swap[1]);
    gens = {cycle, swap};
  }
  return from_permutation_generators(n, gens, "S" + std::to_string(n));
}

inline Group alternating(std::size_t n) {
  if (n == 0 || n > 6) throw UnknownSpec("A" + std::to_string(n) + " is outside the catalog (1 <= n <= 6)");
  std::vector<Permutation> gens;
  for (std::size_t k = 2; k < n; ++k) {  // 3-cycles (1 2 k+1)
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Element>(i);
    p[0] = 1;
    p[1] = static_cast<Element>(k);
    p[k] = 0;
    gens.push_back(p);
  }
  return from_permutation_generators(n, gens, "A" + std::to_string(n));
}

/// Quaternion group; elements ordered 1, -1, i, -i, j, -j, k, -k.
inline Group quaternion8() {
  // unit u in {1,i,j,k} as 0..3 with sign; product table of units
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<Element> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int ux = x / 2, uy = y / 2;
      int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * unit_sign[ux][uy];
      table[static_cast<std::size_t>(x * 8 + y)] = static_cast<Element>(unit_mul[ux][uy] * 2 + (sign < 0 ? 1 : 0));
    }
  return Group::trusted(8, std::move(table), "Q8", {"e", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline Group elementary_abelian(std::size_t p, std::size_t k) {
  if (!is_prime(p)) throw UnknownSpec("E" + std::to_string(p) + "^" + std::to_string(k) + ": p must be prime");
  if (k == 0) throw UnknownSpec("elementary abelian rank must be positive");
  Group c = cyclic(p);
  Group g = k == 1 ? c : power(c, k);
  return g.relabeled("E" + std::to_string(p) + "^" + std::to_string(k));
}

/// Heisenberg group of upper unitriangular 3x3 matrices over Z/p;
/// (a,b,c) has index a*p^2 + b*p + c and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
inline Group heisenberg(std::size_t p) {
  if (!is_prime(p) || p > 5) throw UnknownSpec("H" + std::to_string(p) + ": p must be a prime <= 5");
  const std::size_t n = p * p * p;
  std::vector<Element> table(n * n);
  std::vector<std::string> names(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x / (p * p), b = (x / p) % p, c = x % p;
    names[x] = x == 0 ? "e" : "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      table[x * n + y] = static_cast<Element>(((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p);
    }
  }
  return Group::trusted(n, std::move(table), "H" + std::to_string(p), std::move(names));
}

// ---------------------------------------------------------------------------
// External formats

/// Cayley-table JSON: {"label", "order", "table", "names"?}.
inline Group group_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::vector<Element>> rows = j.at("table").get<std::vector<std::vector<Element>>>();
    if (j.contains("order") && j.at("order").get<std::size_t>() != rows.size())
      throw NotAGroup("order: declared " + std::to_string(j.at("order").get<std::size_t>()) + " but table has " +
                      std::to_string(rows.size()) + " rows");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    std::string label = j.value("label", std::string("G"));
    return Group::from_cayley_table(rows, std::move(names), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw UnknownSpec(std::string("malformed group table: ") + e.what());
  }
}

inline nlohmann::json group_to_json(const Group& g) {
  nlohmann::json j;
  j["label"] = g.label();
  j["order"] = g.order();
  j["table"] = g.rows();
  if (g.has_names()) j["names"] = g.names();
  return j;
}

inline Group load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnknownSpec("cannot open group table file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UnknownSpec("cannot parse '" + path + "': " + e.what());
  }
  return group_from_json(j);
}

/// "perm:<degree>:<cycles>[;<cycles>...]" with 1-based points.
inline Group parse_permutation_spec(std::string_view text, std::size_t bound = kDefaultOrderBound) {
  const std::string_view prefix = "perm:";
  if (text.substr(0, prefix.size()) != prefix) throw UnknownSpec("permutation spec must start with 'perm:'");
  std::string_view rest = text.substr(prefix.size());
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) throw UnknownSpec("permutation spec needs 'perm:<degree>:<cycles>'");
  std::size_t degree = 0;
  try {
    degree = std::stoul(std::string(rest.substr(0, colon)));
  } catch (const std::exception&) {
    throw UnknownSpec("bad degree in permutation spec");
  }
  std::vector<Permutation> gens;
  std::string body(rest.substr(colon + 1));
  std::stringstream gen_stream(body);
  std::string gen_text;
  while (std::getline(gen_stream, gen_text, ';')) {
    if (gen_text.find_first_not_of(" \t") == std::string::npos) continue;
    Permutation p(degree);
    for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<Element>(i);
    std::vector<char> touched(degree, 0);
    std::size_t pos = 0;
    while (pos < gen_text.size()) {
      if (std::isspace(static_cast<unsigned char>(gen_text[pos]))) {
        ++pos;
        continue;
      }
      if (gen_text[pos] != '(') throw NotAPermutation("expected '(' in cycle list '" + gen_text + "'");
      const auto close = gen_text.find(')', pos);
      if (close == std::string::npos) throw NotAPermutation("unterminated cycle in '" + gen_text + "'");
      std::vector<std::size_t> cycle;
      std::stringstream cs(gen_text.substr(pos + 1, close - pos - 1));
      std::string tok;
      while (cs >> tok) {
        for (char& ch : tok)
          if (ch == ',') ch = ' ';
        std::stringstream ts(tok);
        std::size_t v;
        while (ts >> v) {
          if (v == 0 || v > degree) throw NotAPermutation("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
          if (touched[v - 1]++) throw NotAPermutation("point " + std::to_string(v) + " repeated within a generator");
          cycle.push_back(v - 1);
        }
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = static_cast<Element>(cycle[(i + 1) % cycle.size()]);
      pos = close + 1;
    }
    gens.push_back(std::move(p));
  }
  return from_permutation_generators(degree, gens, std::string(text), bound);
}

// ---------------------------------------------------------------------------
// Group-spec mini-language

/// Parsed form of a group spec; build() constructs the group.
struct GroupPlan {
  enum class Kind { Cyclic, Dihedral, Symmetric, Alternating, Quaternion, Elementary, Heisenberg, Product, TableFile, Permutation };

  Kind kind = Kind::Cyclic;
  std::string text;
  std::size_t n = 0;  // family parameter; prime for E and H
  std::size_t k = 0;  // rank for E
  std::vector<GroupPlan> factors;
  std::string path;

  /// Order known from the spec alone; nullopt for table files and permutations.
  std::optional<std::size_t> expected_order() const {
    switch (kind) {
      case Kind::Cyclic: return n;
      case Kind::Dihedral: return 2 * n;
      case Kind::Symmetric: {
        std::size_t f = 1;
        for (std::size_t i = 2; i <= n; ++i) f *= i;
        return f;
      }
      case Kind::Alternating: {
        std::size_t f = 1;
        for (std::size_t i = 3; i <= n; ++i) f *= i;
        return f;
      }
      case Kind::Quaternion: return 8;
      case Kind::Elementary: {
        std::size_t f = 1;
        for (std::size_t i = 0; i < k; ++i) f *= n;
        return f;
      }
      case Kind::Heisenberg: return n * n * n;
      case Kind::Product: {
        std::size_t f = 1;
        for (const auto& p : factors) {
          auto o = p.expected_order();
          if (!o) return std::nullopt;
          f *= *o;
        }
        return f;
      }
      default: return std::nullopt;
    }
  }

  Group build(std::size_t bound = kDefaultOrderBound) const {
    if (auto o = expected_order(); o && *o > bound)
      throw OrderBound(text + " has order " + std::to_string(*o) + ", above the bound " + std::to_string(bound));
    switch (kind) {
      case Kind::Cyclic: return cyclic(n);
      case Kind::Dihedral: return dihedral(n);
      case Kind::Symmetric: return symmetric(n);
      case Kind::Alternating: return alternating(n);
      case Kind::Quaternion: return quaternion8();
      case Kind::Elementary: return elementary_abelian(n, k);
      case Kind::Heisenberg: return heisenberg(n);
      case Kind::TableFile: return load_group_file(path);
      case Kind::Permutation: return parse_permutation_spec(text, bound);
      case Kind::Product: {
        Group g = factors.front().build(bound);
        for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, factors[i].build(bound), bound);
        return g.relabeled(text);
      }
    }
    throw UnknownSpec(text);
  }
};

namespace detail {

inline std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  std::size_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

inline std::string suggestion_for(std::string_view s) {
  auto digits = [&](std::size_t from) { return std::string(s.substr(from)); };
  if (s.size() > 1 && (s[0] == 'Z' || s[0] == 'c') && parse_count(s.substr(1))) return "C" + digits(1);
  if (s.size() > 3 && s.substr(0, 3) == "Dih") return "D" + digits(3);
  if (s.size() > 3 && s.substr(0, 3) == "Sym") return "S" + digits(3);
  if (s.size() > 3 && s.substr(0, 3) == "Alt") return "A" + digits(3);
  if (s == "Q" || s == "q8") return "Q8";
  if (s == "K4" || s == "V4") return "C2xC2";
  if (s.size() > 1 && (s[0] == 'd' || s[0] == 's' || s[0] == 'a') && parse_count(s.substr(1)))
    return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])))) + digits(1);
  return {};
}

[[noreturn]] inline void unknown(std::string_view s) {
  std::string msg = "unknown group spec '" + std::string(s) + "'";
  if (auto hint = suggestion_for(s); !hint.empty()) msg += " (did you mean \"" + hint + "\"?)";
  throw UnknownSpec(msg);
}

inline GroupPlan parse_atom(std::string_view s) {
  GroupPlan plan;
  plan.text = std::string(s);
  if (s.empty()) unknown(s);
  if (s == "Q8") {
    plan.kind = GroupPlan::Kind::Quaternion;
    return plan;
  }
  const char head = s[0];
  const std::string_view tail = s.substr(1);
  if (head == 'E') {
    const auto caret = tail.find('^');
    auto p = parse_count(tail.substr(0, caret));
    auto k = caret == std::string_view::npos ? std::optional<std::size_t>{1} : parse_count(tail.substr(caret + 1));
    if (!p || !k || !is_prime(*p) || *k == 0) unknown(s);
    plan.kind = GroupPlan::Kind::Elementary;
    plan.n = *p;
    plan.k = *k;
    return plan;
  }
  auto n = parse_count(tail);
  if (!n || *n == 0) unknown(s);
  plan.n = *n;
  switch (head) {
    case 'C': plan.kind = GroupPlan::Kind::Cyclic; break;
    case 'D': plan.kind = GroupPlan::Kind::Dihedral; break;
    case 'S':
      if (*n > 6) unknown(s);
      plan.kind = GroupPlan::Kind::Symmetric;
      break;
    case 'A':
      if (*n > 6) unknown(s);
      plan.kind = GroupPlan::Kind::Alternating;
      break;
    case 'H':
      if (!is_prime(*n) || *n > 5) unknown(s);
      plan.kind = GroupPlan::Kind::Heisenberg;
      break;
    default: unknown(s);
  }
  return plan;
}

}  // namespace detail

inline GroupPlan parse_group_spec(std::string_view text) {
  GroupPlan plan;
  plan.text = std::string(text);
  if (!text.empty() && text[0] == '@') {
    plan.kind = GroupPlan::Kind::TableFile;
    plan.path = std::string(text.substr(1));
    return plan;
  }
  if (text.substr(0, 5) == "perm:") {
    plan.kind = GroupPlan::Kind::Permutation;
    return plan;
  }
  std::vector<GroupPlan> parts;
  std::size_t start = 0;
  while (true) {
    const auto x = text.find('x', start);
    parts.push_back(detail::parse_atom(text.substr(start, x == std::string_view::npos ? x : x - start)));
    if (x == std::string_view::npos) break;
    start = x + 1;
  }
  if (parts.size() == 1) return parts.front();
  plan.kind = GroupPlan::Kind::Product;
  plan.factors = std::move(parts);
  return plan;
}

inline Group catalog(std::string_view spec, std::size_t bound = kDefaultOrderBound) {
  Group g = parse_group_spec(spec).build(bound);
  return g;
}

/// The documented catalog, in canonical order (by order, then spec text).
/// Families: C n; D n (n >= 3); S3..S6; A4..A6; Q8; E p^k (k >= 2); H3, H5;
/// and the listed small direct products.
inline std::vector<std::string> catalog_specs(std::size_t max_order) {
  std::vector<std::pair<std::size_t, std::string>> entries;
  auto add = [&](const std::string& s) {
    auto o = parse_group_spec(s).expected_order();
    if (o && *o <= max_order) entries.emplace_back(*o, s);
  };
  for (std::size_t n = 1; n <= max_order; ++n) add("C" + std::to_string(n));
  for (std::size_t n = 3; 2 * n <= max_order; ++n) add("D" + std::to_string(n));
  for (std::size_t n = 3; n <= 6; ++n) add("S" + std::to_string(n));
  for (std::size_t n = 4; n <= 6; ++n) add("A" + std::to_string(n));
  add("Q8");
  for (std::size_t p : {2, 3, 5, 7})
    for (std::size_t k = 2; k <= 12; ++k) {
      std::size_t o = 1;
      for (std::size_t i = 0; i < k; ++i) o *= p;
      if (o > max_order) break;
      add("E" + std::to_string(p) + "^" + std::to_string(k));
    }
  for (std::size_t p : {3, 5}) add("H" + std::to_string(p));
  for (const char* s : {"C2xC4", "C2xC6", "C2xC8", "C4xC4", "C2xD4", "C2xQ8", "C3xS3", "C2xA4", "C3xQ8", "C4xS3",
                        "C2xC2xS3", "C3xD4", "S3xS3", "C3xA4", "C2xS4"})
    add(s);
  std::sort(entries.begin(), entries.end());
  std::vector<std::string> out;
  for (auto& e : entries) out.push_back(std::move(e.second));
  return out;
}

/// Expand "catalog<=N" into the catalog list, or a comma-separated list of specs.
inline std::vector<std::string> expand_group_list(std::string_view text) {
  const std::string_view prefix = "catalog<=";
  if (text.substr(0, prefix.size()) == prefix) {
    auto n = detail::parse_count(text.substr(prefix.size()));
    if (!n) throw UnknownSpec("bad catalog bound in '" + std::string(text) + "'");
    return catalog_specs(*n);
  }
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace eqlarge
