#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace eqlarge {

/// Immutable abstract syntax tree of a group word.
///
/// Conventions: x^y = y^-1 x y, [x,y] = x^-1 y^-1 x y, [x,y;1] = [x,y] and
/// [x,y;n+1] = [[x,y;n],y]. Variables are numbered from 0; x1 in the text
/// is variable 0.
class Word {
 public:
  enum class Kind { Var, Const, Inv, Prod, Pow, Conj, Comm, Engel };

  static Word var(int index) {
    auto n = std::make_shared<Node>(Kind::Var);
    n->index = index;
    return Word(std::move(n));
  }
  static Word constant(std::string name) {
    auto n = std::make_shared<Node>(Kind::Const);
    n->name = std::move(name);
    return Word(std::move(n));
  }
  static Word identity() { return constant("#e"); }
  static Word element(Element e) { return constant("#" + std::to_string(e)); }
  static Word inv(Word w) { return unary(Kind::Inv, std::move(w)); }
  static Word pow(Word w, long long k) {
    Word out = unary(Kind::Pow, std::move(w));
    std::const_pointer_cast<Node>(out.node_)->exponent = k;
    return out;
  }
  static Word prod(Word a, Word b) { return binary(Kind::Prod, std::move(a), std::move(b)); }
  static Word conj(Word a, Word b) { return binary(Kind::Conj, std::move(a), std::move(b)); }
  static Word comm(Word a, Word b) { return binary(Kind::Comm, std::move(a), std::move(b)); }
  static Word engel(Word a, Word b, int n) {
    if (n < 1) throw PreconditionViolated("Engel length must be at least 1");
    Word out = binary(Kind::Engel, std::move(a), std::move(b));
    std::const_pointer_cast<Node>(out.node_)->index = n;
    return out;
  }

  Kind kind() const noexcept { return node_->kind; }
  int var_index() const noexcept { return node_->index; }
  int engel_length() const noexcept { return node_->index; }
  const std::string& name() const noexcept { return node_->name; }
  long long exponent() const noexcept { return node_->exponent; }
  const Word& operand() const noexcept { return *node_->left; }
  const Word& left() const noexcept { return *node_->left; }
  const Word& right() const noexcept { return *node_->right; }

  bool is_identity_const() const noexcept { return kind() == Kind::Const && name() == "#e"; }

  friend bool operator==(const Word& a, const Word& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Var: return a.var_index() == b.var_index();
      case Kind::Const: return a.name() == b.name();
      case Kind::Inv: return a.operand() == b.operand();
      case Kind::Pow: return a.exponent() == b.exponent() && a.operand() == b.operand();
      case Kind::Engel:
        if (a.engel_length() != b.engel_length()) return false;
        [[fallthrough]];
      default: return a.left() == b.left() && a.right() == b.right();
    }
  }

 private:
  struct Node {
    explicit Node(Kind k) : kind(k) {}
    Kind kind;
    int index = 0;
    long long exponent = 0;
    std::string name;
    std::shared_ptr<const Word> left, right;
  };

  explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Word unary(Kind k, Word w) {
    auto n = std::make_shared<Node>(k);
    n->left = std::make_shared<const Word>(std::move(w));
    return Word(std::move(n));
  }
  static Word binary(Kind k, Word a, Word b) {
    auto n = std::make_shared<Node>(k);
    n->left = std::make_shared<const Word>(std::move(a));
    n->right = std::make_shared<const Word>(std::move(b));
    return Word(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string print_word(const Word& w, int context);

// context: 0 = anywhere, 1 = operand of a postfix operator or conjugator
inline std::string print_word(const Word& w, int context) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var: return "x" + std::to_string(w.var_index() + 1);
    case K::Const: return w.name();
    case K::Inv: return print_word(w.operand(), 1) + "^-1";
    case K::Pow: return print_word(w.operand(), 1) + "^" + std::to_string(w.exponent());
    case K::Conj: {
      // the conjugator must be a bare atom, otherwise "u^v^w" regroups
      const auto rk = w.right().kind();
      std::string rhs = print_word(w.right(), 0);
      if (rk == K::Prod || rk == K::Inv || rk == K::Pow || rk == K::Conj) rhs = "(" + rhs + ")";
      return print_word(w.left(), 1) + "^" + rhs;
    }
    case K::Comm: return "[" + print_word(w.left(), 0) + "," + print_word(w.right(), 0) + "]";
    case K::Engel:
      return "[" + print_word(w.left(), 0) + "," + print_word(w.right(), 0) + ";" + std::to_string(w.engel_length()) + "]";
    case K::Prod: {
      std::string lhs = print_word(w.left(), 0);
      std::string rhs = print_word(w.right(), 0);
      if (w.right().kind() == K::Prod) rhs = "(" + rhs + ")";
      std::string s = lhs + "*" + rhs;
      return context == 1 ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace detail

inline std::string to_string(const Word& w) { return detail::print_word(w, 0); }

// ---------------------------------------------------------------------------
// Parsing
//
//   word    := postfix ('*' postfix)*
//   postfix := atom ('^' (integer | atom))*
//   atom    := 'x'INT | NAME | '#'NAME | '1' | '(' word ')'
//            | '[' word (',' word)+ ']' | '[' word ',' word ';' INT ']'

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse_all() {
    Word w = word();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

  Word word() {
    Word w = postfix();
    while (accept('*')) w = Word::prod(std::move(w), postfix());
    return w;
  }

  std::size_t position() const noexcept { return pos_; }
  bool at_end() {
    skip();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) const { throw SyntaxError(msg, pos_); }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  bool peek_digit_or_sign() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    if (c == '-' || c == '+') return true;
    // a bare "1" followed by an identifier char is still a number here
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }
  long long integer() {
    skip();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
    skip();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000'000) error("integer too large");
    }
    if (pos_ == start) error("expected an integer");
    return neg ? -v : v;
  }

  Word postfix() {
    Word w = atom();
    while (accept('^')) {
      if (peek_digit_or_sign()) {
        const long long k = integer();
        w = k == -1 ? Word::inv(std::move(w)) : Word::pow(std::move(w), k);
      } else {
        w = Word::conj(std::move(w), atom());
      }
    }
    return w;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  Word atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word w = word();
      expect(',');
      Word second = word();
      if (accept(';')) {
        const long long n = integer();
        if (n < 1) error("Engel length must be at least 1");
        expect(']');
        return Word::engel(std::move(w), std::move(second), static_cast<int>(n));
      }
      w = Word::comm(std::move(w), std::move(second));
      while (accept(',')) w = Word::comm(std::move(w), word());
      expect(']');
      return w;
    }
    if (c == '#') {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      if (pos_ == start + 1) error("expected an element after '#'");
      return Word::constant(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '1' && (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return Word::identity();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string_view id = text_.substr(start, pos_ - start);
      if (id.size() > 1 && id[0] == 'x' &&
          id.substr(1).find_first_not_of("0123456789") == std::string_view::npos) {
        if (id[1] == '0') {
          pos_ = start;
          error("variables are numbered from x1");
        }
        const int n = std::stoi(std::string(id.substr(1)));
        return Word::var(n - 1);
      }
      return Word::constant(std::string(id));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text) { return detail::WordParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Equations

/// lhs = rhs over variables x1..x_arity. Arity is one more than the largest
/// variable index occurring on either side.
struct Equation {
  Word lhs = Word::identity();
  Word rhs = Word::identity();
  std::size_t arity = 0;
};

inline void collect_vars(const Word& w, std::set<int>& out) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var: out.insert(w.var_index()); break;
    case K::Const: break;
    case K::Inv:
    case K::Pow: collect_vars(w.operand(), out); break;
    default:
      collect_vars(w.left(), out);
      collect_vars(w.right(), out);
  }
}

inline std::set<int> variables(const Word& w) {
  std::set<int> s;
  collect_vars(w, s);
  return s;
}

inline void collect_constants(const Word& w, std::set<std::string>& out) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var: break;
    case K::Const: out.insert(w.name()); break;
    case K::Inv:
    case K::Pow: collect_constants(w.operand(), out); break;
    default:
      collect_constants(w.left(), out);
      collect_constants(w.right(), out);
  }
}

inline Equation make_equation(Word lhs, Word rhs) {
  std::set<int> vs;
  collect_vars(lhs, vs);
  collect_vars(rhs, vs);
  Equation eq{std::move(lhs), std::move(rhs), vs.empty() ? 0 : static_cast<std::size_t>(*vs.rbegin()) + 1};
  return eq;
}

inline Equation parse_equation(std::string_view text) {
  detail::WordParser p(text);
  Word lhs = p.word();
  if (!p.accept('=')) p.error("expected '=' in equation");
  Word rhs = p.word();
  if (!p.at_end()) p.error("trailing input after equation");
  return make_equation(std::move(lhs), std::move(rhs));
}

inline std::string to_string(const Equation& eq) { return to_string(eq.lhs) + " = " + to_string(eq.rhs); }

// ---------------------------------------------------------------------------
// Evaluation

/// Constant names bound to element indices of a particular group.
using Bindings = std::map<std::string, Element>;

/// Resolve a constant: "#e" is the identity, "#<n>" an index, otherwise the
/// explicit bindings and then the group's element names are consulted.
inline Element resolve_constant(const Group& g, const std::string& name, const Bindings& bindings) {
  if (name == "#e") return g.identity();
  if (auto it = bindings.find(name); it != bindings.end()) {
    if (it->second >= g.order()) throw UnboundConstant("constant " + name + " bound outside the group");
    return it->second;
  }
  if (name.size() > 1 && name[0] == '#') {
    const std::string_view rest(name.data() + 1, name.size() - 1);
    if (rest.find_first_not_of("0123456789") == std::string_view::npos) {
      const auto v = std::stoull(std::string(rest));
      if (v >= g.order()) throw UnboundConstant("element " + name + " outside group of order " + std::to_string(g.order()));
      return static_cast<Element>(v);
    }
    if (auto e = g.find_name(rest)) return *e;
  }
  if (auto e = g.find_name(name)) return *e;
  throw UnboundConstant("constant '" + name + "' is not bound");
}

/// A word compiled to a postfix program with constants resolved, for fast
/// repeated evaluation.
class CompiledWord {
 public:
  CompiledWord(const Group& g, const Word& w, const Bindings& bindings = {}) : group_(&g) {
    compile(w, bindings);
    std::set<int> vs;
    collect_vars(w, vs);
    arity_ = vs.empty() ? 0 : static_cast<std::size_t>(*vs.rbegin()) + 1;
  }

  std::size_t arity() const noexcept { return arity_; }

  Element operator()(std::span<const Element> assignment) const {
    if (assignment.size() < arity_)
      throw ArityMismatch("word needs " + std::to_string(arity_) + " variables, got " + std::to_string(assignment.size()));
    return run(assignment);
  }

 private:
  enum class Op : std::uint8_t { Var, Const, Inv, Mul, Pow, Conj, Comm, Engel };
  struct Instr {
    Op op;
    long long arg;
  };

  void compile(const Word& w, const Bindings& b) {
    using K = Word::Kind;
    switch (w.kind()) {
      case K::Var: code_.push_back({Op::Var, w.var_index()}); break;
      case K::Const: code_.push_back({Op::Const, resolve_constant(*group_, w.name(), b)}); break;
      case K::Inv:
        compile(w.operand(), b);
        code_.push_back({Op::Inv, 0});
        break;
      case K::Pow:
        compile(w.operand(), b);
        code_.push_back({Op::Pow, w.exponent()});
        break;
      case K::Prod:
      case K::Conj:
      case K::Comm:
      case K::Engel:
        compile(w.left(), b);
        compile(w.right(), b);
        code_.push_back({w.kind() == K::Prod   ? Op::Mul
                         : w.kind() == K::Conj ? Op::Conj
                         : w.kind() == K::Comm ? Op::Comm
                                               : Op::Engel,
                         w.kind() == K::Engel ? w.engel_length() : 0});
        break;
    }
  }

  Element run(std::span<const Element> x) const {
    const Group& g = *group_;
    Element stack[64] = {};
    std::vector<Element> heap;
    Element* sp = stack;
    if (code_.size() > 64) {
      heap.resize(code_.size());
      sp = heap.data();
    }
    Element* base = sp;
    for (const Instr& in : code_) {
      switch (in.op) {
        case Op::Var: *sp++ = x[static_cast<std::size_t>(in.arg)]; break;
        case Op::Const: *sp++ = static_cast<Element>(in.arg); break;
        case Op::Inv: sp[-1] = g.inv(sp[-1]); break;
        case Op::Pow: sp[-1] = g.pow(sp[-1], in.arg); break;
        case Op::Mul:
          --sp;
          sp[-1] = g.mul(sp[-1], *sp);
          break;
        case Op::Conj:
          --sp;
          sp[-1] = g.conj(sp[-1], *sp);
          break;
        case Op::Comm:
          --sp;
          sp[-1] = g.comm(sp[-1], *sp);
          break;
        case Op::Engel: {
          --sp;
          Element acc = sp[-1];
          for (long long i = 0; i < in.arg; ++i) acc = g.comm(acc, *sp);
          sp[-1] = acc;
          break;
        }
      }
    }
    return base[0];
  }

  const Group* group_;
  std::vector<Instr> code_;
  std::size_t arity_ = 0;
};

/// Direct recursive evaluation; the reference semantics for CompiledWord.
inline Element evaluate(const Group& g, const Word& w, std::span<const Element> assignment,
                        const Bindings& bindings = {}) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var:
      if (static_cast<std::size_t>(w.var_index()) >= assignment.size())
        throw ArityMismatch("no value for x" + std::to_string(w.var_index() + 1));
      return assignment[static_cast<std::size_t>(w.var_index())];
    case K::Const: return resolve_constant(g, w.name(), bindings);
    case K::Inv: return g.inv(evaluate(g, w.operand(), assignment, bindings));
    case K::Pow: return g.pow(evaluate(g, w.operand(), assignment, bindings), w.exponent());
    case K::Prod: return g.mul(evaluate(g, w.left(), assignment, bindings), evaluate(g, w.right(), assignment, bindings));
    case K::Conj: return g.conj(evaluate(g, w.left(), assignment, bindings), evaluate(g, w.right(), assignment, bindings));
    case K::Comm: return g.comm(evaluate(g, w.left(), assignment, bindings), evaluate(g, w.right(), assignment, bindings));
    case K::Engel: {
      Element acc = evaluate(g, w.left(), assignment, bindings);
      const Element y = evaluate(g, w.right(), assignment, bindings);
      for (int i = 0; i < w.engel_length(); ++i) acc = g.comm(acc, y);
      return acc;
    }
  }
  return g.identity();
}

// ---------------------------------------------------------------------------
// Rewriting helpers

/// Replace variables according to f(index) -> Word.
template <class F>
Word substitute(const Word& w, F&& f) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var: return f(w.var_index());
    case K::Const: return w;
    case K::Inv: return Word::inv(substitute(w.operand(), f));
    case K::Pow: return Word::pow(substitute(w.operand(), f), w.exponent());
    case K::Prod: return Word::prod(substitute(w.left(), f), substitute(w.right(), f));
    case K::Conj: return Word::conj(substitute(w.left(), f), substitute(w.right(), f));
    case K::Comm: return Word::comm(substitute(w.left(), f), substitute(w.right(), f));
    case K::Engel: return Word::engel(substitute(w.left(), f), substitute(w.right(), f), w.engel_length());
  }
  return w;
}

/// Replace constants according to f(name) -> Word.
template <class F>
Word substitute_constants(const Word& w, F&& f) {
  using K = Word::Kind;
  switch (w.kind()) {
    case K::Var: return w;
    case K::Const: return f(w.name());
    case K::Inv: return Word::inv(substitute_constants(w.operand(), f));
    case K::Pow: return Word::pow(substitute_constants(w.operand(), f), w.exponent());
    case K::Prod: return Word::prod(substitute_constants(w.left(), f), substitute_constants(w.right(), f));
    case K::Conj: return Word::conj(substitute_constants(w.left(), f), substitute_constants(w.right(), f));
    case K::Comm: return Word::comm(substitute_constants(w.left(), f), substitute_constants(w.right(), f));
    case K::Engel:
      return Word::engel(substitute_constants(w.left(), f), substitute_constants(w.right(), f), w.engel_length());
  }
  return w;
}

/// Product of a list of words; the identity for an empty list.
inline Word product_of(const std::vector<Word>& factors) {
  if (factors.empty()) return Word::identity();
  Word w = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) w = Word::prod(w, factors[i]);
  return w;
}

/// Flatten nested products into their left-to-right factor list.
inline void flatten_product(const Word& w, std::vector<Word>& out) {
  if (w.kind() == Word::Kind::Prod) {
    flatten_product(w.left(), out);
    flatten_product(w.right(), out);
  } else {
    out.push_back(w);
  }
}

}  // namespace eqlarge
