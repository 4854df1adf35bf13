#include <gtest/gtest.h>

#include <random>

#include <eqlarge/eqlarge.hpp>

using namespace eqlarge;
using K = Word::Kind;

namespace {

// S3 permutations with composition left to right, independent of the catalog.
using Perm = std::array<int, 3>;
Perm pmul(Perm p, Perm q) { return {q[p[0]], q[p[1]], q[p[2]]}; }
Perm pinv(Perm p) {
  Perm r{};
  for (int i = 0; i < 3; ++i) r[p[i]] = i;
  return r;
}

}  // namespace

TEST(Parse, Commutator) {
  const Word w = parse_word("[x1,x2]");
  ASSERT_EQ(w.kind(), K::Comm);
  EXPECT_EQ(w.left(), Word::var(0));
  EXPECT_EQ(w.right(), Word::var(1));
}

TEST(Parse, ConjugationProduct) {
  const Word w = parse_word("x1^-1 * g * x1");
  EXPECT_EQ(w, Word::prod(Word::prod(Word::inv(Word::var(0)), Word::constant("g")), Word::var(0)));
}

TEST(Parse, Engel) {
  const Word w = parse_word("[x1, x2; 3]");
  ASSERT_EQ(w.kind(), K::Engel);
  EXPECT_EQ(w.engel_length(), 3);
  EXPECT_EQ(expand_engel(w), parse_word("[[[x1,x2],x2],x2]"));
}

TEST(Parse, LeftNormedCommutators) { EXPECT_EQ(parse_word("[x1,x2,x3]"), parse_word("[[x1,x2],x3]")); }

TEST(Parse, Errors) {
  EXPECT_THROW(parse_word("[x1,"), SyntaxError);
  EXPECT_THROW(parse_word("x0"), SyntaxError);
  EXPECT_THROW(parse_equation("x1^2"), SyntaxError);
  try {
    parse_word("x1 * * x2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(Parse, EquationArity) {
  EXPECT_EQ(parse_equation("[x1,x3] = #e").arity, 3u);
  EXPECT_EQ(parse_equation("g = c").arity, 0u);
}

TEST(Print, RoundTrip) {
  for (const char* s : {"[x1,x2]", "x1^-1*g*x1", "[x1,x2;3]", "(x1*x2)^5", "x1^x2", "[[x1,x2],[x3,g]]^-1",
                        "x1*x2*x3", "[x1^2,x2^-3]"}) {
    const Word w = parse_word(s);
    EXPECT_EQ(parse_word(to_string(w)), w) << s << " printed as " << to_string(w);
  }
}

TEST(Evaluate, TrivialIdentities) {
  const Group s3 = catalog("S3");
  const Word xx = parse_word("[x1,x1]"), x0 = parse_word("x1^0");
  for (Element a = 0; a < s3.order(); ++a) {
    const std::vector<Element> v{a};
    EXPECT_EQ(evaluate(s3, xx, v), s3.identity());
    EXPECT_EQ(evaluate(s3, x0, v), s3.identity());
  }
}

TEST(Evaluate, TranspositionCommutatorIsThreeCycle) {
  const Group s3 = catalog("perm:3:(1 2);(1 3)");
  // the generators are elements of order 2 that do not commute
  Element a = 0, b = 0;
  for (Element x = 0; x < s3.order(); ++x)
    for (Element y = 0; y < s3.order(); ++y)
      if (s3.element_order(x) == 2 && s3.element_order(y) == 2 && s3.mul(x, y) != s3.mul(y, x)) a = x, b = y;
  const std::vector<Element> v{a, b};
  const Element c = evaluate(s3, parse_word("[x1,x2]"), v);
  EXPECT_EQ(s3.element_order(c), 3u);

  // reference with raw permutations: (1 2) and (1 3), [x,y] = x^-1 y^-1 x y
  const Perm t12{1, 0, 2}, t13{2, 1, 0};
  const Perm r = pmul(pmul(pinv(t12), pinv(t13)), pmul(t12, t13));
  EXPECT_NE(r, (Perm{0, 1, 2}));
  EXPECT_EQ(pmul(pmul(r, r), r), (Perm{0, 1, 2}));
}

TEST(Evaluate, CompiledAgreesWithRecursive) {
  std::mt19937_64 rng(7);
  for (const char* spec : {"S3", "D4", "Q8", "A4", "H3"}) {
    const Group g = catalog(spec);
    const Bindings b{{"g", 1 % static_cast<Element>(g.order())}};
    for (const char* s : {"[x1,x2;2]*g", "x1^x2*x3^-2", "[x1,[g,x2]]^3", "(x1*g)^-4*[x3,x1,x2]"}) {
      const Word w = parse_word(s);
      const CompiledWord cw(g, w, b);
      std::uniform_int_distribution<Element> d(0, static_cast<Element>(g.order() - 1));
      for (int i = 0; i < 200; ++i) {
        const std::vector<Element> v{d(rng), d(rng), d(rng)};
        EXPECT_EQ(cw(v), evaluate(g, w, v, b)) << spec << ' ' << s;
      }
    }
  }
}

TEST(Evaluate, ConventionsMatchDefinitions) {
  const Group g = catalog("S4");
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); y += 5) {
      const std::vector<Element> v{x, y};
      EXPECT_EQ(evaluate(g, parse_word("x1^x2"), v), g.mul(g.mul(g.inv(y), x), y));
      EXPECT_EQ(evaluate(g, parse_word("[x1,x2]"), v), g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
    }
}

TEST(Evaluate, ConstantsAndErrors) {
  const Group g = catalog("C5");
  const std::vector<Element> v{2};
  EXPECT_EQ(evaluate(g, parse_word("x1*#3"), v), g.mul(2, 3));
  EXPECT_EQ(evaluate(g, parse_word("x1*c"), v, {{"c", 4}}), g.mul(2, 4));
  EXPECT_THROW(evaluate(g, parse_word("x1*c"), v), UnboundConstant);
  EXPECT_THROW(evaluate(g, parse_word("x1*#9"), v), UnboundConstant);
  EXPECT_THROW(evaluate(g, parse_word("x2"), v), ArityMismatch);
}
