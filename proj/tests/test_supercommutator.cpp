#include <gtest/gtest.h>

#include <random>

#include <eqlarge/eqlarge.hpp>

using namespace eqlarge;

namespace {

Element eval_product(const Group& g, const std::vector<Word>& ws, const std::vector<Element>& a) {
  Element acc = g.identity();
  for (const auto& w : ws) acc = g.mul(acc, evaluate(g, w, a));
  return acc;
}

// v(y x, z) == v(x, z) v(y, z) prod(phi) on random assignments.
void expect_identity(const Group& g, const Word& v, const Linearization& lin, const std::vector<Word>& phi,
                     int trials, std::mt19937_64& rng) {
  int width = 0;
  for (auto t : {lin.xbar, lin.ybar, lin.zbar})
    for (int i : t) width = std::max(width, i + 1);
  std::uniform_int_distribution<Element> d(0, static_cast<Element>(g.order() - 1));
  for (int t = 0; t < trials; ++t) {
    std::vector<Element> a(static_cast<std::size_t>(width));
    for (auto& e : a) e = d(rng);
    const Element lhs = evaluate(g, lin.to_yx(v), a);
    const Element rhs = g.mul(g.mul(evaluate(g, v, a), evaluate(g, lin.to_y(v), a)), eval_product(g, phi, a));
    ASSERT_EQ(lhs, rhs) << g.label() << ' ' << to_string(v);
  }
}

}  // namespace

TEST(Supercommutator, Recognition) {
  EXPECT_TRUE(is_supercommutator(parse_word("[x1,[g,x2]]")));
  EXPECT_TRUE(is_supercommutator(parse_word("[x1,x2]^-1")));
  EXPECT_TRUE(is_supercommutator(parse_word("[x1,x2;2]")));
  EXPECT_TRUE(is_supercommutator(parse_word("g")));
  EXPECT_FALSE(is_supercommutator(parse_word("x1*x2")));
  EXPECT_FALSE(is_supercommutator(parse_word("x1^2")));
  EXPECT_FALSE(is_supercommutator(parse_word("[x1*x2,x3]")));
}

TEST(Supercommutator, VariableCounts) {
  EXPECT_EQ(var_profile(parse_word("[x1,[g,x2]]"), {}).var(), 2u);
  const VarProfile p = var_profile(parse_word("[x1,[x2,x3]]"), {0});
  EXPECT_EQ(p.var_x(), 1u);
  EXPECT_EQ(p.var_outside(), 2u);
}

TEST(Linearize, SingleVariable) {
  const Linearization lin{{0}, {1}, {}};
  const auto phi = linearize(parse_word("x1"), lin);
  ASSERT_EQ(phi.size(), 1u);
  EXPECT_EQ(phi[0], Word::comm(Word::var(1), Word::var(0)));
}

TEST(Linearize, InverseHasNoCorrection) {
  const Linearization lin{{0}, {1}, {}};
  EXPECT_TRUE(linearize(parse_word("x1^-1"), lin).empty());
}

TEST(Linearize, Preconditions) {
  const Linearization lin{{0}, {2}, {1}};
  EXPECT_THROW(linearize(parse_word("x1*x2"), lin), NotASupercommutator);
  EXPECT_THROW(linearize(parse_word("[x2,g]"), lin), PreconditionViolated);
  const Linearization overlap{{0}, {0}, {1}};
  EXPECT_THROW(linearize(parse_word("[x1,x2]"), overlap), PreconditionViolated);
  const Linearization missing{{0}, {3}, {}};
  EXPECT_THROW(linearize(parse_word("[x1,x2]"), missing), PreconditionViolated);
}

TEST(Linearize, IdentityAndSideConditionOnShapes) {
  // xbar = {x1}, zbar = {x2, x3}, y1 = x4
  const Linearization lin{{0}, {3}, {1, 2}};
  std::mt19937_64 rng(11);
  const std::vector<Group> groups{catalog("S3"), catalog("D4"), catalog("Q8"), catalog("S4")};
  for (const char* s : {"[x1,x2]", "[x2,x1]", "[x1,x2,x3]", "[[x1,x2],[x3,x1]]", "[x1^-1,x2]", "[x1,x2;2]",
                        "[[x2,x1],x1]", "[x1,[x2,x3]]", "[g,x1]", "[x1,x2]^-1"}) {
    const Word v = parse_word(s);
    const auto phi = linearize(v, lin);
    for (const auto& w : phi) EXPECT_TRUE(dagger_holds(w, expand_engel(v), lin)) << s << ": " << to_string(w);
    for (const auto& g : groups) {
      const Word bound = substitute_constants(v, [&](const std::string&) { return Word::element(1); });
      const auto phi_b = linearize(bound, lin);
      expect_identity(g, bound, lin, phi_b, 60, rng);
    }
  }
}

TEST(Linearize, AllVariablesInTuple) {
  const Linearization lin{{0, 1}, {2, 3}, {}};
  std::mt19937_64 rng(5);
  const Word v = parse_word("[x1,x2]");
  const auto phi = linearize(v, lin);
  for (const auto& w : phi) EXPECT_TRUE(dagger_holds(w, v, lin));
  for (const char* spec : {"S3", "D4", "H3"}) expect_identity(catalog(spec), v, lin, phi, 100, rng);
}

TEST(Linearize, BudgetIsEnforced) {
  const Linearization lin{{0, 1, 2}, {3, 4, 5}, {}};
  EXPECT_THROW(linearize(parse_word("[[x1,x2],x3]"), lin, 100), BudgetExceeded);
}

TEST(LinearizeProduct, FactorsGainVariables) {
  // xbar = {x1, x2}, zbar = {z1 = x3}, ybar = {x4, x5}
  const Linearization lin{{0, 1}, {3, 4}, {2}};
  const std::vector<Word> factors{parse_word("[x1,x3]"), parse_word("[x2,x3]")};
  const auto phi = linearize_product(factors, lin, 1);
  const auto xs = lin.x_set();
  for (const auto& w : phi) {
    EXPECT_GE(var_profile(w, xs).var_outside(), 2u) << to_string(w);
    EXPECT_GT(var_profile(w, xs).var_x(), 0u) << to_string(w);
  }
  std::mt19937_64 rng(3);
  const Word v = product_of(factors);
  for (const char* spec : {"S3", "D4", "Q8"}) expect_identity(catalog(spec), v, lin, phi, 100, rng);
}

TEST(LinearizeProduct, SingleFactorMatchesLinearize) {
  const Linearization lin{{0}, {2}, {1}};
  const Word v = parse_word("[x1,x2]");
  std::mt19937_64 rng(9);
  const auto phi = linearize_product({v}, lin, 1);
  expect_identity(catalog("S4"), v, lin, phi, 100, rng);
}

TEST(LinearizeProduct, RejectsShortFactors) {
  const Linearization lin{{0}, {2}, {1}};
  EXPECT_THROW(linearize_product({parse_word("x1")}, lin, 1), PreconditionViolated);
}

namespace {

void expect_same_solutions(const Equation& a, const Equation& b, const Bindings& bd) {
  for (const char* spec : {"S3", "D4", "Q8"}) {
    const Group g = catalog(spec);
    Bindings local;
    for (const auto& [k, v] : bd) local[k] = v % static_cast<Element>(g.order());
    EXPECT_EQ(solution_set(g, a, local).bits(), solution_set(g, b, local).bits()) << spec;
  }
}

}  // namespace

TEST(MoveConstants, Examples) {
  const Bindings bd{{"g", 3}, {"h", 5}, {"c", 2}};
  const Equation e1 = parse_equation("g = c");
  const Equation n1 = move_constants_right(e1);
  EXPECT_TRUE(variables(n1.lhs).empty());
  expect_same_solutions(e1, n1, bd);

  const Equation e2 = parse_equation("[x1,g]*h = c");
  const Equation n2 = move_constants_right(e2);
  EXPECT_EQ(n2.lhs, parse_word("[x1,g]"));
  expect_same_solutions(e2, n2, bd);

  const Equation e3 = parse_equation("g*[x1,h] = c");
  const Equation n3 = move_constants_right(e3);
  EXPECT_EQ(n3.lhs, parse_word("[x1,h]"));
  expect_same_solutions(e3, n3, bd);
}

TEST(MoveConstants, InnerConstantsMoveLeft) {
  const Equation e = parse_equation("[x1,x2]*g*[x2,h] = c");
  const Equation n = move_constants_right(e);
  for (const auto& f : product_factors(n.lhs)) EXPECT_FALSE(variables(f).empty()) << to_string(f);
  expect_same_solutions(e, n, {{"g", 3}, {"h", 5}, {"c", 2}});
}

TEST(MoveConstants, Errors) {
  EXPECT_THROW(move_constants_right(parse_equation("x1 = x2")), PreconditionViolated);
  EXPECT_NO_THROW(product_factors(parse_word("x1^3*[x1,x2]^x3")));
}
