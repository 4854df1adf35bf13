#include <gtest/gtest.h>

#include <eqlarge/eqlarge.hpp>

using namespace eqlarge;

TEST(SolutionSet, Counts) {
  const Group c2 = catalog("C2");
  EXPECT_EQ(solution_set(c2, parse_equation("x1^2 = #0")).count(), 2u);
  const Group s3 = catalog("S3");
  EXPECT_EQ(solution_set(s3, parse_equation("x1^2 = #e")).count(), 4u);
  const SolutionSet c = solution_set(s3, parse_equation("[x1,x2] = #e"));
  EXPECT_EQ(c.count(), 18u);
  EXPECT_EQ(c.total(), 36u);
}

TEST(SolutionSet, IndexOrderIsFirstCoordinateMajor) {
  const Group c3 = catalog("C3");
  const SolutionSet s = solution_set(c3, parse_equation("x2 = #1"));
  EXPECT_EQ(s.bits().elements(), (std::vector<Element>{1, 4, 7}));
  EXPECT_EQ(s.decode(7), (std::vector<Element>{2, 1}));
}

TEST(SolutionSet, ArityZeroLivesInG) {
  const Group c3 = catalog("C3");
  const SolutionSet s = solution_set(c3, parse_equation("#1*#2 = #e"));
  EXPECT_EQ(s.arity(), 1u);
  EXPECT_EQ(s.count(), 3u);
}

TEST(SolutionSet, Json) {
  const Group s3 = catalog("S3");
  const auto j = solution_set(s3, parse_equation("x1^3 = #e")).to_json();
  EXPECT_EQ(j.at("group"), "S3");
  EXPECT_EQ(j.at("arity"), 1);
  EXPECT_EQ(j.at("count"), 3);
  EXPECT_EQ(j.at("indices").size(), 3u);
  EXPECT_FALSE(solution_set(s3, parse_equation("x1 = x1")).to_json(2).contains("indices"));
}

TEST(SolutionSet, IndexBound) {
  const Group s4 = catalog("S4");
  EXPECT_THROW(solution_set(s4, parse_equation("[x1,x2,x3,x4,x5] = #e")), IndexBound);
  SolveOptions tight;
  tight.index_bound = 100;
  EXPECT_THROW(solution_set(s4, parse_equation("[x1,x2] = #e"), {}, tight), IndexBound);
}

TEST(Probability, Examples) {
  EXPECT_EQ(probability(catalog("S3"), parse_equation("[x1,x2]=#e")), Probability(1, 2));
  EXPECT_EQ(probability(catalog("Q8"), parse_equation("[x1,x2]=#e")), Probability(5, 8));
  EXPECT_EQ(probability(catalog("D4"), parse_equation("x1^2=#e")), Probability(3, 4));
  EXPECT_EQ(to_string(Probability(2, 4)), "1/2");
}

TEST(Probability, ConstantsBind) {
  const Group s3 = catalog("S3");
  Probability total(0);
  for (Element c = 0; c < 6; ++c) total += probability(s3, parse_equation("[x1,x2] = c"), {{"c", c}});
  EXPECT_EQ(total, Probability(1));
}

TEST(CommutingProbability, Examples) {
  EXPECT_EQ(commuting_probability(catalog("S3")), Probability(1, 2));
  EXPECT_EQ(commuting_probability(catalog("C2xC6")), Probability(1));
  EXPECT_EQ(commuting_probability(catalog("Q8")), Probability(5, 8));
}

TEST(EquationLargeness, Examples) {
  EXPECT_EQ(equation_largeness(catalog("S3"), parse_equation("x1^3=#e")).largeness.value,
            std::optional<std::size_t>(1));
  EXPECT_FALSE(equation_largeness(catalog("C3"), parse_equation("x1^3=#e")).largeness.is_finite());
  // value from an independent brute-force cover search
  EXPECT_EQ(equation_largeness(catalog("D4"), parse_equation("[x1,x2]=#e")).largeness.value,
            std::optional<std::size_t>(3));
}

TEST(Autocommutativity, Examples) {
  const Group s3 = catalog("S3");
  const AutomorphismGroup inn = inner_automorphisms(s3);
  const Autocommutativity ac = autocommutativity(s3, s3.all(), inn);
  EXPECT_EQ(ac.degree, Probability(1, 2));
  EXPECT_EQ(ac.fixed_pairs, 18u);
  const AutomorphismGroup trivial = automorphisms_from_maps(s3, {}, "1");
  EXPECT_EQ(autocommutativity_degree(s3, s3.all(), trivial), Probability(1));
  EXPECT_EQ(autocommutativity_degree(s3, center(s3), inn), Probability(1));
}

TEST(FixedSubgroup, Examples) {
  const Group d4 = catalog("D4");
  EXPECT_EQ(fixed_subgroup(d4, inner_automorphisms(d4)), center(d4));
  EXPECT_TRUE(fixed_subgroup(d4, automorphisms_from_maps(d4, {}, "1")).is_full());
  const Group v = catalog("C2xC2");
  EXPECT_EQ(fixed_subgroup(v, automorphism_group(v)), Subset(4, {v.identity()}));
}

TEST(Autocommutativity, RejectsBadAction) {
  const Group c3 = catalog("C3");
  AutomorphismGroup bad = inner_automorphisms(c3);
  bad.action[0] = {0, 0, 1};
  EXPECT_THROW(autocommutativity(c3, c3.all(), bad), PreconditionViolated);
}
