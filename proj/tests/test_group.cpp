#include <gtest/gtest.h>

#include <set>

#include <eqlarge/eqlarge.hpp>

using namespace eqlarge;

namespace {

// Brute-force references, written against the raw multiplication only.
std::size_t classes_by_orbits(const Group& g) {
  std::set<std::set<Element>> seen;
  for (Element a = 0; a < g.order(); ++a) {
    std::set<Element> orbit;
    for (Element y = 0; y < g.order(); ++y) orbit.insert(g.mul(g.mul(g.inv(y), a), y));
    seen.insert(orbit);
  }
  return seen.size();
}

std::size_t center_by_pairs(const Group& g) {
  std::size_t n = 0;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    n += central;
  }
  return n;
}

}  // namespace

TEST(CayleyTable, TrivialAndC2) {
  EXPECT_EQ(Group::from_cayley_table({{0}}).order(), 1u);
  const Group c2 = Group::from_cayley_table({{0, 1}, {1, 0}});
  EXPECT_EQ(c2.order(), 2u);
  EXPECT_EQ(c2.identity(), 0u);
  EXPECT_EQ(c2.inv(1), 1u);
}

TEST(CayleyTable, RejectsRepeatedRow) {
  EXPECT_THROW(Group::from_cayley_table({{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}), NotAGroup);
}

TEST(CayleyTable, IdentityNeedNotBeFirst) {
  // C2 with the identity stored at index 1
  const Group g = Group::from_cayley_table({{1, 0}, {0, 1}});
  EXPECT_EQ(g.identity(), 1u);
}

TEST(Permutations, ClosureOrders) {
  EXPECT_EQ(from_permutation_generators(3, {{1, 2, 0}, {1, 0, 2}}).order(), 6u);
  EXPECT_EQ(from_permutation_generators(4, {{1, 0, 3, 2}}).order(), 2u);
  EXPECT_EQ(from_permutation_generators(3, {}).order(), 1u);
  EXPECT_EQ(catalog("perm:3:(1 2 3);(1 2)").order(), 6u);
  EXPECT_THROW(from_permutation_generators(3, {{0, 0, 1}}), NotAPermutation);
}

TEST(Catalog, SpecsBuildExpectedOrders) {
  EXPECT_EQ(catalog("C6").order(), 6u);
  EXPECT_EQ(catalog("D4").order(), 8u);
  EXPECT_EQ(catalog("Q8").order(), 8u);
  EXPECT_EQ(catalog("S4").order(), 24u);
  EXPECT_EQ(catalog("A5").order(), 60u);
  EXPECT_EQ(catalog("E2^3").order(), 8u);
  EXPECT_EQ(catalog("H3").order(), 27u);
  EXPECT_EQ(catalog("C2xC4").order(), 8u);
  const Group v = catalog("C2xC2");
  EXPECT_EQ(exponent(v), 2u);
}

TEST(Catalog, UnknownSpecSuggests) {
  try {
    catalog("Z7");
    FAIL() << "expected UnknownSpec";
  } catch (const UnknownSpec& e) {
    EXPECT_NE(std::string(e.what()).find("C7"), std::string::npos);
  }
}

TEST(Catalog, OrderBound) {
  EXPECT_THROW(catalog("C5000"), OrderBound);
  EXPECT_THROW(catalog("S3xS3", 30), OrderBound);
}

TEST(Catalog, ListIsSortedAndBuildsWithStatedOrders) {
  const auto specs = catalog_specs(24);
  EXPECT_GE(specs.size(), 20u);
  std::size_t last = 0;
  for (const auto& s : specs) {
    const Group g = catalog(s);
    EXPECT_GE(g.order(), last) << s;
    EXPECT_LE(g.order(), 24u);
    last = g.order();
  }
}

TEST(Products, Orders) {
  EXPECT_EQ(power(catalog("C2"), 2).order(), 4u);
  EXPECT_EQ(exponent(power(catalog("C2"), 2)), 2u);
  EXPECT_EQ(direct_product(catalog("S3"), catalog("C2")).order(), 12u);
  EXPECT_EQ(power(catalog("S3"), 3).order(), 216u);
}

TEST(Products, ViewMatchesMaterialized) {
  const Group s3 = catalog("S3"), c2 = catalog("C2");
  const ProductView v({&s3, &c2});
  const Group m = materialize(v, "S3xC2");
  for (Element a = 0; a < v.order(); ++a)
    for (Element b = 0; b < v.order(); ++b) EXPECT_EQ(v.mul(a, b), m.mul(a, b));
  EXPECT_EQ(v.decode(v.encode({4, 1})), (std::vector<Element>{4, 1}));
}

TEST(Quotients, Examples) {
  const Group c4 = catalog("C4");
  const Quotient q = quotient(c4, Subset(4, {0, 2}));
  EXPECT_EQ(q.group.order(), 2u);
  const Group d4 = catalog("D4");
  const Quotient qd = quotient(d4, center(d4));
  EXPECT_EQ(qd.group.order(), 4u);
  EXPECT_EQ(exponent(qd.group), 2u);
  const Group s3 = catalog("S3");
  EXPECT_EQ(quotient(s3, Subset(6, {s3.identity()})).group.order(), 6u);
  EXPECT_THROW(quotient(s3, Subset(6, {s3.identity(), 1})), Error);
}

TEST(Structure, CentersAndCentralizers) {
  const Group s3 = catalog("S3");
  EXPECT_EQ(center(s3).count(), 1u);
  EXPECT_EQ(center(catalog("Q8")).count(), 2u);
  for (Element t = 0; t < s3.order(); ++t) {
    if (s3.element_order(t) == 2) {
      EXPECT_EQ(centralizer(s3, t).count(), 2u);
    }
  }
}

TEST(Structure, ConjugacyClasses) {
  const Group s3 = catalog("S3");
  std::multiset<std::size_t> sizes;
  for (const auto& c : conjugacy_classes(s3)) sizes.insert(c.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 2, 3}));
  EXPECT_EQ(class_count(catalog("Q8")), 5u);
  EXPECT_EQ(class_count(catalog("C2xC6")), 12u);
}

TEST(Structure, AgreesWithBruteForceOnCatalog) {
  for (const auto& spec : catalog_specs(24)) {
    const Group g = catalog(spec);
    EXPECT_EQ(class_count(g), classes_by_orbits(g)) << spec;
    EXPECT_EQ(center(g).count(), center_by_pairs(g)) << spec;
    EXPECT_TRUE(is_normal(g, derived_subgroup(g))) << spec;
  }
}

TEST(Structure, NilpotencyAndEngel) {
  const Group d4 = catalog("D4"), s3 = catalog("S3");
  EXPECT_EQ(nilpotency_class(d4), std::optional<std::size_t>(2));
  EXPECT_EQ(lower_central_series(d4).at(1).count(), 2u);
  EXPECT_FALSE(nilpotency_class(s3).has_value());
  EXPECT_TRUE(is_2_engel(catalog("Q8")));
  EXPECT_FALSE(is_2_engel(s3));
  EXPECT_EQ(nilpotency_class(catalog("C5")), std::optional<std::size_t>(1));
}

TEST(Automorphisms, Orders) {
  EXPECT_EQ(automorphism_group(catalog("C4")).group.order(), 2u);
  EXPECT_EQ(automorphism_group(catalog("C2xC2")).group.order(), 6u);
  EXPECT_EQ(inner_automorphisms(catalog("S3")).group.order(), 6u);
  EXPECT_EQ(inner_automorphisms(catalog("D4")).group.order(), 4u);
}

TEST(Automorphisms, EveryMapIsAnAutomorphism) {
  const Group g = catalog("D4");
  const AutomorphismGroup a = automorphism_group(g);
  EXPECT_EQ(a.group.order(), 8u);
  for (const auto& m : a.action) EXPECT_TRUE(is_automorphism(g, m));
}

TEST(McWitness, Examples) {
  const McWitness ab = mc_witness(catalog("C6"), 1);
  EXPECT_EQ(ab.s, 0u);
  EXPECT_EQ(mc_witness(catalog("S3"), 1).s, 2u);
  const Group d4 = catalog("D4");
  const McWitness w = mc_witness(d4, 2);
  EXPECT_LE(w.s, 2u);
  // the witness set for i = 0 has centralizer equal to the center
  Subset a(d4.order());
  for (Element e : w.witness_sets.at(0)) a.set(e);
  EXPECT_EQ(centralizer(d4, a), center(d4));
}

TEST(Homomorphisms, ImagesAndPreimages) {
  const Group s3 = catalog("S3"), c2 = catalog("C2");
  const ProductView v({&s3, &c2});
  const Homomorphism p = projection(v, 0);
  EXPECT_TRUE(image_subset(p, Subset(v.order()).complement()).is_full());
  const Group d4 = catalog("D4");
  const Quotient q = quotient(d4, center(d4));
  EXPECT_EQ(preimage_subset(q.projection, Subset(q.group.order(), {q.group.identity()})), center(d4));
}
