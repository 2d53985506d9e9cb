#include <gtest/gtest.h>

#include "ccrforge/group.hpp"

using namespace ccrforge;

namespace {

void expect_group_laws(const FiniteGroup& g) {
  const std::size_t n = g.size();
  const Element e = g.identity();
  for (Element x = 0; x < n; ++x) {
    EXPECT_EQ(g.mul(e, x), x);
    EXPECT_EQ(g.mul(x, e), x);
    EXPECT_EQ(g.mul(x, g.inv(x)), e);
    EXPECT_EQ(g.inv(g.inv(x)), x);
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) ASSERT_EQ(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
  }
}

ErrorKind kind_of(const CayleyTable& t) {
  try {
    validate_group(t);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "table accepted";
  return ErrorKind::IoError;
}

}  // namespace

TEST(FiniteGroup, KleinTable) {
  const auto g = klein_group();
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.label(1), "i");
  for (Element x = 0; x < 4; ++x) EXPECT_EQ(g.inv(x), x);
  EXPECT_EQ(g.mul(1, 2), 3u);  // ij = k
  EXPECT_EQ(g.mul(2, 1), 3u);
  EXPECT_EQ(g.mul(2, 3), 1u);
  EXPECT_TRUE(g.is_abelian());
  EXPECT_EQ(validate_group(g.cayley()), g);
}

TEST(FiniteGroup, TrivialGroup) {
  const auto g = validate_group({{0}});
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inv(0), 0u);
}

TEST(FiniteGroup, RejectsMalformedTables) {
  EXPECT_EQ(kind_of({{0, 1}, {1, 1}}), ErrorKind::NoInverse);
  EXPECT_EQ(kind_of({{0, 2}, {1, 0}}), ErrorKind::NotClosed);
  EXPECT_EQ(kind_of({{1, 0}, {0, 0}}), ErrorKind::NoIdentity);
  EXPECT_EQ(kind_of({{0, 1, 2}, {1, 0}, {2, 1, 0}}), ErrorKind::NotClosed);
  // Latin square with identity 0 and inverses, but (1*1)*2 = 1*(1*2) fails.
  EXPECT_EQ(kind_of({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
            ErrorKind::NotAssociative);
}

TEST(FiniteGroup, ViolationMessagesNameTheWitness) {
  try {
    validate_group({{0, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(FiniteGroup, CyclicTwo) {
  const CayleyTable expect{{0, 1}, {1, 0}};
  EXPECT_EQ(cyclic_group(2).cayley(), expect);
}

TEST(FiniteGroup, ProductOfTwoCyclicTwosIsKlein) {
  const auto p = build_group(GroupKind::product({GroupKind::cyclic(2), GroupKind::cyclic(2)}));
  EXPECT_EQ(p.cayley(), klein_group().cayley());
  EXPECT_EQ(p.label(3), "(1,1)");
}

TEST(FiniteGroup, ProductIndexingIsLexicographic) {
  const auto g = direct_product(cyclic_group(3), cyclic_group(4));
  ASSERT_EQ(g.size(), 12u);
  for (Element a = 0; a < 3; ++a)
    for (Element b = 0; b < 4; ++b)
      for (Element c = 0; c < 3; ++c)
        for (Element d = 0; d < 4; ++d) EXPECT_EQ(g.mul(a * 4 + b, c * 4 + d), ((a + c) % 3) * 4 + (b + d) % 4);
}

TEST(FiniteGroup, Symmetric3IsNonAbelian) {
  const auto g = symmetric3_group();
  EXPECT_EQ(g.size(), 6u);
  EXPECT_FALSE(g.is_abelian());
  EXPECT_EQ(g.label(g.identity()), "012");
}

TEST(FiniteGroup, BuiltGroupsRevalidateIdempotently) {
  const std::vector<GroupKind> kinds{GroupKind::cyclic(1),  GroupKind::cyclic(7), GroupKind::klein(),
                                     GroupKind::symmetric3(), GroupKind::product({GroupKind::symmetric3(), GroupKind::cyclic(2)}),
                                     GroupKind::product({GroupKind::cyclic(5), GroupKind::cyclic(5)})};
  for (const auto& k : kinds) {
    const auto g = build_group(k);
    expect_group_laws(g);
    const auto again = validate_group(g.cayley());
    EXPECT_EQ(again, g);
    EXPECT_EQ(validate_group(again.cayley()), again);
    EXPECT_EQ(again.identity(), g.identity());
    EXPECT_EQ(again.inverse_table(), g.inverse_table());
  }
}

TEST(FiniteGroup, UnknownKind) {
  EXPECT_THROW(parse_group_tag("dihedral"), Error);
  EXPECT_EQ(parse_group_tag("klein"), GroupKind::Tag::klein);
}

TEST(FiniteGroup, LatticeCoordinates) {
  const auto g = lattice_group(5, 2);
  EXPECT_EQ(g.size(), 25u);
  EXPECT_EQ(lattice_index({1, 0}, 5), 5u);
  EXPECT_EQ(lattice_index({-1, 7}, 5), 22u);
  for (Element x = 0; x < 25; ++x) EXPECT_EQ(lattice_index(lattice_coords(x, 5, 2), 5), x);
}
