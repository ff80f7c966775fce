#include <gtest/gtest.h>

#include <set>

#include "bkdpp/errors.hpp"
#include "bkdpp/point_set.hpp"

using namespace bkdpp;

TEST(PointSet, OneBasedInterface) {
  const PointSet s = PointSet::of({3, 1});
  EXPECT_EQ(s.bits(), 0b101u);
  EXPECT_EQ(s.points(), (std::vector<int>{1, 3}));
  EXPECT_EQ(s.to_string(), "{1,3}");
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.max_point(), 3);
}

TEST(PointSet, RejectsOutOfRange) {
  EXPECT_THROW(PointSet::of({0}), Error);
  EXPECT_THROW(PointSet::of({65}), Error);
}

TEST(PointSet, SetAlgebra) {
  const PointSet a = PointSet::of({1, 2});
  const PointSet b = PointSet::of({2, 3});
  EXPECT_EQ((a | b), PointSet::of({1, 2, 3}));
  EXPECT_EQ((a & b), PointSet::of({2}));
  EXPECT_EQ(a.minus(b), PointSet::of({1}));
  EXPECT_EQ(a.complement(4), PointSet::of({3, 4}));
  EXPECT_TRUE(PointSet::of({2}).subset_of(a));
  EXPECT_FALSE(a.disjoint(b));
  EXPECT_TRUE(a.without(2).disjoint(b));
  EXPECT_EQ(PointSet::full(64).size(), 64);
}

TEST(SubsetEnumeration, CountsAndOrder) {
  int count = 0;
  std::uint64_t prev = 0;
  for_each_subset_of_size(8, 3, [&](PointSet s) {
    EXPECT_EQ(s.size(), 3);
    if (count) EXPECT_GT(s.bits(), prev);
    prev = s.bits();
    ++count;
  });
  EXPECT_EQ(count, 56);

  std::set<std::uint64_t> seen;
  for_each_subset(5, [&](PointSet s) { seen.insert(s.bits()); });
  EXPECT_EQ(seen.size(), 32u);
}
