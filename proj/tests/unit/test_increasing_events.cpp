#include <gtest/gtest.h>

#include "bkdpp/errors.hpp"
#include "bkdpp/increasing_events.hpp"
#include "bkdpp/random.hpp"
#include "oracles.hpp"

using namespace bkdpp;

namespace {

PointSet ps(std::initializer_list<int> pts) { return PointSet::of(std::vector<int>(pts)); }

std::vector<PointSet> random_generators(Rng& rng, int n) {
  std::vector<PointSet> raw;
  const int count = static_cast<int>(rng.uniform_int(1, 5));
  for (int i = 0; i < count; ++i) {
    PointSet g;
    while (g.empty()) g = PointSet::from_bits(rng.next_u64() & PointSet::full(n).bits() & rng.next_u64());
    raw.push_back(g);
  }
  return raw;
}

}  // namespace

TEST(NormalizeGenerators, AbsorbsSupersets) {
  const IncreasingEvent a = IncreasingEvent::normalize_generators(3, {ps({1}), ps({1, 2})});
  EXPECT_EQ(a.generators(), (std::vector<PointSet>{ps({1})}));
  const IncreasingEvent b = IncreasingEvent::normalize_generators(3, {ps({2, 3}), ps({1, 2})});
  EXPECT_EQ(b.generators(), (std::vector<PointSet>{ps({1, 2}), ps({2, 3})}));
}

TEST(NormalizeGenerators, Errors) {
  try {
    IncreasingEvent::normalize_generators(3, {PointSet{}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyGenerator);
  }
  try {
    IncreasingEvent::normalize_generators(3, {ps({4})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointOutOfRange);
  }
}

TEST(NormalizeGenerators, MembershipUnchanged) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    const std::vector<PointSet> raw = random_generators(rng, n);
    const IncreasingEvent a = IncreasingEvent::normalize_generators(n, raw);
    for (std::size_t i = 0; i < a.generators().size(); ++i)
      for (std::size_t j = 0; j < a.generators().size(); ++j)
        if (i != j) EXPECT_FALSE(a.generators()[i].subset_of(a.generators()[j]));
    for_each_subset(n, [&](PointSet s) { EXPECT_EQ(a.contains(s), oracle::member(raw, s)); });
  }
}

TEST(Contains, SpecExamples) {
  const IncreasingEvent a = IncreasingEvent::normalize_generators(3, {ps({1}), ps({2})});
  EXPECT_TRUE(a.contains(ps({1, 3})));
  EXPECT_FALSE(a.contains(ps({3})));
  const IncreasingEvent vac(3);
  EXPECT_TRUE(vac.vacuous());
  for_each_subset(3, [&](PointSet s) { EXPECT_FALSE(vac.contains(s)); });
}

TEST(DisjointOccurrence, SpecExamples) {
  const IncreasingEvent one = IncreasingEvent::normalize_generators(3, {ps({1})});
  for_each_subset(3, [&](PointSet k) { EXPECT_FALSE(disjoint_occurrence_contains(one, one, k)); });
  const IncreasingEvent two = IncreasingEvent::normalize_generators(3, {ps({1}), ps({2})});
  for_each_subset(3, [&](PointSet k) {
    EXPECT_EQ(disjoint_occurrence_contains(two, two, k), ps({1, 2}).subset_of(k)) << k.to_string();
  });
}

TEST(DisjointOccurrence, MatchesExistentialScan) {
  Rng rng(32);
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    const std::vector<PointSet> ra = random_generators(rng, n);
    const std::vector<PointSet> rb = random_generators(rng, n);
    const IncreasingEvent a = IncreasingEvent::normalize_generators(n, ra);
    const IncreasingEvent b = IncreasingEvent::normalize_generators(n, rb);
    for_each_subset(n, [&](PointSet k) {
      EXPECT_EQ(disjoint_occurrence_contains(a, b, k), oracle::disjoint_occurrence(ra, rb, k)) << k.to_string();
    });
  }
}

TEST(IntersectUnion, SpecExamples) {
  const IncreasingEvent a = IncreasingEvent::normalize_generators(3, {ps({1})});
  const IncreasingEvent b = IncreasingEvent::normalize_generators(3, {ps({2})});
  EXPECT_EQ(intersect_events(a, b).generators(), (std::vector<PointSet>{ps({1, 2})}));
  EXPECT_EQ(intersect_events(a, a), a);
  EXPECT_EQ(union_events(a, a), a);
  EXPECT_THROW(union_events(a, IncreasingEvent(4)), Error);
}

TEST(IntersectUnion, PointwiseLogic) {
  Rng rng(33);
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    const IncreasingEvent a = IncreasingEvent::normalize_generators(n, random_generators(rng, n));
    const IncreasingEvent b = IncreasingEvent::normalize_generators(n, random_generators(rng, n));
    const IncreasingEvent i = intersect_events(a, b);
    const IncreasingEvent u = union_events(a, b);
    for_each_subset(n, [&](PointSet s) {
      EXPECT_EQ(i.contains(s), a.contains(s) && b.contains(s));
      EXPECT_EQ(u.contains(s), a.contains(s) || b.contains(s));
    });
  }
}

TEST(ExtendByPoint, SpecExamples) {
  const IncreasingEvent a = IncreasingEvent::normalize_generators(3, {ps({1, 2})});
  EXPECT_EQ(extend_by_point(a, 3).generators(), (std::vector<PointSet>{ps({1, 2}), ps({3})}));
  const IncreasingEvent c = IncreasingEvent::normalize_generators(3, {ps({3})});
  try {
    extend_by_point(c, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointAlreadyGenerating);
  }
}

TEST(ExtendByPoint, PointwiseLogic) {
  Rng rng(34);
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 8));
    const IncreasingEvent a = IncreasingEvent::normalize_generators(n, random_generators(rng, n));
    for (int x0 = 1; x0 <= n; ++x0) {
      if (a.support().contains(x0)) continue;
      const IncreasingEvent e = extend_by_point(a, x0);
      for_each_subset(n, [&](PointSet s) { EXPECT_EQ(e.contains(s), a.contains(s) || s.contains(x0)); });
    }
  }
}

TEST(FromPoints, SingletonGenerated) {
  const IncreasingEvent a = IncreasingEvent::from_points(5, ps({2, 4}));
  EXPECT_TRUE(a.singleton_generated());
  EXPECT_EQ(a.support(), ps({2, 4}));
  EXPECT_FALSE(IncreasingEvent::normalize_generators(5, {ps({1, 2})}).singleton_generated());
}
