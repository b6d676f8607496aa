#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ghkit/metric_space.hpp"
#include "ghkit/random.hpp"
#include "oracles.hpp"

using namespace ghkit;
using oracle::line;
using oracle::two_point;

TEST(Validate, TwoPointMetricIsClean) {
  EXPECT_TRUE(validate_metric(two_point(1.0)).ok());
}

TEST(Validate, AsymmetricEntryIsReported) {
  auto rep = validate_metric({{0, 1}, {2, 0}});
  ASSERT_FALSE(rep.ok());
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0], (AxiomViolation{Axiom::symmetry, 0, 1, 0}));
}

TEST(Validate, TriangleViolationNamesTheTriple) {
  auto rep = validate_metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations[0], (AxiomViolation{Axiom::triangle, 0, 1, 2}));
}

TEST(Validate, NonzeroDiagonalAndNegativeEntries) {
  auto rep = validate_metric({{1, 2}, {2, 0}});
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations[0].axiom, Axiom::zero_diagonal);
  auto neg = validate_metric({{0, -1}, {-1, 0}});
  ASSERT_FALSE(neg.ok());
  EXPECT_EQ(neg.violations[0].axiom, Axiom::finite_nonnegative);
}

TEST(Validate, InfiniteDistanceRejected) {
  const double inf = std::numeric_limits<double>::infinity();
  auto rep = validate_metric({{0, inf}, {inf, 0}});
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations[0].axiom, Axiom::finite_nonnegative);
}

TEST(Validate, ToleranceAbsorbsRounding) {
  EXPECT_TRUE(validate_metric({{0, 1, 2 + 1e-12}, {1, 0, 1}, {2 + 1e-12, 1, 0}}).ok());
  EXPECT_FALSE(validate_metric({{0, 1, 2.1}, {1, 0, 1}, {2.1, 1, 0}}, 1e-9).ok());
}

TEST(Validate, RaggedRowsRejected) {
  EXPECT_THROW(MetricSpace(std::vector<std::vector<double>>{{0, 1}, {1}}), DomainError);
  EXPECT_THROW(MetricSpace(0, {}), DomainError);
}

TEST(Diam, Examples) {
  auto X = line({0, 1, 5});
  EXPECT_EQ(diam(Subset(X, {0})), 0.0);
  auto T = two_point(3.0);
  EXPECT_EQ(diam(Subset::full(T)), 3.0);
  EXPECT_EQ(diam(Subset::full(X)), 5.0);
}

TEST(Hausdorff, Examples) {
  auto L = line({0, 1});
  EXPECT_EQ(hausdorff(Subset(L, {0}), Subset(L, {0})), 0.0);
  EXPECT_EQ(hausdorff(Subset(L, {0}), Subset(L, {0, 1})), 1.0);
  auto M = line({0, 10, 1, 9});
  EXPECT_EQ(hausdorff(Subset(M, {0, 1}), Subset(M, {2, 3})), 1.0);
}

TEST(Hausdorff, RejectsEmptyAndForeignSubsets) {
  auto L = line({0, 1});
  auto M = line({0, 1});
  EXPECT_THROW(hausdorff(Subset(L, {}), Subset(L, {0})), DomainError);
  EXPECT_THROW(hausdorff(Subset(L, {0}), Subset(M, {0})), DomainError);
  EXPECT_THROW(Subset(L, {2}), DomainError);
}

TEST(Subset, CanonicalOrder) {
  auto L = line({0, 1, 2, 3});
  Subset s(L, {3, 1, 3, 0});
  EXPECT_EQ(s.members(), (std::vector<Index>{0, 1, 3}));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.position_of(3), 2u);
}

TEST(BallCover, LargeRadiusGivesFullBalls) {
  auto X = line({0, 1, 5});
  auto c = ball_cover(X, 6.0);
  for (const auto& m : c.members()) EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(c.max_diam(), 5.0);
}

TEST(BallCover, SmallRadiusGivesSingletons) {
  auto X = line({0, 1, 5});
  auto c = ball_cover(X, 0.5);
  for (const auto& m : c.members()) EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(c.max_diam(), 0.0);
}

TEST(BallCover, ThreeLinePoints) {
  auto X = line({0, 1, 2});
  auto c = ball_cover(X, 1.5);
  EXPECT_EQ(c.member_of(1).members(), (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(c.member_of(0).members(), (std::vector<Index>{0, 1}));
  EXPECT_EQ(c.max_diam(), 2.0);
}

TEST(BallCover, OpenBallExcludesBoundary) {
  auto X = line({0, 1, 2});
  auto c = ball_cover(X, 1.0);
  EXPECT_EQ(c.member_of(1).members(), (std::vector<Index>{1}));
  EXPECT_THROW(ball_cover(X, 0.0), DomainError);
}

TEST(Cover, RejectsBadSelector) {
  auto X = line({0, 1});
  std::vector<Subset> mem{Subset(X, {0}), Subset(X, {1})};
  EXPECT_THROW(Cover(X, mem, {1, 1}), DomainError);
  EXPECT_THROW(Cover(X, {Subset(X, {0})}, {0, 0}), DomainError);
}

TEST(Mapping, Basics) {
  Mapping f(3, {2, 0, 1});
  EXPECT_TRUE(f.is_bijective());
  EXPECT_EQ(f.inverse().image(), (std::vector<Index>{1, 2, 0}));
  EXPECT_EQ(f.after(f.inverse()), Mapping::identity(3));
  Mapping c = Mapping::constant(3, 2, 1);
  EXPECT_FALSE(c.is_injective());
  EXPECT_FALSE(c.is_surjective());
  EXPECT_EQ(c.image_set(), (std::vector<Index>{1}));
  EXPECT_THROW(Mapping(2, {0, 2}), DomainError);
  EXPECT_THROW(c.inverse(), DomainError);
}

TEST(Correspondence, RejectsMissingProjection) {
  EXPECT_THROW(Correspondence(2, 2, {{0, 0}, {1, 0}}), DomainError);
  Correspondence r(2, 2, {{1, 1}, {0, 0}, {0, 0}});
  EXPECT_EQ(r.pairs(), (PairList{{0, 0}, {1, 1}}));
}

TEST(Correspondence, LeastIndexMapsStayInside) {
  Correspondence r(2, 3, {{0, 2}, {0, 1}, {1, 0}, {1, 2}});
  auto [f, g] = r.least_index_maps();
  EXPECT_EQ(f.image(), (std::vector<Index>{1, 0}));
  EXPECT_EQ(g.image(), (std::vector<Index>{1, 0, 0}));
}

// Properties on random data.

class MetricProperties : public ::testing::TestWithParam<int> {};

TEST_P(MetricProperties, HausdorffIsAPseudometric) {
  gen::Rng rng(1000 + GetParam());
  const auto n = gen::uniform_size(rng, 2, 9);
  auto X = gen::random_space(rng, n);
  ASSERT_TRUE(validate_metric(X).ok());
  auto pick = [&] { return Subset(X, gen::random_subset(rng, n, gen::uniform_size(rng, 1, n))); };
  auto a = pick(), b = pick(), c = pick();
  EXPECT_EQ(hausdorff(a, a), 0.0);
  EXPECT_EQ(hausdorff(a, b), hausdorff(b, a));
  EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-9);
  EXPECT_DOUBLE_EQ(hausdorff(a, b), oracle::hausdorff_sets(X, a.members(), b.members()));
}

TEST_P(MetricProperties, SubsetDiameterBoundedByParent) {
  gen::Rng rng(2000 + GetParam());
  const auto n = gen::uniform_size(rng, 1, 9);
  auto X = gen::random_space(rng, n);
  Subset s(X, gen::random_subset(rng, n, gen::uniform_size(rng, 1, n)));
  EXPECT_LE(diam(s), X.diameter());
}

TEST_P(MetricProperties, BallsContainCenters) {
  gen::Rng rng(3000 + GetParam());
  const auto n = gen::uniform_size(rng, 1, 9);
  auto X = gen::random_space(rng, n);
  const double eps = std::uniform_real_distribution<double>(0.01, 3.0)(rng);
  auto c = ball_cover(X, eps);
  for (Index p = 0; p < n; ++p) EXPECT_TRUE(c.member_of(p).contains(p));
  EXPECT_LE(c.max_diam(), 2 * eps);
}

TEST_P(MetricProperties, MapPairUnionIsACorrespondence) {
  gen::Rng rng(4000 + GetParam());
  const auto n = gen::uniform_size(rng, 1, 7), m = gen::uniform_size(rng, 1, 7);
  auto f = gen::random_mapping(rng, n, m);
  auto g = gen::random_mapping(rng, m, n);
  EXPECT_NO_THROW(Correspondence::from_maps(f, g));
}

INSTANTIATE_TEST_SUITE_P(Seeds, MetricProperties, ::testing::Range(0, 40));
