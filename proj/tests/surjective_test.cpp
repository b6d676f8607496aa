#include <gtest/gtest.h>

#include "ghkit/random.hpp"
#include "ghkit/surjective.hpp"
#include "oracles.hpp"

using namespace ghkit;
using oracle::line;
using oracle::two_point;

TEST(Surjectivity, Examples) {
  auto Y = line({0, 1, 2});
  auto X = line({0, 1, 2});
  EXPECT_EQ(measure_surjectivity(Mapping(3, {2, 0, 1}), X, Y).delta_eff, 0.0);
  auto T = two_point(3);
  EXPECT_EQ(measure_surjectivity(Mapping::constant(2, 2, 0), T, T).delta_eff, 3.0);
  auto S = two_point(2);
  auto r = measure_surjectivity(Mapping(3, {0, 2}), S, Y);
  EXPECT_EQ(r.delta_eff, 1.0);
  EXPECT_EQ(r.image.members(), (std::vector<Index>{0, 2}));
}

TEST(QuasiInverse, BijectionGivesInverse) {
  auto X = line({0, 1, 3});
  auto Y = line({0, 2, 5});
  Mapping f(3, {1, 2, 0});
  auto g = quasi_inverse(f, X, Y);
  EXPECT_EQ(g, f.inverse());
  for (const auto& c : check_quasi_inverse_bounds(f, g, X, Y)) EXPECT_TRUE(c.holds) << c.name;
}

TEST(QuasiInverse, InclusionOfEndpoints) {
  auto X = two_point(2);
  auto Y = line({0, 1, 2});
  Mapping f(3, {0, 2});
  auto g = quasi_inverse(f, X, Y);
  EXPECT_EQ(g.image(), (std::vector<Index>{0, 0, 1}));
  auto s = gh_pair(f, g, X, Y);
  EXPECT_EQ(s.f.plus, 0.0);
  EXPECT_EQ(s.f.minus, 0.0);
  EXPECT_EQ(s.g.plus, 1.0);
  EXPECT_EQ(s.g.minus, 1.0);
  EXPECT_EQ(s.fg.plus, 1.0);
  EXPECT_EQ(s.fg.minus, 1.0);
  for (const auto& c : check_quasi_inverse_bounds(f, g, X, Y)) EXPECT_TRUE(c.holds) << c.name;
}

TEST(CodistortionSurjectivity, Examples) {
  auto A = two_point(1), B = two_point(3);
  auto id = Mapping::identity(2);
  auto r = surjectivity_from_codistortion(id, id, A, B);
  EXPECT_EQ(r.hausdorff, 0.0);
  EXPECT_EQ(r.codistortion_plus, 2.0);
  EXPECT_TRUE(r.holds);
  auto c = surjectivity_from_codistortion(Mapping(3, {1, 1}), Mapping(2, {0, 1, 1}), A,
                                          line({0, 1, 2}));
  EXPECT_EQ(c.hausdorff, 1.0);
  EXPECT_TRUE(c.holds);
}

TEST(Witness, TwoPointSpaces) {
  auto A = two_point(1), B = two_point(3);
  auto w = extract_witness(A, B, 1.1);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->f.is_bijective());
  EXPECT_EQ(w->score.dis_f, 2.0);
  EXPECT_EQ(w->delta_eff, 0.0);
  EXPECT_EQ(w->gh_value, 1.0);
  EXPECT_FALSE(extract_witness(A, B, 0.9));
  EXPECT_FALSE(extract_witness(A, B, 1.0));
}

TEST(Witness, IdenticalSpacesGiveIdentity) {
  auto X = line({0, 1, 4, 6});
  auto w = extract_witness(X, X, 0.01);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->f, Mapping::identity(4));
  EXPECT_EQ(w->score.dis_f, 0.0);
  EXPECT_EQ(w->delta_eff, 0.0);
}

// Surjectivity of a witness is only controlled by 2d: a single point against
// two points at distance 2 has d_GH = 1, yet every map misses one point by 2.
TEST(Witness, SurjectivityDefectCanExceedTheBudget) {
  auto P = MetricSpace(1, {0.0});
  auto T = two_point(2);
  EXPECT_EQ(gh_exact(P, T).value, 1.0);
  auto w = extract_witness(P, T, 1.01);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->delta_eff, 2.0);
  for (Index y = 0; y < 2; ++y)
    EXPECT_EQ(measure_surjectivity(Mapping(2, {y}), P, T).delta_eff, 2.0);
  EXPECT_LE(w->delta_eff, w->score.fg.plus);
}

TEST(Retract, Examples) {
  auto Y = line({0, 1, 2});
  auto X = two_point(1);
  Subset L(Y, {0, 2});
  auto r = retract_onto(Mapping(3, {1, 2}), X, Y, L);
  EXPECT_EQ(r.f_hat.image(), (std::vector<Index>{0, 2}));
  EXPECT_EQ(r.into_subset.image(), (std::vector<Index>{0, 1}));
  EXPECT_EQ(r.rho, 1.0);
  auto inside = retract_onto(Mapping(3, {2, 0}), X, Y, L);
  EXPECT_EQ(inside.f_hat, Mapping(3, {2, 0}));
  EXPECT_EQ(inside.rho, 0.0);
  EXPECT_THROW(retract_onto(Mapping(3, {2, 0}), X, Y, Subset(Y, {})), DomainError);
}

TEST(Pipeline, IsometryGivesZeroDistortion) {
  auto X = line({0, 1, 3, 6});
  Mapping f(4, {0, 1, 2, 3});
  PipelineOptions o;
  o.eps = 0.5;
  auto out = pipeline_to_bijection(f, X, X, o);
  auto& p = std::get<PipelineResult>(out);
  EXPECT_EQ(p.dis_tilde, 0.0);
  EXPECT_EQ(p.f_tilde, f);
  EXPECT_TRUE(p.within_guarantee());
}

TEST(Pipeline, PreconditionsAreDomainErrors) {
  auto X = two_point(1);
  auto Y = line({0, 1, 2});
  PipelineOptions o;
  o.eps = 1.0;
  EXPECT_THROW(pipeline_to_bijection(Mapping(3, {0, 1}), X, Y, o), DomainError);
  o.eps = 0.0;
  EXPECT_THROW(pipeline_to_bijection(Mapping::identity(2), X, X, o), DomainError);
  o.eps = 1.0;
  o.delta = 0.5;
  EXPECT_THROW(pipeline_to_bijection(Mapping(3, {0, 0, 0}), Y, Y, o), DomainError);
}

TEST(Pipeline, TargetRunsInSubspace) {
  auto X = line({0, 1});
  auto Y = line({0, 0.4, 1, 1.3});
  PipelineOptions o;
  o.eps = 0.2;
  o.target = Subset(Y, {0, 2});
  auto out = pipeline_to_bijection(Mapping(4, {1, 3}), X, Y, o);
  auto& p = std::get<PipelineResult>(out);
  EXPECT_EQ(p.f_tilde.image(), (std::vector<Index>{0, 2}));
  EXPECT_DOUBLE_EQ(p.rho, 0.4);
  EXPECT_EQ(p.dis_tilde, 0.0);
  EXPECT_EQ(p.codomain.size(), 2u);
  EXPECT_TRUE(p.within_guarantee());
}

class SurjectiveProperties : public ::testing::TestWithParam<int> {};

TEST_P(SurjectiveProperties, HausdorffBelowPairPlus) {
  gen::Rng rng(17000 + GetParam());
  auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
  auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
  auto f = gen::random_mapping(rng, X.size(), Y.size());
  auto g = gen::random_mapping(rng, Y.size(), X.size());
  auto r = surjectivity_from_codistortion(f, g, X, Y);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.hausdorff, oracle::hausdorff_sets(Y, f.image_set(), Subset::full(Y).members()));
}

TEST_P(SurjectiveProperties, QuasiInverseBoundsAndSection) {
  gen::Rng rng(18000 + GetParam());
  auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
  auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
  auto f = gen::random_mapping(rng, X.size(), Y.size());
  auto g = quasi_inverse(f, X, Y);
  for (const auto& c : check_quasi_inverse_bounds(f, g, X, Y)) EXPECT_TRUE(c.holds) << c.name;
  for (Index y : f.image_set()) EXPECT_EQ(f(g(y)), y);
}

TEST_P(SurjectiveProperties, RetractionBoundsAndMonotonicity) {
  gen::Rng rng(19000 + GetParam());
  auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 8));
  auto Y = gen::random_space(rng, gen::uniform_size(rng, 2, 8));
  auto f = gen::random_mapping(rng, X.size(), Y.size());
  auto small = gen::random_subset(rng, Y.size(), gen::uniform_size(rng, 1, Y.size() - 1));
  auto big = small;
  for (Index extra : gen::random_subset(rng, Y.size(), gen::uniform_size(rng, 1, Y.size())))
    big.push_back(extra);
  Subset L(Y, small), M(Y, big);
  auto r = retract_onto(f, X, Y, L);
  for (const auto& c : check_retraction_bounds(f, r, X, Y, L)) EXPECT_TRUE(c.holds) << c.name;
  EXPECT_LE(retract_onto(f, X, Y, M).rho, r.rho);
}

TEST_P(SurjectiveProperties, WitnessAboveTheValue) {
  gen::Rng rng(20000 + GetParam());
  auto X = gen::random_space(rng, gen::uniform_size(rng, 1, 5));
  auto Y = gen::random_space(rng, gen::uniform_size(rng, 1, 5));
  const double v = gh_exact(X, Y).value;
  const double d = v + std::uniform_real_distribution<double>(1e-6, 1.0)(rng);
  auto w = extract_witness(X, Y, d);
  ASSERT_TRUE(w);
  EXPECT_LE(w->score.dis_f, 2 * d + 1e-9);
  EXPECT_LE(w->delta_eff, w->score.fg.plus + 1e-9);
  EXPECT_LE(w->delta_eff, 2 * d + 1e-9);
  EXPECT_FALSE(extract_witness(X, Y, v));
}

TEST_P(SurjectiveProperties, PipelineGuaranteeOnGrids) {
  gen::Rng rng(21000 + GetParam());
  const auto n = gen::uniform_size(rng, 12, 36);
  auto a = gen::grid_subset(rng, n, 2, 8, 1.0);
  auto b = gen::grid_subset(rng, n + 6, 2, 8, 1.0);
  auto X = io::induced_metric(a);
  auto Y = io::induced_metric(b);
  auto f = gen::near_isometry(rng, a, b, 2, 1.5);
  PipelineOptions o;
  o.eps = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
  o.target = Subset(Y, gen::random_subset(rng, Y.size(), n));
  auto out = pipeline_to_bijection(f, X, Y, o);
  if (auto* p = std::get_if<PipelineResult>(&out)) {
    EXPECT_TRUE(p->within_guarantee(1e-9));
    EXPECT_LE(p->dis_tilde, p->dis_f + 2 * p->rho + 2 * p->delta_eff + 2 * o.eps + 1e-9);
    EXPECT_TRUE(p->f_tilde.is_injective());
    for (Index x = 0; x < X.size(); ++x) EXPECT_TRUE(o.target->contains(p->f_tilde(x)));
    EXPECT_EQ(p->dis_tilde, dis_map(p->f_tilde, X, Y));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SurjectiveProperties, ::testing::Range(0, 50));
