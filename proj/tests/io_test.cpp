#include <gtest/gtest.h>

#include <sstream>

#include "ghkit/io.hpp"
#include "ghkit/random.hpp"
#include "oracles.hpp"

using namespace ghkit;

namespace {

MetricSpace space_from(const std::string& text) {
  std::istringstream in(text);
  return io::parse_space(in);
}

}  // namespace

TEST(FormatReal, ShortestFormsAndSignedZero) {
  EXPECT_EQ(io::format_real(1.0), "1");
  EXPECT_EQ(io::format_real(0.5), "0.5");
  EXPECT_EQ(io::format_real(-0.0), "0");
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
}

TEST(ParseSpace, MatrixWithComments) {
  auto m = space_from("# two points\nn 2\n0 1.5\n\n1.5 0\n");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m(0, 1), 1.5);
}

TEST(ParseSpace, PointCloudHeader) {
  auto m = space_from("points 3 2 l1\n0 0\n1 1\n3 0\n");
  EXPECT_EQ(m(0, 1), 2.0);
  EXPECT_EQ(m(1, 2), 3.0);
  auto sup = space_from("points 2 2 linf\n0 0\n1 3\n");
  EXPECT_EQ(sup(0, 1), 3.0);
  auto euc = space_from("points 2 2 l2\n0 0\n3 4\n");
  EXPECT_EQ(euc(0, 1), 5.0);
}

TEST(ParseSpace, MalformedInputIsADomainError) {
  EXPECT_THROW(space_from("n 2\n0 1\n1\n"), DomainError);
  EXPECT_THROW(space_from("n 2\n0 1\n1 0\n7\n"), DomainError);
  EXPECT_THROW(space_from("n 2\n0 x\n1 0\n"), DomainError);
  EXPECT_THROW(space_from("m 2\n"), DomainError);
  EXPECT_THROW(space_from("n 0\n"), DomainError);
  EXPECT_THROW(space_from("points 2 2 l3\n0 0\n1 1\n"), DomainError);
}

TEST(ParseMapping, Basics) {
  std::istringstream in("map 3 2\n1\n0\n1\n");
  auto f = io::parse_mapping(in);
  EXPECT_EQ(f.image(), (std::vector<Index>{1, 0, 1}));
  EXPECT_EQ(f.codomain_size(), 2u);
  std::istringstream bad("map 2 2\n0\n2\n");
  EXPECT_THROW(io::parse_mapping(bad), DomainError);
}

TEST(ParseIndexList, HeaderIsOptional) {
  std::istringstream a("subset 2\n4\n1\n"), b("4 1\n"), c("subset 3\n1\n");
  EXPECT_EQ(io::parse_index_list(a), (std::vector<Index>{4, 1}));
  EXPECT_EQ(io::parse_index_list(b), (std::vector<Index>{4, 1}));
  EXPECT_THROW(io::parse_index_list(c), DomainError);
}

TEST(ReadFiles, MissingFileIsADomainError) {
  EXPECT_THROW(io::read_space("/nonexistent/space.msp"), DomainError);
}

class IoProperties : public ::testing::TestWithParam<int> {};

TEST_P(IoProperties, SpaceRoundTrip) {
  gen::Rng rng(22000 + GetParam());
  auto m = gen::random_space(rng, gen::uniform_size(rng, 1, 9));
  std::ostringstream out;
  io::write_space(out, m);
  EXPECT_EQ(space_from(out.str()), m);
  std::ostringstream again;
  io::write_space(again, space_from(out.str()));
  EXPECT_EQ(again.str(), out.str());
}

TEST_P(IoProperties, MappingAndSubsetRoundTrip) {
  gen::Rng rng(23000 + GetParam());
  const auto n = gen::uniform_size(rng, 1, 9), m = gen::uniform_size(rng, 1, 9);
  auto f = gen::random_mapping(rng, n, m);
  std::ostringstream out;
  io::write_mapping(out, f);
  std::istringstream in(out.str());
  EXPECT_EQ(io::parse_mapping(in), f);
  auto s = gen::random_subset(rng, m, gen::uniform_size(rng, 1, m));
  std::ostringstream so;
  io::write_subset(so, s);
  std::istringstream si(so.str());
  EXPECT_EQ(io::parse_index_list(si), s);
}

TEST_P(IoProperties, PointCloudsInduceValidMetrics) {
  gen::Rng rng(24000 + GetParam());
  for (auto norm : {io::Norm::l1, io::Norm::l2, io::Norm::linf}) {
    auto pc = gen::real_cloud(rng, gen::uniform_size(rng, 1, 12), gen::uniform_size(rng, 1, 4), norm);
    auto m = io::induced_metric(pc);
    EXPECT_TRUE(validate_metric(m).ok()) << io::to_string(norm);
    std::ostringstream out;
    io::write_point_cloud(out, pc);
    std::istringstream in(out.str());
    auto back = io::parse_point_cloud(in);
    EXPECT_EQ(back.points, pc.points);
    EXPECT_EQ(back.norm, pc.norm);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, IoProperties, ::testing::Range(0, 30));
