#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ratiocut/data.hpp"
#include "ratiocut/error.hpp"
#include "ratiocut/graph.hpp"

using namespace ratiocut;

namespace {

LabeledCloud load(const std::string& text, LabelColumn mode) {
  std::istringstream in(text);
  return load_cloud(in, mode);
}

}  // namespace

TEST(TwoMoons, NoiselessPointsLieOnUnitCircles) {
  TwoMoonsParams p;
  p.n_per_moon = 50;
  p.ambient_dim = 5;
  p.sigma = 0.0;
  const auto data = two_moons(p);
  ASSERT_EQ(data.cloud.size(), 100u);
  ASSERT_EQ(data.cloud.dim(), 5u);
  for (Vertex i = 0; i < 100; ++i) {
    const auto x = data.cloud.point(i);
    const bool second = i >= 50;
    EXPECT_EQ(data.truth[i], second ? 1 : 0);
    const double cx = second ? 1.0 : 0.0, cy = second ? -0.5 : 0.0;
    EXPECT_NEAR(std::hypot(x[0] - cx, x[1] - cy), 1.0, 1e-12);
    if (second) EXPECT_LE(x[1], -0.5 + 1e-12);
    else EXPECT_GE(x[1], -1e-12);
    for (std::size_t d = 2; d < 5; ++d) EXPECT_EQ(x[d], 0.0);
  }
}

TEST(TwoMoons, DeterministicBySeed) {
  TwoMoonsParams p;
  p.n_per_moon = 20;
  p.ambient_dim = 10;
  const auto a = two_moons(p), b = two_moons(p);
  EXPECT_EQ(a.cloud, b.cloud);
  p.seed = 1;
  EXPECT_FALSE(two_moons(p).cloud == a.cloud);
}

TEST(TwoMoons, EquispacedPlanarNoiseOnlyTouchesThePlane) {
  TwoMoonsParams p;
  p.n_per_moon = 10;
  p.ambient_dim = 4;
  p.sampling = AngleSampling::equispaced;
  p.noise = NoiseMode::planar;
  const auto data = two_moons(p);
  for (Vertex i = 0; i < 20; ++i) {
    EXPECT_EQ(data.cloud.point(i)[2], 0.0);
    EXPECT_EQ(data.cloud.point(i)[3], 0.0);
  }
}

TEST(TwoMoons, ZeroNoiseUniformAnglesGiveAGraph) {
  TwoMoonsParams p;
  p.n_per_moon = 100;
  p.ambient_dim = 3;
  p.sigma = 0.0;
  const auto g = knn_graph(two_moons(p).cloud, {});
  EXPECT_GT(g.num_edges(), 0u);
}

TEST(TwoMoons, RejectsBadParameters) {
  TwoMoonsParams p;
  p.n_per_moon = 0;
  EXPECT_THROW(two_moons(p), Error);
  p = {};
  p.ambient_dim = 1;
  EXPECT_THROW(two_moons(p), Error);
  p = {};
  p.sigma = -1.0;
  EXPECT_THROW(two_moons(p), Error);
}

TEST(Purity, Examples) {
  const std::vector<std::uint8_t> truth{0, 0, 1, 1};
  EXPECT_EQ(purity(std::vector<std::uint8_t>{0, 0, 1, 1}, truth), 1.0);
  EXPECT_EQ(purity(std::vector<std::uint8_t>{1, 1, 0, 0}, truth), 1.0);
  EXPECT_EQ(purity(std::vector<std::uint8_t>{0, 1, 1, 1}, truth), 0.75);
  EXPECT_EQ(purity(std::vector<std::uint8_t>{0, 1, 0, 1}, truth), 0.5);
  EXPECT_THROW(purity(std::vector<std::uint8_t>{0, 1}, truth), Error);
}

TEST(CloudCsv, RoundTripIsBitExact) {
  TwoMoonsParams p;
  p.n_per_moon = 30;
  p.ambient_dim = 6;
  const auto data = two_moons(p);
  std::stringstream io;
  save_cloud(io, data);
  const auto back = load(io.str(), LabelColumn::present);
  EXPECT_EQ(back.cloud, data.cloud);
  EXPECT_EQ(back.truth, data.truth);
  const auto detected = load(io.str(), LabelColumn::detect);
  EXPECT_EQ(detected.truth, data.truth);
}

TEST(CloudCsv, AbsentLabelsKeepEveryColumn) {
  const auto d = load("0.5,1\n2,0\n", LabelColumn::absent);
  EXPECT_EQ(d.cloud.dim(), 2u);
  EXPECT_TRUE(d.truth.empty());
  const auto detected = load("0.5,1.5\n2,0.25\n", LabelColumn::detect);
  EXPECT_EQ(detected.cloud.dim(), 2u);
  EXPECT_TRUE(detected.truth.empty());
}

TEST(CloudCsv, RaggedRowIsAParseError) {
  try {
    load("1,2,0\n3,4\n", LabelColumn::detect);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(CloudCsv, MissingOrBadLabelsAreParseErrors) {
  EXPECT_THROW(load("1.5\n2.5\n", LabelColumn::present), ParseError);
  EXPECT_THROW(load("1,2,0.5\n3,4,1\n", LabelColumn::present), ParseError);
  EXPECT_THROW(load("1,x\n3,4\n", LabelColumn::absent), ParseError);
  EXPECT_THROW(load("1,2\n", LabelColumn::absent), ParseError);
}
