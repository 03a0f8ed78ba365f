#include <cmath>

#include <gtest/gtest.h>

#include "focklab/regions.hpp"
#include "focklab/special.hpp"

using namespace focklab;

TEST(Region, FactoriesValidate) {
  EXPECT_THROW(Region::disc(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(Region::disc({NAN, 0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(Region::sector(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Region::sector(-0.1, 1.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Region::sector(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Region::sector(0.0, 1.0, 0.0, 7.0), std::invalid_argument);
  EXPECT_NO_THROW(Region::annulus(0.0, 1.0));
}

TEST(Region, Area) {
  EXPECT_NEAR(area(Region::disc({3.0, -1.0}, 2.0)), 4.0 * kPi, 1e-15);
  EXPECT_NEAR(area(Region::annulus(1.0, 2.0)), 3.0 * kPi, 1e-15);
  // (theta2 - theta1) / 2 * (r2^2 - r1^2)
  EXPECT_NEAR(area(Region::sector(0.3, 1.1, 0.2, 1.7)), 0.75 * (1.21 - 0.09), 1e-15);
}

TEST(Region, ContainsAndOriginRadial) {
  const Region s = Region::sector(0.5, 1.0, -0.5, 0.5);
  EXPECT_TRUE(s.contains({0.75, 0.0}));
  EXPECT_FALSE(s.contains({-0.75, 0.0}));
  EXPECT_FALSE(s.contains({0.25, 0.0}));
  // Angles are compared modulo 2 pi.
  const Region wrap = Region::sector(0.0, 1.0, 6.0, 7.0);
  EXPECT_TRUE(wrap.contains(std::polar(0.5, 0.5)));
  EXPECT_TRUE(Region::disc(0.0, 1.0).is_origin_radial());
  EXPECT_FALSE(Region::disc({0.1, 0.0}, 1.0).is_origin_radial());
  EXPECT_TRUE(Region::annulus(0.5, 1.0).is_origin_radial());
  EXPECT_FALSE(s.is_origin_radial());
}

TEST(Disjoint, DiscPairs) {
  EXPECT_TRUE(disjoint(Region::disc(0.0, 1.0), Region::disc({2.0, 0.0}, 1.0)));  // tangent
  EXPECT_FALSE(disjoint(Region::disc(0.0, 1.0), Region::disc({1.9, 0.0}, 1.0)));
}

TEST(Disjoint, SectorPairs) {
  EXPECT_TRUE(disjoint(Region::sector(0.0, 1.0, 0.0, 1.0), Region::sector(0.0, 1.0, 1.0, 2.0)));
  EXPECT_TRUE(disjoint(Region::sector(0.0, 1.0, 0.0, 1.0), Region::sector(1.0, 2.0, 0.0, 1.0)));
  EXPECT_FALSE(disjoint(Region::sector(0.0, 1.0, 0.0, 1.0), Region::sector(0.5, 2.0, 0.5, 2.0)));
  // Arc [6, 6.5] reaches past 2 pi and overlaps [0, 0.1].
  EXPECT_FALSE(disjoint(Region::sector(0.0, 1.0, 6.0, 6.5), Region::sector(0.0, 1.0, 0.0, 0.1)));
  EXPECT_TRUE(disjoint(Region::sector(0.0, 1.0, -1.0, 0.0), Region::sector(0.0, 1.0, 0.0, kTwoPi - 1.0)));
}

TEST(Disjoint, DiscAgainstSector) {
  const Region ring = Region::annulus(2.0, 3.0);
  EXPECT_TRUE(disjoint(Region::disc(0.0, 1.0), ring));
  EXPECT_FALSE(disjoint(Region::disc({2.5, 0.0}, 0.2), ring));
  // Disc in the opposite half-plane of a sector.
  EXPECT_TRUE(disjoint(Region::disc({-2.0, 0.0}, 0.5), Region::sector(0.0, 3.0, -1.0, 1.0)));
  // Disc covering the origin meets every sector it reaches radially.
  EXPECT_FALSE(disjoint(Region::disc({0.2, 0.0}, 0.5), Region::sector(0.1, 3.0, 2.0, 2.5)));
  const std::vector<Region> three{Region::disc(0.0, 0.5), Region::annulus(0.5, 1.0), Region::disc({3.0, 0.0}, 1.0)};
  EXPECT_TRUE(disjoint(three));
}

TEST(RegionJson, RoundTrip) {
  for (const Region& r : {Region::disc({1.0, -2.0}, 0.5), Region::sector(0.1, 0.9, 0.3, 2.0)}) {
    nlohmann::json j = r;
    const Region back = region_from_json(j);
    EXPECT_EQ(nlohmann::json(back), j);
  }
  EXPECT_EQ(nlohmann::json(Region::disc({1.0, -2.0}, 0.5)).dump(), R"({"disc":{"center":[1.0,-2.0],"radius":0.5}})");
  EXPECT_THROW(region_from_json(nlohmann::json{{"square", 1}}), std::invalid_argument);
}
