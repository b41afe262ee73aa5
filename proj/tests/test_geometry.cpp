#include "pwc/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

TEST(TxDelay, BroadsideIgnoresX) {
  EXPECT_NEAR(pwc::tx_delay({0.01, 0.03}, 0.0, 1540.0), 0.03 / 1540.0, 1e-18);
  EXPECT_NEAR(0.03 / 1540.0, 19.4805e-6, 1e-10);
}

TEST(TxDelay, OriginIsZero) {
  for (double a : {-0.4, 0.0, 0.3}) {
    EXPECT_EQ(pwc::tx_delay({0.0, 0.0}, a, 1540.0), 0.0);
  }
}

TEST(TxDelay, SteeredHandValue) {
  // cos(10 deg) = 0.984807753012208, sin(10 deg) = 0.173648177666930
  const double expect = (0.03 * 0.984807753012208 + 0.01 * 0.173648177666930) / 1540.0;
  const double a = 10.0 * std::numbers::pi / 180.0;
  EXPECT_NEAR(pwc::tx_delay({0.01, 0.03}, a, 1540.0), expect, 1e-19);
}

TEST(TxDelay, LinearInPosition) {
  const double a = 0.2;
  const pwc::Pixel p{0.004, 0.02};
  const pwc::Pixel q{-0.003, 0.035};
  const double lhs = pwc::tx_delay({2 * p.x + 3 * q.x, 2 * p.z + 3 * q.z}, a, 1540.0);
  const double rhs = 2 * pwc::tx_delay(p, a, 1540.0) + 3 * pwc::tx_delay(q, a, 1540.0);
  EXPECT_NEAR(lhs, rhs, 1e-18);
}

TEST(RxDelay, VerticalPathAndTriangle) {
  EXPECT_DOUBLE_EQ(pwc::rx_delay({0.0, 0.02}, 0.0, 1540.0), 0.02 / 1540.0);
  EXPECT_DOUBLE_EQ(pwc::rx_delay({0.003, 0.004}, 0.0, 1.0), 0.005);
}

TEST(RxDelay, SymmetricElementsAndMinimum) {
  const pwc::Pixel p{0.002, 0.03};
  EXPECT_DOUBLE_EQ(pwc::rx_delay(p, p.x - 0.005, 1540.0),
                   pwc::rx_delay(p, p.x + 0.005, 1540.0));
  const double at = pwc::rx_delay(p, p.x, 1540.0);
  for (double d : {-1e-3, 1e-4, 2e-3}) {
    EXPECT_GT(pwc::rx_delay(p, p.x + d, 1540.0), at);
  }
}

TEST(Delays, MirrorInvariance) {
  const pwc::Pixel p{0.004, 0.025};
  const pwc::Pixel q{-0.004, 0.025};
  for (double a : {-0.3, 0.1}) {
    for (double xn : {-0.01, 0.0, 0.007}) {
      EXPECT_NEAR(pwc::tx_delay(p, a, 1540.0) + pwc::rx_delay(p, xn, 1540.0),
                  pwc::tx_delay(q, -a, 1540.0) + pwc::rx_delay(q, -xn, 1540.0),
                  1e-18);
    }
  }
}

TEST(Delays, OnAxisRoundTrip) {
  const pwc::Pixel p{0.0015, 0.03};
  EXPECT_DOUBLE_EQ(pwc::tx_delay(p, 0.0, 1540.0) + pwc::rx_delay(p, p.x, 1540.0),
                   2 * p.z / 1540.0);
}

TEST(Probe, LinearIsCentered) {
  const auto p = pwc::ProbeGeometry::linear(192, 0.23e-3, 5.2e6);
  EXPECT_EQ(p.size(), 192u);
  EXPECT_NEAR(p.element_positions.front(), -p.element_positions.back(), 1e-18);
  EXPECT_NEAR(p.element_positions[1] - p.element_positions[0], 0.23e-3, 1e-15);
}

TEST(Probe, InvariantsEnforced) {
  EXPECT_THROW(pwc::ProbeGeometry::linear(1, 1e-3, 5e6), pwc::Error);
  EXPECT_THROW(pwc::ProbeGeometry::linear(8, 0.0, 5e6), pwc::Error);
  pwc::ProbeGeometry bad{{0.0, 0.0, 1.0}, 1.0, 1.0};
  EXPECT_THROW(bad.validate(), pwc::Error);
}

TEST(Sequence, UniformDegrees) {
  const auto s = pwc::PlaneWaveSequence::uniform_degrees(75, -24, 24);
  EXPECT_EQ(s.size(), 75u);
  EXPECT_NEAR(s.angles.front(), -24 * std::numbers::pi / 180, 1e-15);
  EXPECT_NEAR(s.angles.back(), 24 * std::numbers::pi / 180, 1e-15);
  EXPECT_NEAR(s.angles[37], 0.0, 1e-15);
  EXPECT_THROW(pwc::PlaneWaveSequence::uniform_degrees(3, -90, 90), pwc::Error);
  EXPECT_THROW(pwc::PlaneWaveSequence::uniform_degrees(0, -1, 1), pwc::Error);
}

TEST(Grid, UniformAndValidation) {
  const auto g = pwc::ImagingGrid::uniform(-0.01, 0.01, 5, 0.02, 0.03, 3);
  EXPECT_EQ(g.width(), 5u);
  EXPECT_EQ(g.height(), 3u);
  EXPECT_DOUBLE_EQ(g.pixel(4, 2).x, 0.01);
  EXPECT_DOUBLE_EQ(g.pixel(0, 1).z, 0.025);
  EXPECT_EQ(g.speed_of_sound, 1540.0);
  EXPECT_THROW(pwc::ImagingGrid::uniform(-0.01, 0.01, 5, 0.0, 0.03, 3), pwc::Error);
  EXPECT_THROW(pwc::ImagingGrid::uniform(0.01, -0.01, 5, 0.01, 0.03, 3), pwc::Error);
}

TEST(FNumber, Mask) {
  EXPECT_TRUE(pwc::receive_element_active({0, 0.02}, 0.5, 0.0));
  EXPECT_TRUE(pwc::receive_element_active({0, 0.02}, 0.005, 2.0));
  EXPECT_FALSE(pwc::receive_element_active({0, 0.02}, 0.0051, 2.0));
}
