#include <gtest/gtest.h>

#include <random>

#include "fgiqa/colorspace.hpp"
#include "fgiqa/errors.hpp"
#include "test_support.hpp"

namespace fgiqa {
namespace {

YcbcrImage convert_uniform(double r, double g, double b) {
  return rgb_to_ycbcr(RgbImage::filled(3, 3, r, g, b));
}

TEST(ColorspaceTest, BlackMapsToOffsets) {
  const auto c = convert_uniform(0, 0, 0);
  EXPECT_DOUBLE_EQ(c.y(1, 1), 16.0);
  EXPECT_DOUBLE_EQ(c.cb(1, 1), 128.0);
  EXPECT_DOUBLE_EQ(c.cr(1, 1), 128.0);
}

TEST(ColorspaceTest, WhiteHandEvaluated) {
  // (0.257 + 0.564 + 0.098) * 255 + 16; chroma rows sum to zero.
  const auto c = convert_uniform(255, 255, 255);
  EXPECT_NEAR(c.y(0, 0), 250.345, 1e-9);
  EXPECT_NEAR(c.cb(0, 0), 128.0, 1e-9);
  EXPECT_NEAR(c.cr(0, 0), 128.0, 1e-9);
}

TEST(ColorspaceTest, PureRedHandEvaluated) {
  const auto c = convert_uniform(255, 0, 0);
  EXPECT_NEAR(c.y(2, 2), 81.535, 1e-9);
  EXPECT_NEAR(c.cb(2, 2), 90.26, 1e-9);
  EXPECT_NEAR(c.cr(2, 2), 239.945, 1e-9);
}

TEST(ColorspaceTest, GrayHasNeutralChroma) {
  for (int v = 0; v <= 255; ++v) {
    const auto c = convert_uniform(v, v, v);
    ASSERT_NEAR(c.cb(0, 0), 128.0, 1e-9) << v;
    ASSERT_NEAR(c.cr(0, 0), 128.0, 1e-9) << v;
  }
}

TEST(ColorspaceTest, RangesForEightBitInput) {
  std::mt19937_64 rng(11);
  const auto img = testing::random_rgb(64, 64, rng);
  const auto c = rgb_to_ycbcr(img);
  for (double v : c.y.values()) {
    EXPECT_GE(v, 16.0);
    EXPECT_LE(v, 251.0);
  }
  for (const Plane* p : {&c.cb, &c.cr}) {
    for (double v : p->values()) {
      EXPECT_GE(v, 15.0);
      EXPECT_LE(v, 241.0);
    }
  }
}

TEST(ColorspaceTest, MatchesStraightLineOracle) {
  std::mt19937_64 rng(5);
  const auto img = testing::random_rgb(17, 9, rng);
  const auto c = rgb_to_ycbcr(img);
  const auto o = oracle::ycbcr(testing::to_oracle(img.r), testing::to_oracle(img.g),
                               testing::to_oracle(img.b));
  for (std::size_t i = 0; i < c.y.size(); ++i) {
    EXPECT_NEAR(c.y.values()[i], o[0].px[i], 1e-12);
    EXPECT_NEAR(c.cb.values()[i], o[1].px[i], 1e-12);
    EXPECT_NEAR(c.cr.values()[i], o[2].px[i], 1e-12);
  }
}

TEST(ColorspaceTest, ConstantImageStaysConstant) {
  const auto c = rgb_to_ycbcr(RgbImage::filled(5, 4, 12, 200, 77));
  for (double v : c.y.values()) EXPECT_EQ(v, c.y(0, 0));
  for (double v : c.cr.values()) EXPECT_EQ(v, c.cr(0, 0));
}

TEST(ColorspaceTest, RejectsMismatchedChannels) {
  RgbImage img = RgbImage::filled(4, 4, 0, 0, 0);
  img.b = Plane(4, 5);
  EXPECT_THROW(rgb_to_ycbcr(img), InvalidInput);
}

TEST(ColorspaceTest, RejectsImagesBelowThreeByThree) {
  EXPECT_THROW(rgb_to_ycbcr(RgbImage::filled(2, 8, 0, 0, 0)), InvalidInput);
}

TEST(ColorspaceTest, InterleavedAlphaIsDropped) {
  const std::vector<std::uint8_t> rgba(3 * 3 * 4, 200);
  const auto img = RgbImage::from_interleaved(3, 3, 4, rgba);
  EXPECT_EQ(img.r(2, 2), 200);
  EXPECT_THROW(RgbImage::from_interleaved(3, 3, 2, rgba), InvalidInput);
}

}  // namespace
}  // namespace fgiqa
