#include "hkst/phantom.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "hkst/digest.hpp"
#include "hkst/error.hpp"
#include "test_support.hpp"

namespace hkst {
namespace {

PhantomSpec grating(std::size_t width, std::size_t period, int amplitude, int offset) {
  PhantomSpec s;
  s.kind = PhantomKind::Grating;
  s.width = width;
  s.height = 4;
  s.period = period;
  s.amplitude = amplitude;
  s.offset = offset;
  return s;
}

PhantomSpec fractal(std::uint64_t seed, double hurst, std::size_t size = 64) {
  PhantomSpec s;
  s.kind = PhantomKind::Fractal;
  s.width = s.height = size;
  s.seed = seed;
  s.hurst = hurst;
  return s;
}

// Fraction of row-DFT energy (mean removed) above N/4 cycles per row.
double high_frequency_fraction(const GrayImage& img) {
  double high = 0.0, total = 0.0;
  for (std::size_t r = 0; r < img.height(); ++r) {
    const auto row = img.row(r);
    std::vector<double> x(row.begin(), row.end());
    const auto spec = testing::reference_dft(Signal(x).without_mean().samples());
    for (std::size_t f = 1; f < spec.size(); ++f) {
      const std::size_t k = std::min(f, spec.size() - f);
      const double e = std::norm(spec[f]);
      total += e;
      if (k > spec.size() / 4) high += e;
    }
  }
  return high / total;
}

TEST(GratingTest, Period8RowSpectrum) {
  const auto img = make_grating(grating(64, 8, 100, 128));
  for (std::size_t r = 1; r < img.height(); ++r) {
    EXPECT_TRUE(std::equal(img.row(r).begin(), img.row(r).end(), img.row(0).begin()));
  }
  const auto row = img.row(0);
  EXPECT_EQ(row[0], 228);
  EXPECT_EQ(row[2], 128);
  EXPECT_EQ(row[4], 28);
  const auto spec = testing::reference_dft(std::vector<double>(row.begin(), row.end()));
  // Rounding only feeds odd harmonics of voice 8 (24, 40); nothing else.
  for (std::size_t f = 0; f < 64; ++f) {
    if (f == 0 || f == 8 || f == 56 || f == 24 || f == 40) continue;
    EXPECT_LT(std::abs(spec[f]), 1e-9) << "voice " << f;
  }
  EXPECT_LT(std::abs(spec[24]), 1.0);
  EXPECT_NEAR(std::abs(spec[8]), 50.0, 1.0);
}

TEST(GratingTest, ZeroAmplitudeIsConstant) {
  const auto img = make_grating(grating(16, 4, 0, 90));
  EXPECT_EQ(img, GrayImage::filled(16, 4, 90));
}

TEST(GratingTest, FullWidthPeriod) {
  const auto img = make_grating(grating(64, 64, 100, 128));
  const auto row = img.row(0);
  const auto spec = testing::reference_dft(std::vector<double>(row.begin(), row.end()));
  std::size_t best = 1;
  for (std::size_t f = 2; f <= 32; ++f)
    if (std::abs(spec[f]) > std::abs(spec[best])) best = f;
  EXPECT_EQ(best, 1u);
}

TEST(GratingTest, Validation) {
  EXPECT_THROW(make_grating(grating(64, 7, 100, 128)), Error);
  EXPECT_THROW(make_grating(grating(64, 8, 128, 128)), Error);
  EXPECT_THROW(make_grating(grating(64, 8, 100, 200)), Error);
  EXPECT_THROW(make_grating(grating(64, 0, 10, 128)), Error);
  auto wrong = grating(64, 8, 100, 128);
  wrong.kind = PhantomKind::Fractal;
  EXPECT_THROW(make_grating(wrong), Error);
}

TEST(TwoLevelTest, DeterministicAndBalanced) {
  PhantomSpec s;
  s.kind = PhantomKind::TwoLevel;
  s.width = s.height = 128;
  s.seed = 42;
  const auto a = make_two_level(s);
  EXPECT_EQ(a, make_two_level(s));
  double sum = 0.0;
  for (auto p : a.pixels()) {
    EXPECT_TRUE(p == 0 || p == 255);
    sum += p;
  }
  EXPECT_NEAR(sum / a.size(), 127.5, 0.05 * 255.0);
  s.seed = 43;
  EXPECT_NE(a, make_two_level(s));
}

TEST(TwoLevelTest, PinnedStream) {
  PhantomSpec s;
  s.kind = PhantomKind::TwoLevel;
  s.width = 8;
  s.height = 1;
  s.seed = 0;
  const auto img = make_two_level(s);
  SplitMix64 rng(0);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(img.at(0, j), (rng.next() >> 63) ? 255 : 0);
}

TEST(FractalTest, GoldenDigest) {
  // Matches the numpy re-implementation in tests/oracle/oracle.py byte for byte.
  const auto img = make_fractal(fractal(11, 0.5));
  EXPECT_EQ(sha256_hex(write_pgm(img)),
            "168597f6e120cfc300c28454f0d8653ab8a476c1e8011334315b963f30c38382");
}

TEST(FractalTest, DeterministicAndSpansFullRange) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto a = make_fractal(fractal(seed, 0.3));
    EXPECT_EQ(a, make_fractal(fractal(seed, 0.3)));
    EXPECT_EQ(*std::min_element(a.pixels().begin(), a.pixels().end()), 0);
    EXPECT_EQ(*std::max_element(a.pixels().begin(), a.pixels().end()), 255);
  }
  auto rect = fractal(5, 0.5);
  rect.width = 32;
  rect.height = 8;
  const auto r = make_fractal(rect);
  EXPECT_EQ(r.width(), 32u);
  EXPECT_EQ(r.height(), 8u);
}

TEST(FractalTest, SmootherForLargerHurst) {
  for (std::uint64_t seed : {1u, 11u, 21u}) {
    const double rough = high_frequency_fraction(make_fractal(fractal(seed, 0.2)));
    const double smooth = high_frequency_fraction(make_fractal(fractal(seed, 0.8)));
    EXPECT_LT(smooth, rough) << "seed " << seed;
  }
}

TEST(FractalTest, Validation) {
  auto s = fractal(1, 0.5);
  s.width = 48;
  EXPECT_THROW(make_fractal(s), Error);
  s = fractal(1, 0.0);
  EXPECT_THROW(make_fractal(s), Error);
  s = fractal(1, 1.0);
  EXPECT_THROW(make_fractal(s), Error);
}

TEST(PhantomKindTest, Parse) {
  EXPECT_EQ(parse_phantom_kind("two-level"), PhantomKind::TwoLevel);
  EXPECT_EQ(to_string(PhantomKind::Fractal), "fractal");
  EXPECT_THROW(parse_phantom_kind("speckle"), Error);
}

}  // namespace
}  // namespace hkst
