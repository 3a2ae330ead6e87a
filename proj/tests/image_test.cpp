#include "hkst/image.hpp"

#include <gtest/gtest.h>

#include <string>

#include "hkst/error.hpp"
#include "test_support.hpp"

namespace hkst {
namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::vector<std::uint8_t> payload) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

PgmError pgm_error_of(const std::vector<std::uint8_t>& bytes) {
  try {
    read_pgm(bytes);
  } catch (const PgmError& e) {
    return e;
  }
  ADD_FAILURE() << "expected PgmError";
  return PgmError(PgmFault::MalformedHeader, 0, "none");
}

TEST(GrayImageTest, RejectsBadShape) {
  EXPECT_THROW(GrayImage(0, 1, {}), Error);
  EXPECT_THROW(GrayImage(2, 2, {1, 2, 3}), Error);
}

TEST(PgmTest, ReadsAllZeroImage) {
  const auto img = read_pgm(bytes_of("P5\n2 2\n255\n", {0, 0, 0, 0}));
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.height(), 2u);
  EXPECT_EQ(img, GrayImage::filled(2, 2, 0));
}

TEST(PgmTest, ReadsExactPixels) {
  const auto img = read_pgm(bytes_of("P5 3 1 255\n", {10, 20, 30}));
  EXPECT_EQ(img.width(), 3u);
  EXPECT_EQ(img.height(), 1u);
  EXPECT_EQ(std::vector<std::uint8_t>(img.pixels().begin(), img.pixels().end()),
            (std::vector<std::uint8_t>{10, 20, 30}));
}

TEST(PgmTest, SkipsHeaderComments) {
  const auto img = read_pgm(bytes_of("P5\n# made by hand\n3 1\n# depth\n255\n", {1, 2, 3}));
  EXPECT_EQ(img.at(0, 2), 3);
}

TEST(PgmTest, PayloadMayStartWithWhitespaceByte) {
  const auto img = read_pgm(bytes_of("P5\n2 1\n255\n", {'\n', ' '}));
  EXPECT_EQ(img.at(0, 0), '\n');
  EXPECT_EQ(img.at(0, 1), ' ');
}

TEST(PgmTest, UnsupportedMaxval) {
  const auto e = pgm_error_of(bytes_of("P5\n2 2\n65535\n", {0, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(e.fault(), PgmFault::UnsupportedMaxval);
  EXPECT_EQ(e.offset(), 7u);
  EXPECT_NE(std::string(e.what()).find("unsupported maxval"), std::string::npos);
}

TEST(PgmTest, MalformedHeader) {
  EXPECT_EQ(pgm_error_of(bytes_of("P2\n2 2\n255\n", {})).fault(), PgmFault::MalformedHeader);
  const auto e = pgm_error_of(bytes_of("P5\nxx 2\n255\n", {}));
  EXPECT_EQ(e.fault(), PgmFault::MalformedHeader);
  EXPECT_EQ(e.offset(), 3u);
  EXPECT_EQ(pgm_error_of(bytes_of("P5\n0 2\n255\n", {})).fault(), PgmFault::MalformedHeader);
  EXPECT_EQ(pgm_error_of(bytes_of("P5\n2 2\n255", {})).fault(), PgmFault::MalformedHeader);
}

TEST(PgmTest, TruncatedPayload) {
  const auto e = pgm_error_of(bytes_of("P5\n2 2\n255\n", {1, 2, 3}));
  EXPECT_EQ(e.fault(), PgmFault::TruncatedPayload);
  EXPECT_EQ(e.offset(), 14u);
}

TEST(PgmTest, RoundTripIsBitExact) {
  for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
    const auto img = testing::random_image(seed, 64, 64);
    const auto bytes = write_pgm(img);
    EXPECT_EQ(read_pgm(bytes), img);
    EXPECT_EQ(write_pgm(read_pgm(bytes)), bytes);
  }
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = 1 + rng.next() % 40;
    const auto h = 1 + rng.next() % 40;
    const auto img = testing::random_image(rng, w, h);
    EXPECT_EQ(read_pgm(write_pgm(img)), img);
  }
}

TEST(UnfoldTest, RasterIsRowMajor) {
  const GrayImage img(2, 2, {1, 2, 3, 4});
  const auto s = unfold_raster(img);
  EXPECT_EQ(std::vector<double>(s.samples().begin(), s.samples().end()), (std::vector<double>{1, 2, 3, 4}));

  const GrayImage img2(3, 2, {0, 255, 0, 255, 0, 255});
  const auto s2 = unfold_raster(img2);
  EXPECT_EQ(std::vector<double>(s2.samples().begin(), s2.samples().end()),
            (std::vector<double>{0, 255, 0, 255, 0, 255}));
}

TEST(UnfoldTest, RowImageIsIdentity) {
  const GrayImage row(5, 1, {9, 8, 7, 6, 5});
  const auto s = unfold_raster(row);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s[i], row.at(0, i));
}

TEST(UnfoldTest, RowsSplitAndConcatenate) {
  const GrayImage img(3, 2, {0, 255, 0, 255, 0, 255});
  const auto rows = unfold_rows(img);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].size(), 3u);

  const auto big = testing::random_image(5, 17, 9);
  const auto raster = unfold_raster(big);
  std::vector<double> joined;
  for (const auto& r : unfold_rows(big)) joined.insert(joined.end(), r.samples().begin(), r.samples().end());
  EXPECT_EQ(joined, std::vector<double>(raster.samples().begin(), raster.samples().end()));
  for (std::size_t i = 0; i < big.height(); ++i)
    for (std::size_t j = 0; j < big.width(); ++j) EXPECT_EQ(raster[i * big.width() + j], big.at(i, j));
}

TEST(UnfoldTest, SingleColumnRejected) {
  const GrayImage column(1, 4, {1, 2, 3, 4});
  try {
    unfold_rows(column);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()), "row too short for spectral analysis");
  }
}

TEST(SignalTest, Invariants) {
  EXPECT_THROW(Signal({1.0}), Error);
  EXPECT_THROW(Signal({1.0, std::nan("")}), Error);
  const Signal s({1.0, 3.0});
  EXPECT_DOUBLE_EQ(s.mean(), 2.0);
  EXPECT_DOUBLE_EQ(s.without_mean()[0], -1.0);
}

TEST(SignalCsvTest, ParsesAndFormats) {
  const auto s = parse_signal_csv("index,value\n0,1.5\n1,-2\n2,3e-3\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[2], 3e-3);
  const Signal x({0.1, 1.0 / 3.0, -7.25});
  EXPECT_EQ(parse_signal_csv(format_signal_csv(x)), x);
  EXPECT_EQ(format_signal_csv(Signal({0.5, 2.0})), "index,value\n0,0.5\n1,2\n");
}

TEST(SignalCsvTest, RejectsMalformed) {
  EXPECT_THROW(parse_signal_csv(""), Error);
  EXPECT_THROW(parse_signal_csv("index,value\n"), Error);
  EXPECT_THROW(parse_signal_csv("idx,val\n0,1\n1,2\n"), Error);
  EXPECT_THROW(parse_signal_csv("index,value\n0,1\n2,2\n"), Error);
  EXPECT_THROW(parse_signal_csv("index,value\n0,abc\n1,2\n"), Error);
}

}  // namespace
}  // namespace hkst
