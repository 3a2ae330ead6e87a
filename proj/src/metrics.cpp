#include "hkst/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hkst/error.hpp"

namespace hkst {

std::string_view to_string(BetaNormalization value) noexcept {
  return value == BetaNormalization::Sigma ? "sigma" : "sigma6";
}

BetaNormalization parse_beta_normalization(std::string_view text) {
  if (text == "sigma") return BetaNormalization::Sigma;
  if (text == "sigma6") return BetaNormalization::Sigma6;
  throw Error(ErrorCode::InvalidArgument, "unknown beta normalization: " + std::string(text));
}

MomentSummary compute_moments(const GrayImage& image, BetaNormalization normalization) {
  // Moments depend only on the intensity distribution, so accumulate per bin.
  std::array<std::uint64_t, 256> counts{};
  for (auto v : image.pixels()) ++counts[v];
  const double n = static_cast<double>(image.size());

  double sum = 0.0;
  for (int v = 0; v < 256; ++v) sum += static_cast<double>(counts[v]) * v;
  MomentSummary out;
  out.mean = (sum / n) / 255.0;

  double m2 = 0.0, m4 = 0.0, m6 = 0.0;
  for (int v = 0; v < 256; ++v) {
    if (counts[v] == 0) continue;
    const double d = v / 255.0 - out.mean;
    const double d2 = d * d;
    const double w = static_cast<double>(counts[v]);
    m2 += w * d2;
    m4 += w * d2 * d2;
    m6 += w * d2 * d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  m6 /= n;
  out.sigma = std::sqrt(m2);
  out.sixth_central_moment = m6;

  if (out.sigma == 0.0) {
    out.modified_mean = out.mean;
    return out;
  }
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  out.beta = normalization == BetaNormalization::Sigma ? m6 / out.sigma : m6 / (m2 * m2 * m2);
  const double arg = out.excess_kurtosis < 0.0 ? out.mean + out.beta : out.mean - out.beta;
  out.clamped = arg < 0.0 || arg > 1.0;
  out.modified_mean = std::sqrt(std::clamp(arg, 0.0, 1.0));
  return out;
}

namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::ShapeMismatch,
                "dimension mismatch: reference " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs test " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

}  // namespace

double rmse(const GrayImage& reference, const GrayImage& test) {
  require_same_shape(reference, test);
  const auto x = reference.pixels();
  const auto y = test.pixels();
  // Squared differences are integers, exact in 64 bits.
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int d = static_cast<int>(x[i]) - static_cast<int>(y[i]);
    acc += static_cast<std::uint64_t>(d * d);
  }
  return std::sqrt(static_cast<double>(acc) / static_cast<double>(x.size()));
}

std::optional<double> psnr(const GrayImage& reference, const GrayImage& test) {
  const double err = rmse(reference, test);
  if (err == 0.0) return std::nullopt;
  const auto px = test.pixels();
  const int peak = *std::max_element(px.begin(), px.end());
  if (peak == 0) throw Error(ErrorCode::Numeric, "zero-signal test image");
  return 20.0 * std::log10(peak / err);
}

double ammbe(const GrayImage& reference, const GrayImage& test, BetaNormalization normalization) {
  return std::abs(compute_moments(reference, normalization).modified_mean -
                  compute_moments(test, normalization).modified_mean);
}

QualityReport assess_quality(const GrayImage& reference, const GrayImage& test,
                             BetaNormalization normalization) {
  const auto mx = compute_moments(reference, normalization);
  const auto my = compute_moments(test, normalization);
  QualityReport q;
  q.rmse = rmse(reference, test);
  q.psnr_db = psnr(reference, test);
  q.ammbe = std::abs(mx.modified_mean - my.modified_mean);
  q.clamped_mm_reference = mx.clamped;
  q.clamped_mm_test = my.clamped;
  return q;
}

}  // namespace hkst
