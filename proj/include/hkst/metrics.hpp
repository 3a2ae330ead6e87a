#ifndef HKST_METRICS_HPP
#define HKST_METRICS_HPP

#include <optional>
#include <string_view>

#include "hkst/image.hpp"

namespace hkst {

/// Denominator of the hyper-kurtosis term: `Sigma` divides the sixth central
/// moment by sigma (the default), `Sigma6` by sigma^6 (standardized moment).
enum class BetaNormalization { Sigma, Sigma6 };

std::string_view to_string(BetaNormalization value) noexcept;
BetaNormalization parse_beta_normalization(std::string_view text);

/// Intensity-distribution moments on the normalized [0, 1] scale.
///
/// The modified mean is sqrt(m + beta) when the excess kurtosis is negative and
/// sqrt(m - beta) otherwise. The square-root argument is clamped into [0, 1]
/// and `clamped` records when that happened. A constant image (sigma == 0)
/// has beta == 0 and modified_mean == mean.
struct MomentSummary {
  double mean = 0.0;
  double sigma = 0.0;
  double excess_kurtosis = 0.0;
  double sixth_central_moment = 0.0;
  double beta = 0.0;
  double modified_mean = 0.0;
  bool clamped = false;
};

MomentSummary compute_moments(const GrayImage& image,
                              BetaNormalization normalization = BetaNormalization::Sigma);

struct QualityReport {
  double rmse = 0.0;
  std::optional<double> psnr_db;  // empty when rmse == 0
  double ammbe = 0.0;
  bool clamped_mm_reference = false;
  bool clamped_mm_test = false;
};

// RMSE and PSNR work on raw 0-255 intensities and require equal shapes.
double rmse(const GrayImage& reference, const GrayImage& test);

/// 20 log10(max(test) / rmse). Empty when the images are identical.
std::optional<double> psnr(const GrayImage& reference, const GrayImage& test);

/// |MM(reference) - MM(test)|; shapes may differ.
double ammbe(const GrayImage& reference, const GrayImage& test,
             BetaNormalization normalization = BetaNormalization::Sigma);

QualityReport assess_quality(const GrayImage& reference, const GrayImage& test,
                             BetaNormalization normalization = BetaNormalization::Sigma);

}  // namespace hkst

#endif  // HKST_METRICS_HPP
