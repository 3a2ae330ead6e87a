#ifndef HKST_ENHANCE_HPP
#define HKST_ENHANCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkst/image.hpp"
#include "hkst/metrics.hpp"

namespace hkst {

struct Histogram {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept;
};

Histogram histogram(const GrayImage& image);

/// Intensity remapping table. `split_point` is empty for global equalization.
struct TransferMap {
  std::array<std::uint8_t, 256> lut{};
  std::optional<int> split_point;

  static TransferMap identity();
  GrayImage apply(const GrayImage& image) const;
};

struct Equalized {
  GrayImage image;
  TransferMap map;
  std::vector<std::string> warnings;
};

struct HkmdheEqualized {
  GrayImage image;
  TransferMap map;
  std::vector<std::string> warnings;
  MomentSummary moments;
};

inline constexpr std::string_view kConstantImageWarning =
    "constant image: identity transfer map";

/// Classic cdf-based equalization over the full [0, 255] range.
Equalized equalize_global(const GrayImage& image);

/// Two-segment equalization: values <= split_point are equalized onto
/// [0, split_point], the rest onto [split_point + 1, 255]. Each segment uses its
/// own cdf anchored at its darkest occupied bin. Segments with fewer than two
/// occupied bins keep the identity mapping.
Equalized equalize_split(const GrayImage& image, int split_point);

/// Mean-split bi-histogram equalization, T = round(255 * mean).
Equalized equalize_bhe(const GrayImage& image);

/// Hyper-kurtosis modified duo histogram equalization: split at
/// T = clamp(round(255 * MM), 1, 254), then as equalize_split.
HkmdheEqualized equalize_hkmdhe(const GrayImage& image,
                                BetaNormalization normalization = BetaNormalization::Sigma);

int hkmdhe_split_point(double modified_mean) noexcept;

}  // namespace hkst

#endif  // HKST_ENHANCE_HPP
