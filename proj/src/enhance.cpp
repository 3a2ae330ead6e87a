#include "hkst/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hkst/error.hpp"

namespace hkst {

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram histogram(const GrayImage& image) {
  Histogram h;
  for (auto v : image.pixels()) ++h.counts[v];
  return h;
}

TransferMap TransferMap::identity() {
  TransferMap map;
  std::iota(map.lut.begin(), map.lut.end(), std::uint8_t{0});
  return map;
}

GrayImage TransferMap::apply(const GrayImage& image) const {
  std::vector<std::uint8_t> out(image.size());
  std::transform(image.pixels().begin(), image.pixels().end(), out.begin(),
                 [this](std::uint8_t v) { return lut[v]; });
  return GrayImage(image.width(), image.height(), std::move(out));
}

namespace {

// Equalizes bins [lo, hi] onto the output range [lo, hi]:
//   lut[v] = lo + round((hi - lo) * (cum(v) - c_min) / (total - c_min))
// where c_min is the count of the darkest occupied bin. Pure integer
// arithmetic; the ratio is non-negative so round-half-up == half-away.
void equalize_segment(const Histogram& h, int lo, int hi, TransferMap& map) {
  std::uint64_t total = 0;
  int occupied = 0;
  std::uint64_t c_min = 0;
  for (int v = lo; v <= hi; ++v) {
    if (h.counts[v] == 0) continue;
    if (occupied == 0) c_min = h.counts[v];
    ++occupied;
    total += h.counts[v];
  }
  if (occupied < 2) {
    for (int v = lo; v <= hi; ++v) map.lut[v] = static_cast<std::uint8_t>(v);
    return;
  }
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo);
  const std::uint64_t den = total - c_min;
  std::uint64_t cum = 0;
  for (int v = lo; v <= hi; ++v) {
    cum += h.counts[v];
    const std::uint64_t num = cum > c_min ? cum - c_min : 0;
    const std::uint64_t step = (2 * range * num + den) / (2 * den);
    map.lut[v] = static_cast<std::uint8_t>(lo + static_cast<int>(step));
  }
}

bool is_constant(const Histogram& h) {
  return std::count_if(h.counts.begin(), h.counts.end(), [](auto c) { return c != 0; }) <= 1;
}

std::vector<std::string> degenerate_warnings(const Histogram& h) {
  if (is_constant(h)) return {std::string(kConstantImageWarning)};
  return {};
}

int round_half_away(double v) { return static_cast<int>(std::round(v)); }

}  // namespace

Equalized equalize_global(const GrayImage& image) {
  const auto h = histogram(image);
  TransferMap map;
  equalize_segment(h, 0, 255, map);
  return Equalized{map.apply(image), map, degenerate_warnings(h)};
}

Equalized equalize_split(const GrayImage& image, int split_point) {
  if (split_point < 0 || split_point > 255) {
    throw Error(ErrorCode::InvalidArgument, "split point outside [0, 255]");
  }
  const auto h = histogram(image);
  TransferMap map;
  map.split_point = split_point;
  equalize_segment(h, 0, split_point, map);
  if (split_point < 255) equalize_segment(h, split_point + 1, 255, map);
  return Equalized{map.apply(image), map, degenerate_warnings(h)};
}

Equalized equalize_bhe(const GrayImage& image) {
  // round(255 * mean / 255) evaluated exactly on the integer pixel sum.
  std::uint64_t sum = 0;
  for (auto v : image.pixels()) sum += v;
  const std::uint64_t n = image.size();
  return equalize_split(image, static_cast<int>((2 * sum + n) / (2 * n)));
}

int hkmdhe_split_point(double modified_mean) noexcept {
  return std::clamp(round_half_away(255.0 * modified_mean), 1, 254);
}

HkmdheEqualized equalize_hkmdhe(const GrayImage& image, BetaNormalization normalization) {
  const auto moments = compute_moments(image, normalization);
  auto eq = equalize_split(image, hkmdhe_split_point(moments.modified_mean));
  return HkmdheEqualized{std::move(eq.image), eq.map, std::move(eq.warnings), moments};
}

}  // namespace hkst
