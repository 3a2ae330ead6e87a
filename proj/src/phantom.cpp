#include "hkst/phantom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hkst/error.hpp"
#include "hkst/random.hpp"

namespace hkst {

std::string_view to_string(PhantomKind kind) noexcept {
  switch (kind) {
    case PhantomKind::Grating: return "grating";
    case PhantomKind::TwoLevel: return "two-level";
    case PhantomKind::Fractal: return "fractal";
  }
  return "grating";
}

PhantomKind parse_phantom_kind(std::string_view text) {
  if (text == "grating") return PhantomKind::Grating;
  if (text == "two-level" || text == "two_level") return PhantomKind::TwoLevel;
  if (text == "fractal") return PhantomKind::Fractal;
  throw Error(ErrorCode::InvalidArgument, "unknown phantom kind: " + std::string(text));
}

namespace {

using Cplx = std::complex<double>;

void require_kind(const PhantomSpec& spec, PhantomKind kind) {
  if (spec.kind != kind) {
    throw Error(ErrorCode::InvalidArgument,
                "phantom spec kind is " + std::string(to_string(spec.kind)) + ", expected " +
                    std::string(to_string(kind)));
  }
  if (spec.width == 0 || spec.height == 0) {
    throw Error(ErrorCode::InvalidArgument, "phantom dimensions must be positive");
  }
}

// In-place iterative radix-2 DFT with kernel e^{+i 2 pi k n / N}, unnormalized.
// Twiddles come straight from cos/sin so the result does not depend on a
// recurrence's accumulated error.
void inverse_fft_pow2(std::vector<Cplx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
      const Cplx w(std::cos(angle), std::sin(angle));
      for (std::size_t start = 0; start < n; start += len) {
        const Cplx u = a[start + k];
        const Cplx v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

long centered(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace

GrayImage make_grating(const PhantomSpec& spec) {
  require_kind(spec, PhantomKind::Grating);
  if (spec.period == 0 || spec.width % spec.period != 0) {
    throw Error(ErrorCode::InvalidArgument, "grating period must divide the width");
  }
  if (spec.amplitude < 0 || spec.amplitude > 127) {
    throw Error(ErrorCode::InvalidArgument, "grating amplitude must be in [0, 127]");
  }
  if (spec.offset - spec.amplitude < 0 || spec.offset + spec.amplitude > 255) {
    throw Error(ErrorCode::InvalidArgument, "grating offset +/- amplitude leaves [0, 255]");
  }
  std::vector<std::uint8_t> row(spec.width);
  for (std::size_t j = 0; j < spec.width; ++j) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(spec.period);
    row[j] = static_cast<std::uint8_t>(spec.offset + std::lround(spec.amplitude * std::cos(phase)));
  }
  std::vector<std::uint8_t> pixels;
  pixels.reserve(spec.width * spec.height);
  for (std::size_t i = 0; i < spec.height; ++i) pixels.insert(pixels.end(), row.begin(), row.end());
  return GrayImage(spec.width, spec.height, std::move(pixels));
}

GrayImage make_two_level(const PhantomSpec& spec) {
  require_kind(spec, PhantomKind::TwoLevel);
  SplitMix64 rng(spec.seed);
  std::vector<std::uint8_t> pixels(spec.width * spec.height);
  for (auto& p : pixels) p = (rng.next() >> 63) != 0 ? 255 : 0;
  return GrayImage(spec.width, spec.height, std::move(pixels));
}

GrayImage make_fractal(const PhantomSpec& spec) {
  require_kind(spec, PhantomKind::Fractal);
  if (!std::has_single_bit(spec.width) || !std::has_single_bit(spec.height)) {
    throw Error(ErrorCode::InvalidArgument, "fractal phantom dimensions must be powers of two");
  }
  if (spec.width * spec.height < 2) {
    throw Error(ErrorCode::InvalidArgument, "fractal phantom needs at least 2 pixels");
  }
  if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "hurst exponent must be in (0, 1)");
  }
  const std::size_t w = spec.width, h = spec.height;
  const double exponent = -(spec.hurst + 1.0) / 2.0;

  SplitMix64 rng(spec.seed);
  std::vector<Cplx> field(w * h);
  for (std::size_t ky = 0; ky < h; ++ky) {
    const double sy = static_cast<double>(centered(ky, h));
    for (std::size_t kx = 0; kx < w; ++kx) {
      const double sx = static_cast<double>(centered(kx, w));
      // Draw for every bin, DC included, so the stream layout is fixed.
      const auto [re, im] = rng.normal_pair();
      const double k2 = sx * sx + sy * sy;
      if (k2 == 0.0) continue;
      const double amp = std::pow(k2, exponent);
      field[ky * w + kx] = Cplx(re * amp, im * amp);
    }
  }

  std::vector<Cplx> line;
  for (std::size_t y = 0; y < h; ++y) {
    line.assign(field.begin() + static_cast<long>(y * w), field.begin() + static_cast<long>((y + 1) * w));
    inverse_fft_pow2(line);
    std::copy(line.begin(), line.end(), field.begin() + static_cast<long>(y * w));
  }
  line.resize(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) line[y] = field[y * w + x];
    inverse_fft_pow2(line);
    for (std::size_t y = 0; y < h; ++y) field[y * w + x] = line[y];
  }

  double lo = field[0].real(), hi = field[0].real();
  for (const auto& c : field) {
    lo = std::min(lo, c.real());
    hi = std::max(hi, c.real());
  }
  std::vector<std::uint8_t> pixels(w * h, 0);
  if (hi > lo) {
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * (field[i].real() - lo) / (hi - lo)));
    }
  }
  return GrayImage(w, h, std::move(pixels));
}

GrayImage make_phantom(const PhantomSpec& spec) {
  switch (spec.kind) {
    case PhantomKind::Grating: return make_grating(spec);
    case PhantomKind::TwoLevel: return make_two_level(spec);
    case PhantomKind::Fractal: return make_fractal(spec);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown phantom kind");
}

}  // namespace hkst
