#ifndef HKST_PHANTOM_HPP
#define HKST_PHANTOM_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "hkst/image.hpp"

namespace hkst {

enum class PhantomKind { Grating, TwoLevel, Fractal };

std::string_view to_string(PhantomKind kind) noexcept;
PhantomKind parse_phantom_kind(std::string_view text);

struct PhantomSpec {
  PhantomKind kind = PhantomKind::Grating;
  std::size_t width = 64;
  std::size_t height = 64;
  std::size_t period = 8;   // grating, pixels per cycle
  int amplitude = 100;      // grating, [0, 127]
  int offset = 128;         // grating, [0, 255]
  double hurst = 0.5;       // fractal, (0, 1)
  std::uint64_t seed = 0;
};

/// pixel(i, j) = offset + round(amplitude * cos(2 pi j / period)).
GrayImage make_grating(const PhantomSpec& spec);

/// Each pixel is 255 when the top bit of the next SplitMix64 draw is set, else 0.
GrayImage make_two_level(const PhantomSpec& spec);

/// Spectral synthesis: for every frequency (row-major over the FFT grid) draw
/// a complex normal pair, scale by (kx^2 + ky^2)^{-(H+1)/2} (zero at DC),
/// take the real part of the unnormalized inverse 2-D DFT and rescale
/// affinely onto [0, 255]. Width and height must be powers of two.
GrayImage make_fractal(const PhantomSpec& spec);

GrayImage make_phantom(const PhantomSpec& spec);

}  // namespace hkst

#endif  // HKST_PHANTOM_HPP
