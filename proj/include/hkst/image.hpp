#ifndef HKST_IMAGE_HPP
#define HKST_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hkst {

/// 8-bit grayscale raster, row-major. Width maps to columns, height to rows.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  static GrayImage filled(std::size_t width, std::size_t height, std::uint8_t value);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels_.at(row * width_ + col); }
  std::span<const std::uint8_t> row(std::size_t r) const;

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Real-valued 1-D sequence with at least two finite samples.
class Signal {
 public:
  explicit Signal(std::vector<double> samples);

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  double mean() const noexcept;
  Signal without_mean() const;

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> samples_;
};

// Binary PGM (P5), maxval 255 only.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& image);
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

Signal unfold_raster(const GrayImage& image);
std::vector<Signal> unfold_rows(const GrayImage& image);

// Signal CSV: header `index,value`, one row per sample.
Signal parse_signal_csv(std::string_view text);
std::string format_signal_csv(const Signal& signal);
Signal load_signal_csv(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double value);

}  // namespace hkst

#endif  // HKST_IMAGE_HPP
