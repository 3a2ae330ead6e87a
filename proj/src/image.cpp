#include "hkst/image.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "hkst/error.hpp"

namespace hkst {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  }
  if (pixels_.size() != width_ * height_) {
    throw Error(ErrorCode::InvalidArgument,
                "pixel count " + std::to_string(pixels_.size()) + " does not match " +
                    std::to_string(width_) + "x" + std::to_string(height_));
  }
}

GrayImage GrayImage::filled(std::size_t width, std::size_t height, std::uint8_t value) {
  return GrayImage(width, height, std::vector<std::uint8_t>(width * height, value));
}

std::span<const std::uint8_t> GrayImage::row(std::size_t r) const {
  if (r >= height_) throw Error(ErrorCode::InvalidArgument, "row index out of range");
  return std::span<const std::uint8_t>(pixels_).subspan(r * width_, width_);
}

Signal::Signal(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "signal needs at least 2 samples");
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "signal sample is not finite");
  }
}

double Signal::mean() const noexcept {
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

Signal Signal::without_mean() const {
  const double m = mean();
  std::vector<double> out(samples_);
  for (double& v : out) v -= m;
  return Signal(std::move(out));
}

// --- PGM -------------------------------------------------------------------

namespace {

class PgmCursor {
 public:
  explicit PgmCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      if (pos_ - start >= 9) {
        throw PgmError(PgmFault::MalformedHeader, start, std::string(field) + " is too large");
      }
      value = value * 10 + (bytes_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) {
      throw PgmError(PgmFault::MalformedHeader, start, std::string("expected ") + field);
    }
    return value;
  }

  std::uint8_t byte_at(std::size_t i) const { return bytes_[i]; }
  std::size_t size() const noexcept { return bytes_.size(); }
  void advance() noexcept { ++pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw PgmError(PgmFault::MalformedHeader, 0, "missing P5 magic");
  }
  PgmCursor cur(bytes);
  cur.advance();
  cur.advance();
  if (cur.offset() >= cur.size() || !std::isspace(cur.byte_at(cur.offset()))) {
    throw PgmError(PgmFault::MalformedHeader, cur.offset(), "expected whitespace after magic");
  }
  const std::size_t width = cur.number("width");
  const std::size_t height = cur.number("height");
  if (width == 0 || height == 0) {
    throw PgmError(PgmFault::MalformedHeader, cur.offset(), "zero image dimension");
  }
  cur.skip_space_and_comments();
  const std::size_t maxval_offset = cur.offset();
  const std::size_t maxval = cur.number("maxval");
  if (maxval != 255) {
    throw PgmError(PgmFault::UnsupportedMaxval, maxval_offset,
                   "unsupported maxval " + std::to_string(maxval));
  }
  if (cur.offset() >= cur.size() || !std::isspace(cur.byte_at(cur.offset()))) {
    throw PgmError(PgmFault::MalformedHeader, cur.offset(), "expected whitespace after maxval");
  }
  cur.advance();

  const std::size_t start = cur.offset();
  const std::size_t needed = width * height;
  const std::size_t available = bytes.size() - start;
  if (available < needed) {
    throw PgmError(PgmFault::TruncatedPayload, bytes.size(),
                   "truncated payload: expected " + std::to_string(needed) + " bytes, got " +
                       std::to_string(available));
  }
  auto payload = bytes.subspan(start, needed);
  return GrayImage(width, height, std::vector<std::uint8_t>(payload.begin(), payload.end()));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

GrayImage load_pgm(const std::filesystem::path& path) { return read_pgm(read_file_bytes(path)); }

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  write_file_bytes(path, write_pgm(image));
}

// --- unfolding -------------------------------------------------------------

Signal unfold_raster(const GrayImage& image) {
  const auto px = image.pixels();
  return Signal(std::vector<double>(px.begin(), px.end()));
}

std::vector<Signal> unfold_rows(const GrayImage& image) {
  if (image.width() < 2) {
    throw Error(ErrorCode::InvalidArgument, "row too short for spectral analysis");
  }
  std::vector<Signal> rows;
  rows.reserve(image.height());
  for (std::size_t r = 0; r < image.height(); ++r) {
    const auto px = image.row(r);
    rows.emplace_back(std::vector<double>(px.begin(), px.end()));
  }
  return rows;
}

// --- signal CSV ------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void csv_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Format, "signal CSV line " + std::to_string(line) + ": " + what);
}

}  // namespace

Signal parse_signal_csv(std::string_view text) {
  std::vector<double> samples;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "index,value") csv_error(line_no, "expected header `index,value`");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) csv_error(line_no, "expected `index,value`");
    const auto idx_text = trim(line.substr(0, comma));
    const auto val_text = trim(line.substr(comma + 1));
    std::size_t index = 0;
    auto [iend, iec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
    if (iec != std::errc{} || iend != idx_text.data() + idx_text.size()) {
      csv_error(line_no, "bad index");
    }
    if (index != samples.size()) csv_error(line_no, "index out of sequence");
    double value = 0.0;
    auto [vend, vec] = std::from_chars(val_text.data(), val_text.data() + val_text.size(), value);
    if (vec != std::errc{} || vend != val_text.data() + val_text.size() || !std::isfinite(value)) {
      csv_error(line_no, "bad value");
    }
    samples.push_back(value);
  }
  if (!header_seen) throw Error(ErrorCode::Format, "signal CSV is empty");
  if (samples.size() < 2) throw Error(ErrorCode::Format, "signal CSV needs at least 2 samples");
  return Signal(std::move(samples));
}

std::string format_signal_csv(const Signal& signal) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_real(signal[i]);
    out += '\n';
  }
  return out;
}

Signal load_signal_csv(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return parse_signal_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

// --- files -----------------------------------------------------------------

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
  return buf;
}

}  // namespace hkst
