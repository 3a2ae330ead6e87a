#include "hkst/stransform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

#include "hkst/error.hpp"

namespace hkst {

STSpectrum::STSpectrum(std::size_t n, std::vector<Complex> values)
    : n_(n), values_(std::move(values)) {
  if (n_ < 2) throw Error(ErrorCode::InvalidArgument, "spectrum needs N >= 2");
  if (values_.size() != n_ * n_) {
    throw Error(ErrorCode::InvalidArgument, "spectrum values must be N x N");
  }
}

AmplitudeSpectrum::AmplitudeSpectrum(std::size_t n) : n_(n), values_(n * n, 0.0) {}

long signed_voice(std::size_t voice, std::size_t n) noexcept {
  const auto v = static_cast<long>(voice % n);
  const auto len = static_cast<long>(n);
  // Centered range [-floor(N/2), ceil(N/2)).
  return v < (len + 1) / 2 ? v : v - len;
}

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not thread-safe; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t n) : data_(fftw_alloc_complex(n)) {
    if (data_ == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* get() noexcept { return data_; }
  Complex* as_complex() noexcept { return reinterpret_cast<Complex*>(data_); }

 private:
  fftw_complex* data_;
};

class FftwPlan {
 public:
  FftwPlan(std::size_t n, FftwBuffer& in, FftwBuffer& out, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw Error(ErrorCode::Numeric, "FFTW planning failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  void execute() noexcept { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

// e^{-2 pi^2 m^2 / n^2} for the centered alias index m of bin k.
double voice_gaussian(std::size_t k, std::size_t voice, std::size_t n) {
  const double m = static_cast<double>(signed_voice(k, n));
  const double f = static_cast<double>(signed_voice(voice, n));
  return std::exp(-2.0 * kPi * kPi * m * m / (f * f));
}

// e^{i 2 pi r / N} for r = 0..N-1.
std::vector<Complex> unit_roots(std::size_t n) {
  std::vector<Complex> roots(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double a = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
    roots[r] = {std::cos(a), std::sin(a)};
  }
  return roots;
}

}  // namespace

STSpectrum st_forward(const Signal& signal) {
  const std::size_t n = signal.size();
  FftwBuffer in(n), out(n);
  FftwPlan forward(n, in, out, FFTW_FORWARD);
  FftwPlan backward(n, in, out, FFTW_BACKWARD);

  for (std::size_t k = 0; k < n; ++k) in.as_complex()[k] = signal[k];
  forward.execute();
  std::vector<Complex> spectrum(out.as_complex(), out.as_complex() + n);
  for (auto& c : spectrum) c /= static_cast<double>(n);

  std::vector<Complex> values(n * n);
  const double mean = signal.mean();
  for (std::size_t j = 0; j < n; ++j) values[j * n] = mean;

  for (std::size_t voice = 1; voice < n; ++voice) {
    Complex* b = in.as_complex();
    for (std::size_t k = 0; k < n; ++k) {
      b[k] = spectrum[(k + voice) % n] * voice_gaussian(k, voice, n);
    }
    backward.execute();
    const Complex* s = out.as_complex();
    for (std::size_t j = 0; j < n; ++j) values[j * n + voice] = s[j];
  }
  return STSpectrum(n, std::move(values));
}

STSpectrum st_direct_freq(const Signal& signal) {
  const std::size_t n = signal.size();
  const auto roots = unit_roots(n);

  std::vector<Complex> spectrum(n);
  for (std::size_t f = 0; f < n; ++f) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += signal[k] * std::conj(roots[(f * k) % n]);
    spectrum[f] = acc / static_cast<double>(n);
  }

  std::vector<Complex> values(n * n);
  const double mean = signal.mean();
  std::vector<Complex> weighted(n);
  for (std::size_t j = 0; j < n; ++j) values[j * n] = mean;
  for (std::size_t voice = 1; voice < n; ++voice) {
    for (std::size_t k = 0; k < n; ++k) {
      weighted[k] = spectrum[(k + voice) % n] * voice_gaussian(k, voice, n);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += weighted[k] * roots[(k * j) % n];
      values[j * n + voice] = acc;
    }
  }
  return STSpectrum(n, std::move(values));
}

STSpectrum st_direct_time(const Signal& signal) {
  const std::size_t n = signal.size();
  const auto roots = unit_roots(n);
  std::vector<Complex> values(n * n);
  const double mean = signal.mean();
  for (std::size_t j = 0; j < n; ++j) values[j * n] = mean;

  std::vector<double> window(n / 2 + 1);
  std::vector<Complex> modulated(n);
  for (std::size_t voice = 1; voice < n; ++voice) {
    const double f = std::abs(static_cast<double>(signed_voice(voice, n))) / static_cast<double>(n);
    for (std::size_t d = 0; d < window.size(); ++d) {
      const double dd = static_cast<double>(d);
      window[d] = f / std::sqrt(2.0 * kPi) * std::exp(-dd * dd * f * f / 2.0);
    }
    for (std::size_t k = 0; k < n; ++k) {
      modulated[k] = signal[k] * std::conj(roots[(voice * k) % n]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t d = j > k ? j - k : k - j;
        acc += modulated[k] * window[std::min(d, n - d)];
      }
      values[j * n + voice] = acc;
    }
  }
  return STSpectrum(n, std::move(values));
}

Signal st_inverse(const STSpectrum& spectrum) {
  const std::size_t n = spectrum.size();
  double scale = 1.0;
  for (const auto& c : spectrum.values()) scale = std::max(scale, std::abs(c));
  const double tol = 1e-9 * scale;

  const Complex dc = spectrum.at(0, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex& c = spectrum.at(j, 0);
    if (std::abs(c - dc) > tol || std::abs(c.imag()) > tol) {
      throw Error(ErrorCode::Numeric, "non-physical spectrum: voice 0 is not a real constant");
    }
  }

  FftwBuffer in(n), out(n);
  FftwPlan backward(n, in, out, FFTW_BACKWARD);
  for (std::size_t voice = 0; voice < n; ++voice) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += spectrum.at(j, voice);
    in.as_complex()[voice] = acc / static_cast<double>(n);
  }
  backward.execute();

  std::vector<double> samples(n);
  double residue = 0.0, peak = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    samples[k] = out.as_complex()[k].real();
    residue = std::max(residue, std::abs(out.as_complex()[k].imag()));
    peak = std::max(peak, std::abs(samples[k]));
  }
  if (residue > 1e-9 * peak) {
    throw Error(ErrorCode::Numeric, "non-physical spectrum: imaginary residue " +
                                        std::to_string(residue));
  }
  return Signal(std::move(samples));
}

AmplitudeSpectrum amplitude(const STSpectrum& spectrum) {
  AmplitudeSpectrum out(spectrum.size());
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    for (std::size_t v = 0; v < spectrum.size(); ++v) out.at(j, v) = std::abs(spectrum.at(j, v));
  }
  return out;
}

namespace {

template <typename ValueAt>
std::string spectrum_csv(std::size_t n, ValueAt value_at) {
  std::string out = "tau,voice,re,im,abs\n";
  out.reserve(out.size() + n * n * 64);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < n; ++v) {
      const Complex c = value_at(j, v);
      out += std::to_string(j) + ',' + std::to_string(v) + ',' + format_real(c.real()) + ',' +
             format_real(c.imag()) + ',' + format_real(std::abs(c)) + '\n';
    }
  }
  return out;
}

}  // namespace

std::string format_spectrum_csv(const STSpectrum& spectrum) {
  return spectrum_csv(spectrum.size(), [&](std::size_t j, std::size_t v) { return spectrum.at(j, v); });
}

std::string format_spectrum_csv(const AmplitudeSpectrum& spectrum) {
  return spectrum_csv(spectrum.size(),
                      [&](std::size_t j, std::size_t v) { return Complex(spectrum.at(j, v), 0.0); });
}

}  // namespace hkst
