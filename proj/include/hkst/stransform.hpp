#ifndef HKST_STRANSFORM_HPP
#define HKST_STRANSFORM_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hkst/image.hpp"

namespace hkst {

using Complex = std::complex<double>;

/// Discrete S-transform S[tau, voice], N x N, stored row-major by tau.
/// Voice n is n cycles per record; voices above N/2 are the negative
/// frequencies n - N.
class STSpectrum {
 public:
  STSpectrum(std::size_t n, std::vector<Complex> values);

  std::size_t size() const noexcept { return n_; }
  const Complex& at(std::size_t tau, std::size_t voice) const { return values_[tau * n_ + voice]; }
  Complex& at(std::size_t tau, std::size_t voice) { return values_[tau * n_ + voice]; }
  std::span<const Complex> values() const noexcept { return values_; }

 private:
  std::size_t n_;
  std::vector<Complex> values_;
};

class AmplitudeSpectrum {
 public:
  explicit AmplitudeSpectrum(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t tau, std::size_t voice) const { return values_[tau * n_ + voice]; }
  double& at(std::size_t tau, std::size_t voice) { return values_[tau * n_ + voice]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// Voice index mapped into the centered alias range [-floor(N/2), ceil(N/2)).
long signed_voice(std::size_t voice, std::size_t n) noexcept;

/// FFT-based transform. With X[n] = (1/N) sum_k x[k] e^{-i 2 pi n k / N},
/// S[j, n] = sum_m X[(m + n) mod N] e^{-2 pi^2 m^2 / n^2} e^{i 2 pi m j / N}
/// over the centered m range, and S[j, 0] = mean(x).
STSpectrum st_forward(const Signal& signal);

/// Term-by-term evaluation of the st_forward formula. O(N^3); for N <= 256.
STSpectrum st_direct_freq(const Signal& signal);

/// Time-domain evaluation with the Gaussian-times-phase kernel
/// (f / sqrt(2 pi)) e^{-d^2 f^2 / 2} e^{-i 2 pi n k / N}, f = |n| / N, d the
/// circular distance between tau and k. Agrees with st_forward only up to
/// Gaussian truncation and aliasing.
STSpectrum st_direct_time(const Signal& signal);

/// Inverse through the time marginal. Throws ErrorCode::Numeric
/// ("non-physical spectrum") if voice 0 is not constant and real, or if the
/// reconstruction has a non-negligible imaginary part.
Signal st_inverse(const STSpectrum& spectrum);

AmplitudeSpectrum amplitude(const STSpectrum& spectrum);

/// CSV with header `tau,voice,re,im,abs`, tau-major.
std::string format_spectrum_csv(const STSpectrum& spectrum);
std::string format_spectrum_csv(const AmplitudeSpectrum& spectrum);

}  // namespace hkst

#endif  // HKST_STRANSFORM_HPP
