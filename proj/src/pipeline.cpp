#include "hkst/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "hkst/enhance.hpp"
#include "hkst/error.hpp"

namespace hkst {

std::string_view to_string(UnfoldMode mode) noexcept {
  return mode == UnfoldMode::Rows ? "rows" : "raster";
}

std::string_view to_string(Enhancement enhancement) noexcept {
  switch (enhancement) {
    case Enhancement::Hkmdhe: return "hkmdhe";
    case Enhancement::Bhe: return "bhe";
    case Enhancement::Global: return "global";
    case Enhancement::None: return "none";
  }
  return "none";
}

UnfoldMode parse_unfold_mode(std::string_view text) {
  if (text == "rows") return UnfoldMode::Rows;
  if (text == "raster") return UnfoldMode::Raster;
  throw Error(ErrorCode::InvalidArgument, "unknown unfold mode: " + std::string(text));
}

Enhancement parse_enhancement(std::string_view text) {
  if (text == "hkmdhe") return Enhancement::Hkmdhe;
  if (text == "bhe") return Enhancement::Bhe;
  if (text == "global") return Enhancement::Global;
  if (text == "none") return Enhancement::None;
  throw Error(ErrorCode::InvalidArgument, "unknown enhancement: " + std::string(text));
}

namespace {

struct Enhanced {
  GrayImage image;
  std::vector<std::string> warnings;
};

Enhanced enhance(const GrayImage& image, const PipelineConfig& config) {
  switch (config.enhancement) {
    case Enhancement::Hkmdhe: {
      auto eq = equalize_hkmdhe(image, config.beta_normalization);
      return {std::move(eq.image), std::move(eq.warnings)};
    }
    case Enhancement::Bhe: {
      auto eq = equalize_bhe(image);
      return {std::move(eq.image), std::move(eq.warnings)};
    }
    case Enhancement::Global: {
      auto eq = equalize_global(image);
      return {std::move(eq.image), std::move(eq.warnings)};
    }
    case Enhancement::None: break;
  }
  return {image, {}};
}

AmplitudeSpectrum signal_amplitude(const std::vector<double>& intensities, bool mean_removal) {
  std::vector<double> normalized(intensities.size());
  std::transform(intensities.begin(), intensities.end(), normalized.begin(),
                 [](double v) { return v / 255.0; });
  Signal signal(std::move(normalized));
  return amplitude(st_forward(mean_removal ? signal.without_mean() : signal));
}

double peak_at(const AmplitudeSpectrum& a, std::size_t voice) {
  double peak = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) peak = std::max(peak, a.at(j, voice));
  return peak;
}

}  // namespace

PipelineResult run_pipeline(const GrayImage& image, const PipelineConfig& config) {
  if (config.unfold_mode == UnfoldMode::Rows && image.width() < 4) {
    throw Error(ErrorCode::InvalidArgument, "rows mode needs image width >= 4");
  }
  if (config.unfold_mode == UnfoldMode::Raster && image.size() > kRasterPixelLimit) {
    throw Error(ErrorCode::SizeLimit, "raster mode size limit: " + std::to_string(image.size()) +
                                          " pixels > " + std::to_string(kRasterPixelLimit));
  }

  auto enhanced = enhance(image, config);
  PipelineReport report;
  report.config = config;
  report.moments = compute_moments(image, config.beta_normalization);
  report.quality = assess_quality(image, enhanced.image, config.beta_normalization);
  report.warnings = std::move(enhanced.warnings);

  // Each record is one row (rows mode) or the whole unfolded raster. Only the
  // running sum and each record's per-voice temporal maxima are kept.
  std::vector<std::vector<double>> records;
  if (config.unfold_mode == UnfoldMode::Rows) {
    for (const auto& row : unfold_rows(enhanced.image)) {
      records.emplace_back(row.samples().begin(), row.samples().end());
    }
  } else {
    const auto raster = unfold_raster(enhanced.image);
    records.emplace_back(raster.samples().begin(), raster.samples().end());
  }

  const std::size_t n = records.front().size();
  AmplitudeSpectrum aggregate(n);
  std::vector<std::vector<double>> record_peaks;
  record_peaks.reserve(records.size());
  for (const auto& record : records) {
    const auto a = signal_amplitude(record, config.mean_removal);
    std::vector<double> peaks(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t v = 0; v < n; ++v) {
        aggregate.at(j, v) += a.at(j, v);
        peaks[v] = std::max(peaks[v], a.at(j, v));
      }
    }
    record_peaks.push_back(std::move(peaks));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < n; ++v) aggregate.at(j, v) /= static_cast<double>(records.size());
  }

  report.per_voice_mean_amplitude.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += aggregate.at(j, v);
    report.per_voice_mean_amplitude[v] = acc / static_cast<double>(n);
  }

  const auto px = enhanced.image.pixels();
  const bool constant = std::all_of(px.begin(), px.end(), [&](auto p) { return p == px.front(); });
  if (constant) {
    report.warnings.emplace_back(kDegenerateWarning);
    return {std::move(report), std::move(aggregate)};
  }

  // Positive frequencies only; the upper half mirrors them for real input.
  std::size_t dominant = 1;
  for (std::size_t v = 2; v <= n / 2; ++v) {
    if (report.per_voice_mean_amplitude[v] > report.per_voice_mean_amplitude[dominant]) dominant = v;
  }
  report.dominant_voice = dominant;
  report.peak_amplitude = peak_at(aggregate, dominant);

  std::vector<double> row_peaks;
  row_peaks.reserve(record_peaks.size());
  for (const auto& peaks : record_peaks) row_peaks.push_back(peaks[dominant]);
  double mean = 0.0;
  for (double p : row_peaks) mean += p;
  mean /= static_cast<double>(row_peaks.size());
  double var = 0.0;
  for (double p : row_peaks) var += (p - mean) * (p - mean);
  report.per_row_peak_mean = mean;
  report.per_row_peak_std = std::sqrt(var / static_cast<double>(row_peaks.size()));
  return {std::move(report), std::move(aggregate)};
}

GradeComparison compare_grades(std::span<const LabeledReport> reports) {
  if (reports.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "compare_grades needs at least 2 reports");
  }
  GradeComparison out;
  for (const auto& r : reports) {
    out.ranked.push_back({r.label, r.report.peak_amplitude, r.report.dominant_voice});
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const GradeEntry& a, const GradeEntry& b) {
    if (a.peak_amplitude != b.peak_amplitude) return a.peak_amplitude < b.peak_amplitude;
    return a.label < b.label;
  });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      const double a = reports[i].report.peak_amplitude;
      const double b = reports[j].report.peak_amplitude;
      out.pairwise.push_back({reports[i].label, reports[j].label, a < b ? '<' : (a > b ? '>' : '=')});
    }
  }
  return out;
}

}  // namespace hkst
