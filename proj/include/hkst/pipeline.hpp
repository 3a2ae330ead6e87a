#ifndef HKST_PIPELINE_HPP
#define HKST_PIPELINE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hkst/image.hpp"
#include "hkst/metrics.hpp"
#include "hkst/stransform.hpp"

namespace hkst {

enum class UnfoldMode { Rows, Raster };
enum class Enhancement { Hkmdhe, Bhe, Global, None };

std::string_view to_string(UnfoldMode mode) noexcept;
std::string_view to_string(Enhancement enhancement) noexcept;
UnfoldMode parse_unfold_mode(std::string_view text);
Enhancement parse_enhancement(std::string_view text);

/// Raster mode keeps the full N x N spectrum of the unfolded image in memory.
inline constexpr std::size_t kRasterPixelLimit = 4096;

inline constexpr std::string_view kDegenerateWarning =
    "degenerate image: constant after enhancement, no dominant voice";

struct PipelineConfig {
  UnfoldMode unfold_mode = UnfoldMode::Rows;
  bool mean_removal = true;
  Enhancement enhancement = Enhancement::Hkmdhe;
  BetaNormalization beta_normalization = BetaNormalization::Sigma;
};

struct PipelineReport {
  std::optional<std::size_t> dominant_voice;
  double peak_amplitude = 0.0;
  std::vector<double> per_voice_mean_amplitude;
  double per_row_peak_mean = 0.0;
  double per_row_peak_std = 0.0;
  QualityReport quality;
  MomentSummary moments;
  PipelineConfig config;
  std::vector<std::string> warnings;
};

struct PipelineResult {
  PipelineReport report;
  AmplitudeSpectrum aggregate;  // entrywise mean of the per-row amplitudes
};

/// Enhance, unfold, transform and reduce to the dominant-voice statistics.
/// Signals are intensities / 255, optionally mean-removed, before the
/// transform. Rows mode averages the per-row amplitude matrices; the dominant
/// voice is the argmax over 1..N/2 of the time-mean amplitude (lowest voice
/// wins ties) and the peak is the temporal maximum at that voice.
PipelineResult run_pipeline(const GrayImage& image, const PipelineConfig& config = {});

inline PipelineReport analyze(const GrayImage& image, const PipelineConfig& config = {}) {
  return run_pipeline(image, config).report;
}

struct LabeledReport {
  std::string label;
  PipelineReport report;
};

struct GradeEntry {
  std::string label;
  double peak_amplitude = 0.0;
  std::optional<std::size_t> dominant_voice;
};

struct PairwiseOrder {
  std::string first;
  std::string second;
  char relation = '=';  // '<', '=' or '>' comparing first's peak to second's
};

struct GradeComparison {
  std::vector<GradeEntry> ranked;       // ascending peak, ties by label
  std::vector<PairwiseOrder> pairwise;  // every input pair, input order
};

GradeComparison compare_grades(std::span<const LabeledReport> reports);

}  // namespace hkst

#endif  // HKST_PIPELINE_HPP
