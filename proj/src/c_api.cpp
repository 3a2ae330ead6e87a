#include "hkst/hkst.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "hkst/digest.hpp"
#include "hkst/enhance.hpp"
#include "hkst/error.hpp"
#include "hkst/image.hpp"
#include "hkst/metrics.hpp"
#include "hkst/phantom.hpp"
#include "hkst/pipeline.hpp"
#include "hkst/report_json.hpp"
#include "hkst/stransform.hpp"

struct hkst_image {
  hkst::GrayImage value;
};

struct hkst_signal {
  hkst::Signal value;
};

struct hkst_spectrum {
  hkst::STSpectrum value;
};

namespace {

thread_local std::string g_last_error;

hkst_status status_of(const hkst::Error& e) {
  if (const auto* pgm = dynamic_cast<const hkst::PgmError*>(&e)) {
    switch (pgm->fault()) {
      case hkst::PgmFault::MalformedHeader: return HKST_ERR_PGM_HEADER;
      case hkst::PgmFault::UnsupportedMaxval: return HKST_ERR_PGM_MAXVAL;
      case hkst::PgmFault::TruncatedPayload: return HKST_ERR_PGM_TRUNCATED;
    }
  }
  switch (e.code()) {
    case hkst::ErrorCode::InvalidArgument: return HKST_ERR_INVALID_ARGUMENT;
    case hkst::ErrorCode::Io: return HKST_ERR_IO;
    case hkst::ErrorCode::Format: return HKST_ERR_FORMAT;
    case hkst::ErrorCode::ShapeMismatch: return HKST_ERR_SHAPE_MISMATCH;
    case hkst::ErrorCode::SizeLimit: return HKST_ERR_SIZE_LIMIT;
    case hkst::ErrorCode::Numeric: return HKST_ERR_NUMERIC;
  }
  return HKST_ERR_INTERNAL;
}

template <typename Fn>
hkst_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    fn();
    return HKST_OK;
  } catch (const hkst::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HKST_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HKST_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw hkst::Error(hkst::ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hkst::BetaNormalization beta_of(hkst_beta_normalization b) {
  switch (b) {
    case HKST_BETA_SIGMA: return hkst::BetaNormalization::Sigma;
    case HKST_BETA_SIGMA6: return hkst::BetaNormalization::Sigma6;
  }
  throw hkst::Error(hkst::ErrorCode::InvalidArgument, "unknown beta normalization");
}

hkst::Enhancement enhancement_of(hkst_enhancement e) {
  switch (e) {
    case HKST_ENHANCE_HKMDHE: return hkst::Enhancement::Hkmdhe;
    case HKST_ENHANCE_BHE: return hkst::Enhancement::Bhe;
    case HKST_ENHANCE_GLOBAL: return hkst::Enhancement::Global;
    case HKST_ENHANCE_NONE: return hkst::Enhancement::None;
  }
  throw hkst::Error(hkst::ErrorCode::InvalidArgument, "unknown enhancement");
}

}  // namespace

extern "C" {

const char* hkst_version(void) { return "0.1.0"; }

const char* hkst_last_error(void) { return g_last_error.c_str(); }

void hkst_string_free(char* str) { std::free(str); }

void hkst_bytes_free(uint8_t* bytes) { std::free(bytes); }

// --- images ----------------------------------------------------------------

hkst_status hkst_image_create(uint32_t width, uint32_t height, const uint8_t* pixels,
                              hkst_image** out) {
  return guarded([&] {
    require(out != nullptr && pixels != nullptr, "null argument");
    std::vector<std::uint8_t> px(pixels, pixels + static_cast<std::size_t>(width) * height);
    *out = new hkst_image{hkst::GrayImage(width, height, std::move(px))};
  });
}

hkst_status hkst_image_decode_pgm(const uint8_t* data, size_t size, hkst_image** out) {
  return guarded([&] {
    require(out != nullptr && (data != nullptr || size == 0), "null argument");
    *out = new hkst_image{hkst::read_pgm(std::span(data, size))};
  });
}

hkst_status hkst_image_load_pgm(const char* path, hkst_image** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = new hkst_image{hkst::load_pgm(path)};
  });
}

hkst_status hkst_image_encode_pgm(const hkst_image* image, uint8_t** data, size_t* size) {
  return guarded([&] {
    require(image != nullptr && data != nullptr && size != nullptr, "null argument");
    const auto bytes = hkst::write_pgm(image->value);
    auto* buf = static_cast<uint8_t*>(std::malloc(bytes.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *data = buf;
    *size = bytes.size();
  });
}

hkst_status hkst_image_save_pgm(const hkst_image* image, const char* path) {
  return guarded([&] {
    require(image != nullptr && path != nullptr, "null argument");
    hkst::save_pgm(image->value, path);
  });
}

uint32_t hkst_image_width(const hkst_image* image) {
  return image ? static_cast<uint32_t>(image->value.width()) : 0;
}

uint32_t hkst_image_height(const hkst_image* image) {
  return image ? static_cast<uint32_t>(image->value.height()) : 0;
}

const uint8_t* hkst_image_pixels(const hkst_image* image) {
  return image ? image->value.pixels().data() : nullptr;
}

void hkst_image_free(hkst_image* image) { delete image; }

// --- signals and spectra ---------------------------------------------------

hkst_status hkst_signal_create(const double* samples, size_t length, hkst_signal** out) {
  return guarded([&] {
    require(out != nullptr && samples != nullptr, "null argument");
    *out = new hkst_signal{hkst::Signal(std::vector<double>(samples, samples + length))};
  });
}

hkst_status hkst_signal_load_csv(const char* path, hkst_signal** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = new hkst_signal{hkst::load_signal_csv(path)};
  });
}

size_t hkst_signal_length(const hkst_signal* signal) { return signal ? signal->value.size() : 0; }

const double* hkst_signal_samples(const hkst_signal* signal) {
  return signal ? signal->value.samples().data() : nullptr;
}

void hkst_signal_free(hkst_signal* signal) { delete signal; }

hkst_status hkst_st_forward(const hkst_signal* signal, int mean_removal, hkst_spectrum** out) {
  return guarded([&] {
    require(signal != nullptr && out != nullptr, "null argument");
    const auto& x = signal->value;
    *out = new hkst_spectrum{hkst::st_forward(mean_removal ? x.without_mean() : x)};
  });
}

hkst_status hkst_st_inverse(const hkst_spectrum* spectrum, hkst_signal** out) {
  return guarded([&] {
    require(spectrum != nullptr && out != nullptr, "null argument");
    *out = new hkst_signal{hkst::st_inverse(spectrum->value)};
  });
}

size_t hkst_spectrum_size(const hkst_spectrum* spectrum) {
  return spectrum ? spectrum->value.size() : 0;
}

hkst_status hkst_spectrum_value(const hkst_spectrum* spectrum, size_t tau, size_t voice, double* re,
                                double* im) {
  return guarded([&] {
    require(spectrum != nullptr && re != nullptr && im != nullptr, "null argument");
    require(tau < spectrum->value.size() && voice < spectrum->value.size(), "index out of range");
    const auto c = spectrum->value.at(tau, voice);
    *re = c.real();
    *im = c.imag();
  });
}

hkst_status hkst_spectrum_save_csv(const hkst_spectrum* spectrum, const char* path) {
  return guarded([&] {
    require(spectrum != nullptr && path != nullptr, "null argument");
    hkst::write_text_file(path, hkst::format_spectrum_csv(spectrum->value));
  });
}

void hkst_spectrum_free(hkst_spectrum* spectrum) { delete spectrum; }

// --- enhancement and metrics -----------------------------------------------

hkst_status hkst_enhance(const hkst_image* input, hkst_enhancement method, hkst_beta_normalization beta,
                         hkst_image** output, char** report_json) {
  return guarded([&] {
    require(input != nullptr && output != nullptr && report_json != nullptr, "null argument");
    const auto norm = beta_of(beta);
    const auto& image = input->value;
    hkst::Equalized eq = [&]() -> hkst::Equalized {
      switch (enhancement_of(method)) {
        case hkst::Enhancement::Hkmdhe: {
          auto r = hkst::equalize_hkmdhe(image, norm);
          return {std::move(r.image), r.map, std::move(r.warnings)};
        }
        case hkst::Enhancement::Bhe: return hkst::equalize_bhe(image);
        case hkst::Enhancement::Global: return hkst::equalize_global(image);
        case hkst::Enhancement::None: break;
      }
      throw hkst::Error(hkst::ErrorCode::InvalidArgument, "enhancement method `none` is not an equalizer");
    }();
    nlohmann::json report{{"method", hkst::to_string(enhancement_of(method))},
                          {"beta_normalization", hkst::to_string(norm)},
                          {"quality", hkst::to_json(hkst::assess_quality(image, eq.image, norm))},
                          {"moments", hkst::to_json(hkst::compute_moments(image, norm))},
                          {"transfer_map", hkst::to_json(eq.map)},
                          {"split_point", eq.map.split_point ? nlohmann::json(*eq.map.split_point)
                                                             : nlohmann::json(nullptr)},
                          {"warnings", eq.warnings}};
    auto result = std::make_unique<hkst_image>(hkst_image{std::move(eq.image)});
    *report_json = copy_string(hkst::dump_report(report));
    *output = result.release();
  });
}

hkst_status hkst_metrics(const hkst_image* reference, const hkst_image* test, hkst_beta_normalization beta,
                         char** report_json) {
  return guarded([&] {
    require(reference != nullptr && test != nullptr && report_json != nullptr, "null argument");
    const auto q = hkst::assess_quality(reference->value, test->value, beta_of(beta));
    *report_json = copy_string(hkst::dump_report(hkst::to_json(q)));
  });
}

// --- pipeline --------------------------------------------------------------

void hkst_pipeline_config_default(hkst_pipeline_config* config) {
  if (config == nullptr) return;
  config->unfold_mode = HKST_UNFOLD_ROWS;
  config->mean_removal = 1;
  config->enhancement = HKST_ENHANCE_HKMDHE;
  config->beta_normalization = HKST_BETA_SIGMA;
}

hkst_status hkst_analyze(const hkst_image* image, const hkst_pipeline_config* config,
                         const char* spectrum_csv_path, char** report_json) {
  return guarded([&] {
    require(image != nullptr && config != nullptr && report_json != nullptr, "null argument");
    hkst::PipelineConfig cfg;
    switch (config->unfold_mode) {
      case HKST_UNFOLD_ROWS: cfg.unfold_mode = hkst::UnfoldMode::Rows; break;
      case HKST_UNFOLD_RASTER: cfg.unfold_mode = hkst::UnfoldMode::Raster; break;
      default: require(false, "unknown unfold mode");
    }
    cfg.mean_removal = config->mean_removal != 0;
    cfg.enhancement = enhancement_of(config->enhancement);
    cfg.beta_normalization = beta_of(config->beta_normalization);
    const auto result = hkst::run_pipeline(image->value, cfg);
    if (spectrum_csv_path != nullptr) {
      hkst::write_text_file(spectrum_csv_path, hkst::format_spectrum_csv(result.aggregate));
    }
    *report_json = copy_string(hkst::dump_report(hkst::to_json(result.report)));
  });
}

hkst_status hkst_compare_reports(const char* const* labels, const char* const* report_jsons, size_t count,
                                 char** summary_json) {
  return guarded([&] {
    require(summary_json != nullptr && (count == 0 || (labels != nullptr && report_jsons != nullptr)),
            "null argument");
    std::vector<hkst::LabeledReport> reports;
    for (size_t i = 0; i < count; ++i) {
      require(labels[i] != nullptr && report_jsons[i] != nullptr, "null argument");
      const auto parsed = nlohmann::json::parse(report_jsons[i], nullptr, false);
      if (parsed.is_discarded()) {
        throw hkst::Error(hkst::ErrorCode::Format, std::string("report for `") + labels[i] + "` is not JSON");
      }
      reports.push_back({labels[i], hkst::pipeline_report_from_json(parsed)});
    }
    *summary_json = copy_string(hkst::dump_report(hkst::to_json(hkst::compare_grades(reports))));
  });
}

// --- phantoms and digests --------------------------------------------------

void hkst_phantom_spec_default(hkst_phantom_spec* spec) {
  if (spec == nullptr) return;
  const hkst::PhantomSpec d;
  spec->kind = HKST_PHANTOM_GRATING;
  spec->width = static_cast<uint32_t>(d.width);
  spec->height = static_cast<uint32_t>(d.height);
  spec->period = static_cast<uint32_t>(d.period);
  spec->amplitude = d.amplitude;
  spec->offset = d.offset;
  spec->hurst = d.hurst;
  spec->seed = d.seed;
}

hkst_status hkst_phantom(const hkst_phantom_spec* spec, hkst_image** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    hkst::PhantomSpec s;
    switch (spec->kind) {
      case HKST_PHANTOM_GRATING: s.kind = hkst::PhantomKind::Grating; break;
      case HKST_PHANTOM_TWO_LEVEL: s.kind = hkst::PhantomKind::TwoLevel; break;
      case HKST_PHANTOM_FRACTAL: s.kind = hkst::PhantomKind::Fractal; break;
      default: require(false, "unknown phantom kind");
    }
    s.width = spec->width;
    s.height = spec->height;
    s.period = spec->period;
    s.amplitude = spec->amplitude;
    s.offset = spec->offset;
    s.hurst = spec->hurst;
    s.seed = spec->seed;
    *out = new hkst_image{hkst::make_phantom(s)};
  });
}

hkst_status hkst_sha256_file(const char* path, char** hex) {
  return guarded([&] {
    require(path != nullptr && hex != nullptr, "null argument");
    *hex = copy_string(hkst::sha256_file_hex(path));
  });
}

}  // extern "C"
