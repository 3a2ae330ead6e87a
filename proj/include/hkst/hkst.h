/*
 * hkst C API.
 *
 * Opaque handles own their data; release each with the matching *_free
 * function. Every fallible call returns an hkst_status; on failure the
 * message is available from hkst_last_error() on the calling thread until
 * the next call into the library from that thread. Strings and byte buffers
 * handed out by the library are released with hkst_string_free /
 * hkst_bytes_free.
 */
#ifndef HKST_H
#define HKST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HKST_BUILDING_LIBRARY)
#    define HKST_API __declspec(dllexport)
#  else
#    define HKST_API __declspec(dllimport)
#  endif
#else
#  define HKST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hkst_status {
  HKST_OK = 0,
  HKST_ERR_INVALID_ARGUMENT = 1,
  HKST_ERR_IO = 2,
  HKST_ERR_FORMAT = 3,          /* malformed CSV or JSON input */
  HKST_ERR_PGM_HEADER = 4,
  HKST_ERR_PGM_MAXVAL = 5,
  HKST_ERR_PGM_TRUNCATED = 6,
  HKST_ERR_SHAPE_MISMATCH = 7,
  HKST_ERR_SIZE_LIMIT = 8,
  HKST_ERR_NUMERIC = 9,
  HKST_ERR_INTERNAL = 10
} hkst_status;

typedef enum hkst_enhancement {
  HKST_ENHANCE_HKMDHE = 0,
  HKST_ENHANCE_BHE = 1,
  HKST_ENHANCE_GLOBAL = 2,
  HKST_ENHANCE_NONE = 3
} hkst_enhancement;

typedef enum hkst_beta_normalization {
  HKST_BETA_SIGMA = 0,
  HKST_BETA_SIGMA6 = 1
} hkst_beta_normalization;

typedef enum hkst_unfold_mode {
  HKST_UNFOLD_ROWS = 0,
  HKST_UNFOLD_RASTER = 1
} hkst_unfold_mode;

typedef enum hkst_phantom_kind {
  HKST_PHANTOM_GRATING = 0,
  HKST_PHANTOM_TWO_LEVEL = 1,
  HKST_PHANTOM_FRACTAL = 2
} hkst_phantom_kind;

typedef struct hkst_pipeline_config {
  hkst_unfold_mode unfold_mode;
  int mean_removal;
  hkst_enhancement enhancement;
  hkst_beta_normalization beta_normalization;
} hkst_pipeline_config;

typedef struct hkst_phantom_spec {
  hkst_phantom_kind kind;
  uint32_t width;
  uint32_t height;
  uint32_t period;
  int32_t amplitude;
  int32_t offset;
  double hurst;
  uint64_t seed;
} hkst_phantom_spec;

typedef struct hkst_image hkst_image;
typedef struct hkst_signal hkst_signal;
typedef struct hkst_spectrum hkst_spectrum;

HKST_API const char* hkst_version(void);
HKST_API const char* hkst_last_error(void);
HKST_API void hkst_string_free(char* str);
HKST_API void hkst_bytes_free(uint8_t* bytes);

/* Images */
HKST_API hkst_status hkst_image_create(uint32_t width, uint32_t height, const uint8_t* pixels,
                                       hkst_image** out);
HKST_API hkst_status hkst_image_decode_pgm(const uint8_t* data, size_t size, hkst_image** out);
HKST_API hkst_status hkst_image_load_pgm(const char* path, hkst_image** out);
HKST_API hkst_status hkst_image_encode_pgm(const hkst_image* image, uint8_t** data, size_t* size);
HKST_API hkst_status hkst_image_save_pgm(const hkst_image* image, const char* path);
HKST_API uint32_t hkst_image_width(const hkst_image* image);
HKST_API uint32_t hkst_image_height(const hkst_image* image);
HKST_API const uint8_t* hkst_image_pixels(const hkst_image* image);
HKST_API void hkst_image_free(hkst_image* image);

/* Signals */
HKST_API hkst_status hkst_signal_create(const double* samples, size_t length, hkst_signal** out);
HKST_API hkst_status hkst_signal_load_csv(const char* path, hkst_signal** out);
HKST_API size_t hkst_signal_length(const hkst_signal* signal);
HKST_API const double* hkst_signal_samples(const hkst_signal* signal);
HKST_API void hkst_signal_free(hkst_signal* signal);

/* S-transform */
HKST_API hkst_status hkst_st_forward(const hkst_signal* signal, int mean_removal, hkst_spectrum** out);
HKST_API hkst_status hkst_st_inverse(const hkst_spectrum* spectrum, hkst_signal** out);
HKST_API size_t hkst_spectrum_size(const hkst_spectrum* spectrum);
HKST_API hkst_status hkst_spectrum_value(const hkst_spectrum* spectrum, size_t tau, size_t voice,
                                         double* re, double* im);
HKST_API hkst_status hkst_spectrum_save_csv(const hkst_spectrum* spectrum, const char* path);
HKST_API void hkst_spectrum_free(hkst_spectrum* spectrum);

/*
 * Enhancement. `report_json` receives QualityReport (input vs output),
 * MomentSummary of the input, TransferMap and warnings. HKST_ENHANCE_NONE is
 * rejected.
 */
HKST_API hkst_status hkst_enhance(const hkst_image* input, hkst_enhancement method,
                                  hkst_beta_normalization beta, hkst_image** output,
                                  char** report_json);

/* QualityReport JSON for a reference/test pair. */
HKST_API hkst_status hkst_metrics(const hkst_image* reference, const hkst_image* test,
                                  hkst_beta_normalization beta, char** report_json);

HKST_API void hkst_pipeline_config_default(hkst_pipeline_config* config);

/*
 * Full analysis; PipelineReport JSON. When `spectrum_csv_path` is non-null
 * the aggregated amplitude spectrum is written there (re = abs, im = 0).
 */
HKST_API hkst_status hkst_analyze(const hkst_image* image, const hkst_pipeline_config* config,
                                  const char* spectrum_csv_path, char** report_json);

/* Ranks PipelineReport JSON documents by peak amplitude. */
HKST_API hkst_status hkst_compare_reports(const char* const* labels, const char* const* report_jsons,
                                          size_t count, char** summary_json);

HKST_API void hkst_phantom_spec_default(hkst_phantom_spec* spec);
HKST_API hkst_status hkst_phantom(const hkst_phantom_spec* spec, hkst_image** out);

/* Lower-case hex SHA-256 of a file's bytes. */
HKST_API hkst_status hkst_sha256_file(const char* path, char** hex);

#ifdef __cplusplus
}
#endif

#endif /* HKST_H */
