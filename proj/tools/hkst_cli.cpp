// hkst command-line front end. Talks to the library only through the C API.

#include <hkst/hkst.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes are a stable contract.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;
constexpr int kExitShape = 3;
constexpr int kExitSizeLimit = 4;
constexpr int kExitUsage = 64;

struct ImageDeleter {
  void operator()(hkst_image* p) const { hkst_image_free(p); }
};
struct SignalDeleter {
  void operator()(hkst_signal* p) const { hkst_signal_free(p); }
};
struct SpectrumDeleter {
  void operator()(hkst_spectrum* p) const { hkst_spectrum_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { hkst_string_free(p); }
};
using ImagePtr = std::unique_ptr<hkst_image, ImageDeleter>;
using SignalPtr = std::unique_ptr<hkst_signal, SignalDeleter>;
using SpectrumPtr = std::unique_ptr<hkst_spectrum, SpectrumDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

/// Carries a library failure out to main() with its exit code.
struct CommandFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(hkst_status status) {
  switch (status) {
    case HKST_OK: return kExitOk;
    case HKST_ERR_IO:
    case HKST_ERR_FORMAT:
    case HKST_ERR_PGM_HEADER:
    case HKST_ERR_PGM_MAXVAL:
    case HKST_ERR_PGM_TRUNCATED: return kExitIo;
    case HKST_ERR_SHAPE_MISMATCH: return kExitShape;
    case HKST_ERR_SIZE_LIMIT: return kExitSizeLimit;
    case HKST_ERR_INVALID_ARGUMENT: return kExitUsage;
    case HKST_ERR_NUMERIC:
    case HKST_ERR_INTERNAL: break;
  }
  return kExitFailure;
}

void check(hkst_status status) {
  if (status != HKST_OK) throw CommandFailure{exit_code_for(status), hkst_last_error()};
}

class Manifest {
 public:
  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const std::string& path) { outputs_.push_back(path); }

  void write(const std::string& path, int argc, char** argv) const {
    nlohmann::json j;
    j["tool_version"] = hkst_version();
    j["command_line"] = std::vector<std::string>(argv, argv + argc);
    j["inputs"] = nlohmann::json::array();
    for (const auto& in : inputs_) {
      char* hex = nullptr;
      check(hkst_sha256_file(in.c_str(), &hex));
      StringPtr owned(hex);
      j["inputs"].push_back({{"path", in}, {"sha256", owned.get()}});
    }
    j["outputs"] = outputs_;
    j["timestamp"] = utc_timestamp();
    write_text(path, j.dump(2) + "\n");
  }

  static void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CommandFailure{kExitIo, "cannot write " + path};
    out << text;
    if (!out) throw CommandFailure{kExitIo, "write failed: " + path};
  }

 private:
  static std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

ImagePtr load_image(const std::string& path, Manifest& manifest) {
  hkst_image* raw = nullptr;
  check(hkst_image_load_pgm(path.c_str(), &raw));
  manifest.input(path);
  return ImagePtr(raw);
}

void emit(const std::string& text, const std::string& path, Manifest& manifest) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  Manifest::write_text(path, text);
  manifest.output(path);
}

const std::map<std::string, hkst_beta_normalization> kBetaNames{
    {"sigma", HKST_BETA_SIGMA}, {"sigma6", HKST_BETA_SIGMA6}};

// --- subcommands -----------------------------------------------------------

struct EnhanceArgs {
  std::string input, output, method = "hkmdhe", report, beta = "sigma";
};

void run_enhance(const EnhanceArgs& a, Manifest& manifest) {
  static const std::map<std::string, hkst_enhancement> methods{
      {"hkmdhe", HKST_ENHANCE_HKMDHE}, {"bhe", HKST_ENHANCE_BHE}, {"global", HKST_ENHANCE_GLOBAL}};
  auto input = load_image(a.input, manifest);
  hkst_image* out = nullptr;
  char* report = nullptr;
  check(hkst_enhance(input.get(), methods.at(a.method), kBetaNames.at(a.beta), &out, &report));
  ImagePtr enhanced(out);
  StringPtr report_text(report);
  check(hkst_image_save_pgm(enhanced.get(), a.output.c_str()));
  manifest.output(a.output);
  if (!a.report.empty()) {
    Manifest::write_text(a.report, report_text.get());
    manifest.output(a.report);
  }
}

struct MetricsArgs {
  std::string reference, test, out, beta = "sigma";
};

void run_metrics(const MetricsArgs& a, Manifest& manifest) {
  auto reference = load_image(a.reference, manifest);
  auto test = load_image(a.test, manifest);
  char* report = nullptr;
  check(hkst_metrics(reference.get(), test.get(), kBetaNames.at(a.beta), &report));
  StringPtr text(report);
  emit(text.get(), a.out, manifest);
}

struct StxArgs {
  std::string input, out;
  bool no_mean_removal = false;
};

void run_stx(const StxArgs& a, Manifest& manifest) {
  hkst_signal* raw = nullptr;
  check(hkst_signal_load_csv(a.input.c_str(), &raw));
  SignalPtr signal(raw);
  manifest.input(a.input);
  hkst_spectrum* spec = nullptr;
  check(hkst_st_forward(signal.get(), a.no_mean_removal ? 0 : 1, &spec));
  SpectrumPtr spectrum(spec);
  check(hkst_spectrum_save_csv(spectrum.get(), a.out.c_str()));
  manifest.output(a.out);
}

struct AnalyzeArgs {
  std::string input, mode = "rows", enhancement = "hkmdhe", out, spectrum_csv, beta = "sigma";
  bool no_mean_removal = false;
};

void run_analyze(const AnalyzeArgs& a, Manifest& manifest) {
  static const std::map<std::string, hkst_enhancement> enhancements{{"hkmdhe", HKST_ENHANCE_HKMDHE},
                                                                    {"bhe", HKST_ENHANCE_BHE},
                                                                    {"global", HKST_ENHANCE_GLOBAL},
                                                                    {"none", HKST_ENHANCE_NONE}};
  auto image = load_image(a.input, manifest);
  hkst_pipeline_config cfg;
  hkst_pipeline_config_default(&cfg);
  cfg.unfold_mode = a.mode == "raster" ? HKST_UNFOLD_RASTER : HKST_UNFOLD_ROWS;
  cfg.mean_removal = a.no_mean_removal ? 0 : 1;
  cfg.enhancement = enhancements.at(a.enhancement);
  cfg.beta_normalization = kBetaNames.at(a.beta);
  char* report = nullptr;
  check(hkst_analyze(image.get(), &cfg, a.spectrum_csv.empty() ? nullptr : a.spectrum_csv.c_str(), &report));
  StringPtr text(report);
  if (!a.spectrum_csv.empty()) manifest.output(a.spectrum_csv);
  emit(text.get(), a.out, manifest);
}

struct PhantomArgs {
  std::string kind, size, out;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> period;
  std::optional<std::int32_t> amplitude, offset;
  std::optional<double> hurst;
};

void usage_error(const std::string& message) { throw CommandFailure{kExitUsage, message}; }

void run_phantom(const PhantomArgs& a, Manifest& manifest) {
  hkst_phantom_spec spec;
  hkst_phantom_spec_default(&spec);
  unsigned w = 0, h = 0;
  char trailing = 0;
  if (std::sscanf(a.size.c_str(), "%ux%u%c", &w, &h, &trailing) != 2 || w == 0 || h == 0) {
    usage_error("--size must be WxH with positive integers");
  }
  spec.width = w;
  spec.height = h;
  spec.seed = a.seed;
  const bool grating_flags = a.period || a.amplitude || a.offset;
  if (a.kind == "grating") {
    if (a.hurst) usage_error("--hurst does not apply to grating phantoms");
    spec.kind = HKST_PHANTOM_GRATING;
    if (a.period) spec.period = *a.period;
    if (a.amplitude) spec.amplitude = *a.amplitude;
    if (a.offset) spec.offset = *a.offset;
  } else if (a.kind == "two-level") {
    if (grating_flags || a.hurst) usage_error("two-level phantoms take no shape parameters");
    spec.kind = HKST_PHANTOM_TWO_LEVEL;
  } else {
    if (grating_flags) usage_error("--period/--amplitude/--offset apply to grating phantoms only");
    spec.kind = HKST_PHANTOM_FRACTAL;
    if (a.hurst) spec.hurst = *a.hurst;
  }
  hkst_image* raw = nullptr;
  check(hkst_phantom(&spec, &raw));
  ImagePtr image(raw);
  check(hkst_image_save_pgm(image.get(), a.out.c_str()));
  manifest.output(a.out);
}

struct CompareArgs {
  std::vector<std::string> reports;
  std::string out;
};

void run_compare(const CompareArgs& a, Manifest& manifest) {
  std::vector<std::string> labels, bodies;
  for (const auto& entry : a.reports) {
    const auto eq = entry.find('=');
    const std::string label = eq == std::string::npos ? std::filesystem::path(entry).stem().string()
                                                      : entry.substr(0, eq);
    const std::string path = eq == std::string::npos ? entry : entry.substr(eq + 1);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandFailure{kExitIo, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    labels.push_back(label);
    bodies.push_back(ss.str());
    manifest.input(path);
  }
  std::vector<const char*> label_ptrs, body_ptrs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    label_ptrs.push_back(labels[i].c_str());
    body_ptrs.push_back(bodies[i].c_str());
  }
  char* summary = nullptr;
  check(hkst_compare_reports(label_ptrs.data(), body_ptrs.data(), labels.size(), &summary));
  StringPtr text(summary);
  emit(text.get(), a.out, manifest);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HKMDHE contrast enhancement and S-transform analysis of grayscale images"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hkst_version()));
  std::string manifest_path;

  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest_path, "Write a run manifest (JSON) to this path");
  };
  auto beta_option = [](CLI::App* sub, std::string& target) {
    sub->add_option("--beta-normalization", target, "Hyper-kurtosis denominator")
        ->check(CLI::IsMember({"sigma", "sigma6"}));
  };

  EnhanceArgs enhance;
  auto* enhance_cmd = app.add_subcommand("enhance", "Histogram-equalize a PGM image");
  enhance_cmd->add_option("--input", enhance.input, "Input PGM")->required();
  enhance_cmd->add_option("--output", enhance.output, "Output PGM")->required();
  enhance_cmd->add_option("--method", enhance.method, "Equalizer")
      ->check(CLI::IsMember({"hkmdhe", "bhe", "global"}));
  enhance_cmd->add_option("--report", enhance.report, "Report JSON path");
  beta_option(enhance_cmd, enhance.beta);
  add_manifest(enhance_cmd);

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "RMSE, PSNR and AMMBE between two PGM images");
  metrics_cmd->add_option("--reference", metrics.reference, "Reference PGM")->required();
  metrics_cmd->add_option("--test", metrics.test, "Test PGM")->required();
  metrics_cmd->add_option("--out", metrics.out, "Report JSON path (default: stdout)");
  beta_option(metrics_cmd, metrics.beta);
  add_manifest(metrics_cmd);

  StxArgs stx;
  auto* stx_cmd = app.add_subcommand("stx", "S-transform of a 1-D signal CSV");
  stx_cmd->add_option("--input", stx.input, "Signal CSV (index,value)")->required();
  stx_cmd->add_option("--out", stx.out, "Spectrum CSV")->required();
  stx_cmd->add_flag("--no-mean-removal", stx.no_mean_removal, "Keep the signal mean");
  add_manifest(stx_cmd);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Enhance, unfold and S-transform an image");
  analyze_cmd->add_option("--input", analyze.input, "Input PGM")->required();
  analyze_cmd->add_option("--mode", analyze.mode, "Unfolding")->check(CLI::IsMember({"rows", "raster"}));
  analyze_cmd->add_option("--enhancement", analyze.enhancement, "Enhancement")
      ->check(CLI::IsMember({"hkmdhe", "bhe", "global", "none"}));
  analyze_cmd->add_flag("--no-mean-removal", analyze.no_mean_removal, "Keep each record's mean");
  analyze_cmd->add_option("--out", analyze.out, "Report JSON path (default: stdout)");
  analyze_cmd->add_option("--spectrum-csv", analyze.spectrum_csv, "Aggregated amplitude spectrum CSV");
  beta_option(analyze_cmd, analyze.beta);
  add_manifest(analyze_cmd);

  PhantomArgs phantom;
  auto* phantom_cmd = app.add_subcommand("phantom", "Generate a deterministic synthetic image");
  phantom_cmd->add_option("--kind", phantom.kind, "Phantom kind")
      ->required()
      ->check(CLI::IsMember({"grating", "two-level", "fractal"}));
  phantom_cmd->add_option("--size", phantom.size, "WxH")->required();
  phantom_cmd->add_option("--seed", phantom.seed, "64-bit seed")->required();
  phantom_cmd->add_option("--period", phantom.period, "Grating period (pixels)");
  phantom_cmd->add_option("--amplitude", phantom.amplitude, "Grating amplitude");
  phantom_cmd->add_option("--offset", phantom.offset, "Grating offset");
  phantom_cmd->add_option("--hurst", phantom.hurst, "Fractal Hurst exponent");
  phantom_cmd->add_option("--out", phantom.out, "Output PGM")->required();
  add_manifest(phantom_cmd);

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Rank analysis reports by peak amplitude");
  compare_cmd->add_option("reports", compare.reports, "Report JSON files, optionally label=path")
      ->required()
      ->expected(2, -1);
  compare_cmd->add_option("--out", compare.out, "Summary JSON path (default: stdout)");
  add_manifest(compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return kExitUsage;
  }

  Manifest manifest;
  try {
    if (*enhance_cmd) run_enhance(enhance, manifest);
    else if (*metrics_cmd) run_metrics(metrics, manifest);
    else if (*stx_cmd) run_stx(stx, manifest);
    else if (*analyze_cmd) run_analyze(analyze, manifest);
    else if (*phantom_cmd) run_phantom(phantom, manifest);
    else if (*compare_cmd) run_compare(compare, manifest);
    if (!manifest_path.empty()) manifest.write(manifest_path, argc, argv);
  } catch (const CommandFailure& f) {
    std::cerr << "hkst: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitOk;
}
