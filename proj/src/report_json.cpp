#include "hkst/report_json.hpp"

#include "hkst/error.hpp"

namespace hkst {

using nlohmann::json;

json to_json(const MomentSummary& m) {
  return json{{"mean", m.mean},
              {"sigma", m.sigma},
              {"excess_kurtosis", m.excess_kurtosis},
              {"sixth_central_moment", m.sixth_central_moment},
              {"beta", m.beta},
              {"modified_mean", m.modified_mean},
              {"clamped", m.clamped}};
}

json to_json(const QualityReport& q) {
  return json{{"rmse", q.rmse},
              {"psnr_db", q.psnr_db ? json(*q.psnr_db) : json(nullptr)},
              {"ammbe", q.ammbe},
              {"clamped_mm_reference", q.clamped_mm_reference},
              {"clamped_mm_test", q.clamped_mm_test}};
}

json to_json(const TransferMap& map) {
  json lut = json::array();
  for (auto v : map.lut) lut.push_back(static_cast<int>(v));
  return json{{"lut", std::move(lut)},
              {"split_point", map.split_point ? json(*map.split_point) : json(nullptr)}};
}

json to_json(const PipelineConfig& c) {
  return json{{"unfold_mode", to_string(c.unfold_mode)},
              {"mean_removal", c.mean_removal},
              {"enhancement", to_string(c.enhancement)},
              {"beta_normalization", to_string(c.beta_normalization)}};
}

json to_json(const PipelineReport& r) {
  return json{{"dominant_voice", r.dominant_voice ? json(*r.dominant_voice) : json(nullptr)},
              {"peak_amplitude", r.peak_amplitude},
              {"per_voice_mean_amplitude", r.per_voice_mean_amplitude},
              {"per_row_peak_mean", r.per_row_peak_mean},
              {"per_row_peak_std", r.per_row_peak_std},
              {"quality", to_json(r.quality)},
              {"moments", to_json(r.moments)},
              {"config", to_json(r.config)},
              {"warnings", r.warnings}};
}

json to_json(const GradeComparison& c) {
  json ranked = json::array();
  for (const auto& e : c.ranked) {
    ranked.push_back({{"label", e.label},
                      {"peak_amplitude", e.peak_amplitude},
                      {"dominant_voice", e.dominant_voice ? json(*e.dominant_voice) : json(nullptr)}});
  }
  json pairwise = json::array();
  for (const auto& p : c.pairwise) {
    pairwise.push_back({{"first", p.first},
                        {"second", p.second},
                        {"relation", std::string(1, p.relation)},
                        {"text", p.first + " " + p.relation + " " + p.second}});
  }
  return json{{"ranked", std::move(ranked)}, {"pairwise", std::move(pairwise)}};
}

PipelineReport pipeline_report_from_json(const json& j) {
  try {
    PipelineReport r;
    r.peak_amplitude = j.at("peak_amplitude").get<double>();
    const auto& dv = j.at("dominant_voice");
    if (!dv.is_null()) r.dominant_voice = dv.get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, std::string("malformed pipeline report: ") + e.what());
  }
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hkst
