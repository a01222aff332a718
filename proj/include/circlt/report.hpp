#pragma once

#include <charconv>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circlt/clt_harness.hpp"
#include "circlt/config.hpp"
#include "circlt/version.hpp"

namespace circlt {

enum class ReportFormat { csv, json, text };

/// 17 significant digits; round-trips every finite double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// RFC 4180 field quoting.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\r\n";
}

inline std::string samples_csv(const ExperimentSummary& s) {
  std::string out = csv_row({"replica", "raw_trace", "W"});
  for (std::size_t r = 0; r < s.statistic.size(); ++r)
    out += csv_row({std::to_string(r), format_double(s.raw_traces[r]), format_double(s.statistic[r])});
  return out;
}

inline Json summary_to_json(const ExperimentSummary& s) {
  Json j;
  j["n"] = s.n;
  j["replicas"] = s.replicas;
  j["centering"] = "sample_mean";
  j["trace_mean"] = s.trace_mean;
  j["trace_mean_se"] = s.trace_mean_se;
  j["variance"] = s.variance;
  j["target_variance"] = s.target_variance;
  j["target_variance_exact"] = s.target_variance_exact;
  j["central_moments"] = s.central_moments;
  j["standardized_moments"] = s.standardized_moments;
  j["skewness_se"] = s.skewness_se;
  j["kurtosis_se"] = s.kurtosis_se;
  j["ks_distance"] = s.ks_distance;
  j["low_confidence"] = s.low_confidence;
  j["raw_traces"] = s.raw_traces;
  j["statistic"] = s.statistic;
  return j;
}

inline ExperimentSummary summary_from_json(const Json& j, double wall_time_seconds = 0) {
  ExperimentSummary s;
  s.n = j.at("n").get<std::size_t>();
  s.replicas = j.at("replicas").get<std::size_t>();
  s.trace_mean = j.at("trace_mean").get<double>();
  s.trace_mean_se = j.at("trace_mean_se").get<double>();
  s.variance = j.at("variance").get<double>();
  s.target_variance = j.at("target_variance").get<double>();
  s.target_variance_exact = j.at("target_variance_exact").get<std::string>();
  s.central_moments = j.at("central_moments").get<std::vector<double>>();
  s.standardized_moments = j.at("standardized_moments").get<std::vector<double>>();
  s.skewness_se = j.at("skewness_se").get<double>();
  s.kurtosis_se = j.at("kurtosis_se").get<double>();
  s.ks_distance = j.at("ks_distance").get<double>();
  s.low_confidence = j.at("low_confidence").get<bool>();
  s.raw_traces = j.at("raw_traces").get<std::vector<double>>();
  s.statistic = j.at("statistic").get<std::vector<double>>();
  s.wall_time_seconds = wall_time_seconds;
  return s;
}

inline Json stein_to_json(const SteinEstimate& e) {
  Json j;
  j["n"] = e.n;
  j["replicas"] = e.replicas;
  j["c1"] = e.c1;
  j["c2"] = e.c2;
  j["kappa0_hat"] = e.kappa0;
  j["kappa1_hat"] = e.kappa1;
  j["kappa2_hat"] = e.kappa2;
  j["kappa2_method"] = "m2(spectral_norm)/n";
  j["kappa2_exact_hessian"] = e.kappa2_exact_hessian;
  j["sigma2_hat"] = e.sigma2_hat;
  j["n_sigma2_target"] = e.n_sigma2_target;
  j["tv_bound"] = e.tv_bound;
  j["tv_bound_exact_hessian"] = e.tv_bound_exact_hessian;
  return j;
}

/// Full report document. Keys keep insertion order; wall time is the only
/// field that varies between identical runs and sits on its own line.
inline Json report_document(const ExperimentConfig& config, const std::optional<ExperimentSummary>& summary,
                            const std::optional<SteinEstimate>& stein) {
  Json j;
  j["library"] = kLibraryName;
  j["version"] = kVersion;
  j["config"] = config_to_json(config, false);
  j["summary"] = summary ? summary_to_json(*summary) : Json(nullptr);
  j["stein"] = stein ? stein_to_json(*stein) : Json(nullptr);
  j["wall_time_seconds"] = summary ? summary->wall_time_seconds : 0.0;
  return j;
}

inline std::string text_report(const ExperimentSummary& s) {
  std::ostringstream os;
  auto row = [&os](const std::string& name, const std::string& value, const std::string& extra = "") {
    os << std::left << std::setw(26) << name << std::setw(26) << value << extra << '\n';
  };
  row("n", std::to_string(s.n));
  row("replicas", std::to_string(s.replicas) + (s.low_confidence ? " (low confidence)" : ""));
  row("centering", "sample_mean");
  row("mean Tr P(C_n)", format_double(s.trace_mean), "se " + format_double(s.trace_mean_se));
  row("Var(W) empirical", format_double(s.variance),
      "target " + format_double(s.target_variance) + " (" + s.target_variance_exact + ")");
  for (std::size_t k = 0; k < s.standardized_moments.size(); ++k)
    row("standardized moment " + std::to_string(k + 1), format_double(s.standardized_moments[k]));
  row("skewness se", format_double(s.skewness_se));
  row("kurtosis se", format_double(s.kurtosis_se));
  row("KS distance", format_double(s.ks_distance));
  row("wall time [s]", format_double(s.wall_time_seconds));
  return os.str();
}

inline std::string emit_report(const ExperimentConfig& config, const ExperimentSummary& s, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return samples_csv(s);
    case ReportFormat::json: return report_document(config, s, std::nullopt).dump(2) + "\n";
    case ReportFormat::text: return text_report(s);
  }
  return {};
}

}  // namespace circlt
