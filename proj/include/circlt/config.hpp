#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "circlt/clt_harness.hpp"
#include "circlt/ensembles.hpp"
#include "circlt/error.hpp"
#include "circlt/parallel.hpp"
#include "circlt/polynomial.hpp"

namespace circlt {

using Json = nlohmann::ordered_json;

namespace detail {

inline const std::set<std::string, std::less<>>& config_keys() {
  static const std::set<std::string, std::less<>> keys{"n",     "poly",         "family", "seed",
                                                       "m",     "worker_count", "blend",  "centering"};
  return keys;
}

inline std::uint64_t positive_integer(const Json& doc, std::string_view key) {
  const auto& v = doc.at(std::string(key));
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw Refusal("config key '" + std::string(key) + "' must be a positive integer");
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline TestPolynomial polynomial_from_json(const Json& v) {
  if (!v.is_array() || v.empty()) throw Refusal("config key 'poly' must be a non-empty list of coefficients");
  std::vector<double> coeffs;
  for (const auto& c : v) {
    if (!c.is_number()) throw Refusal("config key 'poly' must contain only numbers");
    coeffs.push_back(c.get<double>());
  }
  return TestPolynomial::from_dense(std::move(coeffs));
}

/// Parses and validates a JSON configuration document. Unknown keys are refused;
/// m defaults to 2000 and worker_count to the available parallelism.
inline ExperimentConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw Refusal("configuration must be a key-value object");
  for (const auto& [key, _] : doc.items())
    if (!detail::config_keys().contains(key)) throw Refusal("unknown config key '" + key + "'");
  for (const char* required : {"n", "poly"})
    if (!doc.contains(required)) throw Refusal(std::string("missing required config key '") + required + "'");

  ExperimentConfig c;
  c.n = detail::positive_integer(doc, "n");
  c.poly = polynomial_from_json(doc.at("poly"));

  Family family = Family::gaussian;
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) throw Refusal("config key 'family' must be a string");
    family = family_from_string(doc["family"].get<std::string>());
  }
  double blend = 0.5;
  if (doc.contains("blend")) {
    if (family != Family::custom_smooth) throw Refusal("config key 'blend' only applies to custom_smooth");
    if (!doc["blend"].is_number()) throw Refusal("config key 'blend' must be a number");
    blend = doc["blend"].get<double>();
  }
  c.ensemble = EnsembleSpec::make(family, blend);

  if (doc.contains("seed")) {
    const auto& v = doc["seed"];
    if (!v.is_number_integer()) throw Refusal("config key 'seed' must be an integer");
    c.master_seed = v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  c.replicas = doc.contains("m") ? detail::positive_integer(doc, "m") : 2000;
  c.worker_count = doc.contains("worker_count") ? detail::positive_integer(doc, "worker_count") : default_worker_count();
  if (doc.contains("centering") && doc["centering"] != "sample_mean")
    throw Refusal("config key 'centering' supports only \"sample_mean\"");

  c.validate();
  return c;
}

inline ExperimentConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Refusal(std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline ExperimentConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }
inline ExperimentConfig parse_config(const std::string& text) { return parse_config(std::string_view(text)); }

/// Normalized form of a config. The worker count only affects scheduling, so it
/// can be left out to keep downstream artifacts identical across worker counts.
inline Json config_to_json(const ExperimentConfig& c, bool include_worker_count = true) {
  Json j;
  j["n"] = c.n;
  j["poly"] = Json::array();
  for (double a : c.poly.dense()) j["poly"].push_back(a);
  j["family"] = std::string(to_string(c.ensemble.family));
  if (c.ensemble.family == Family::custom_smooth) j["blend"] = c.ensemble.blend;
  j["seed"] = c.master_seed;
  j["m"] = c.replicas;
  j["centering"] = "sample_mean";
  if (include_worker_count) j["worker_count"] = c.worker_count;
  return j;
}

}  // namespace circlt
