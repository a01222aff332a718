#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circlt/clt_harness.hpp"
#include "circlt/combinatorics.hpp"
#include "circlt/config.hpp"
#include "circlt/report.hpp"

namespace circlt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitRefusal = 2;
inline constexpr int kExitIo = 3;
inline constexpr const char* kOutputDirEnv = "CIRCLT_OUT_DIR";

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof())
      throw Refusal(std::string("cannot parse '") + item + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw Refusal(std::string(what) + " must not be empty");
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents) || !out.flush()) throw IoError("cannot write " + path.string());
}

inline std::string decimal(double v) {
  auto s = format_double(v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

struct ExperimentOptions {
  std::string config_path;
  std::optional<std::uint64_t> n, m, workers;
  std::optional<std::int64_t> seed;
  std::optional<std::string> poly, family;
  std::optional<double> blend;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--n", n, "matrix size");
    cmd->add_option("--poly", poly, "coefficients a_0,a_1,...,a_d (a_0 = a_1 = 0)");
    cmd->add_option("--family", family, "gaussian | rademacher | uniform_symmetric | custom_smooth");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--m", m, "number of replicas");
    cmd->add_option("--workers", workers, "worker threads");
    cmd->add_option("--blend", blend, "custom_smooth Gaussian weight in [0,1]");
  }

  ExperimentConfig resolve() const {
    Json doc = Json::object();
    if (!config_path.empty()) {
      try {
        doc = Json::parse(read_file(config_path));
      } catch (const Json::parse_error& e) {
        throw Refusal("configuration is not valid JSON: " + std::string(e.what()));
      }
    }
    if (n) doc["n"] = *n;
    if (poly) doc["poly"] = parse_list<double>(*poly, "--poly");
    if (family) doc["family"] = *family;
    if (seed) doc["seed"] = *seed;
    if (m) doc["m"] = *m;
    if (workers) doc["worker_count"] = *workers;
    if (blend) doc["blend"] = *blend;
    return parse_config(doc);
  }
};

inline std::filesystem::path prepare_output_dir(const std::string& flag) {
  std::filesystem::path dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir = env ? env : ".";
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("output directory " + dir.string() + " is not usable");
  return dir;
}

}  // namespace detail

/// Parses a command line (args[0] is the program name), runs the subcommand,
/// and returns the process exit status.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo and exact checks for linear eigenvalue statistics of random circulant matrices",
               "circlt"};
  app.require_subcommand(1);
  std::string out_dir;
  std::string format = "text";
  app.add_option("--out", out_dir, std::string("output directory (default $") + kOutputDirEnv + " or .)");

  auto* variance = app.add_subcommand("variance", "limiting variance sigma^2 of a test polynomial");
  std::string variance_poly;
  variance->add_option("--poly", variance_poly, "coefficients a_0,a_1,...,a_d")->required();

  auto* density = app.add_subcommand("density-table", "lattice slice counts against f_p(s)");
  std::int64_t table_p = 0, table_n = 0;
  density->add_option("--p", table_p, "tuple length")->required();
  density->add_option("--n", table_n, "box size")->required();

  detail::ExperimentOptions sim_opts, tv_opts, mom_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo CLT experiment");
  sim_opts.attach(simulate);
  simulate->add_option("--format", format, "stdout format: text | json | csv");

  auto* tv = app.add_subcommand("tv-bound", "Stein-method total-variation bound");
  tv_opts.attach(tv);

  auto* norms = app.add_subcommand("norm-scaling", "spectral norm against sqrt(log n)");
  std::string norm_family = "gaussian", norm_sizes = "256,1024,4096,16384";
  std::uint64_t norm_trials = 50, norm_workers = default_worker_count();
  std::int64_t norm_seed = 0;
  norms->add_option("--family", norm_family);
  norms->add_option("--sizes", norm_sizes, "comma-separated matrix sizes");
  norms->add_option("--trials", norm_trials);
  norms->add_option("--seed", norm_seed);
  norms->add_option("--workers", norm_workers);

  auto* moments = app.add_subcommand("moments", "empirical central moments against the Gaussian limit");
  mom_opts.attach(moments);
  int max_order = kMaxMomentOrder;
  moments->add_option("--max-order", max_order);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefusal;
  }

  try {
    if (variance->parsed()) {
      const auto coeffs = detail::parse_list<double>(variance_poly, "--poly");
      const auto v = limiting_variance(TestPolynomial::from_dense(coeffs));
      out << v.exact.str() << '\n' << detail::decimal(v.value) << '\n';
      return kExitOk;
    }

    if (density->parsed()) {
      if (table_p < 2) throw Refusal("density-table requires p >= 2");
      if (table_n < 1) throw Refusal("density-table requires n >= 1");
      std::string csv = csv_row({"p", "s", "n", "count", "density", "f_density", "gap"});
      for (std::int64_t s = 0; s < table_p; ++s) {
        const auto slice = lattice_slice(table_p, s, table_n);
        const auto f = f_density(table_p, s);
        const auto gap = Rational(slice.density - f);
        csv += csv_row({std::to_string(table_p), std::to_string(s), std::to_string(table_n), slice.count.str(),
                        format_double(static_cast<double>(slice.density)), format_double(static_cast<double>(f)),
                        format_double(static_cast<double>(gap))});
      }
      const auto dir = detail::prepare_output_dir(out_dir);
      detail::write_file(dir / "table.csv", csv);
      out << csv;
      return kExitOk;
    }

    if (simulate->parsed()) {
      ReportFormat fmt;
      if (format == "text") fmt = ReportFormat::text;
      else if (format == "json") fmt = ReportFormat::json;
      else if (format == "csv") fmt = ReportFormat::csv;
      else throw Refusal("--format must be text, json or csv");
      const auto config = sim_opts.resolve();
      const auto summary = run_clt_experiment(config);
      const auto dir = detail::prepare_output_dir(out_dir);
      detail::write_file(dir / "samples.csv", samples_csv(summary));
      detail::write_file(dir / "summary.json", emit_report(config, summary, ReportFormat::json));
      out << emit_report(config, summary, fmt);
      return kExitOk;
    }

    if (tv->parsed()) {
      const auto config = tv_opts.resolve();
      const auto stein = chatterjee_tv_bound(config);
      const auto dir = detail::prepare_output_dir(out_dir);
      detail::write_file(dir / "summary.json", report_document(config, std::nullopt, stein).dump(2) + "\n");
      out << stein_to_json(stein).dump(2) << '\n';
      return kExitOk;
    }

    if (norms->parsed()) {
      const auto spec = EnsembleSpec::make(family_from_string(norm_family));
      const auto sizes = detail::parse_list<std::size_t>(norm_sizes, "--sizes");
      const auto rows = norm_scaling_study(spec, sizes, norm_trials, static_cast<std::uint64_t>(norm_seed),
                                           std::max<std::uint64_t>(norm_workers, 1));
      std::string csv = csv_row({"n", "trials", "max_ratio", "mean_ratio"});
      for (const auto& r : rows)
        csv += csv_row({std::to_string(r.n), std::to_string(r.trials), format_double(r.max_ratio),
                        format_double(r.mean_ratio)});
      const auto dir = detail::prepare_output_dir(out_dir);
      detail::write_file(dir / "table.csv", csv);
      out << csv;
      return kExitOk;
    }

    if (moments->parsed()) {
      const auto config = mom_opts.resolve();
      const auto summary = run_clt_experiment(config);
      const auto central = empirical_moments(summary.statistic, max_order);
      std::string csv = csv_row({"order", "central_moment", "gaussian_target", "standardized_moment"});
      for (int k = 1; k <= max_order; ++k) {
        const auto idx = static_cast<std::size_t>(k - 1);
        csv += csv_row({std::to_string(k), format_double(central[idx]),
                        format_double(gaussian_central_moment(k, summary.target_variance)),
                        format_double(summary.standardized_moments[idx])});
      }
      const auto dir = detail::prepare_output_dir(out_dir);
      detail::write_file(dir / "table.csv", csv);
      detail::write_file(dir / "summary.json", emit_report(config, summary, ReportFormat::json));
      out << csv;
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Refusal& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefusal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitRefusal;
}

}  // namespace circlt::cli
