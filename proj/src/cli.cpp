#include "nnd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "nnd/formulas.hpp"
#include "nnd/rng.hpp"
#include "nnd/sim.hpp"

namespace nnd::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* const kExactCsvHeader =
    "dim,n,points,exact,heuristic,asymptotic_large_n_points,asymptotic_full,"
    "mean_volume_estimate,mean_enclosed_volume,error";

const char* const kTableCsvHeader =
    "n,exact,heuristic,asymptotic_large_n_points,asymptotic_full,"
    "mean_volume_estimate,mean_enclosed_volume,error,heuristic_rel_dev,"
    "asymptotic_large_n_points_rel_dev,asymptotic_full_rel_dev,"
    "mean_volume_estimate_rel_dev";

const char* const kSimulateCsvHeader =
    "engine,dim,n,points,trials,seed,rng,mean,standard_error,exact,z_score";

const char* const kErrorAnalysisCsvHeader =
    "dim,error,rescaled_error,error_large_d_harmonic,error_large_d_log";

struct TableRow {
  std::int64_t n;
  formulas::EstimateBundle bundle;
  double error;
  double heuristic_rel_dev;
  double asymptotic_large_n_points_rel_dev;
  double asymptotic_full_rel_dev;
  double mean_volume_estimate_rel_dev;
};

TableRow make_table_row(const ProblemParams& p) {
  TableRow row;
  row.n = p.neighbour_index;
  row.bundle = formulas::bundle(p);
  row.error = formulas::estimate_error_exact(p);
  const double exact = row.bundle.exact;
  row.heuristic_rel_dev = (row.bundle.heuristic - exact) / exact;
  row.asymptotic_large_n_points_rel_dev =
      (row.bundle.asymptotic_large_n_points - exact) / exact;
  row.asymptotic_full_rel_dev = (row.bundle.asymptotic_full - exact) / exact;
  row.mean_volume_estimate_rel_dev =
      (row.bundle.mean_volume_estimate - exact) / exact;
  return row;
}

std::int64_t resolved_max_index(const RunConfig& config,
                                std::int64_t fallback_cap) {
  if (config.max_index) {
    const std::int64_t value = *config.max_index;
    if (value < 1 || value >= config.params.point_count) {
      throw std::invalid_argument(
          "--max-index must satisfy 1 <= max-index < points (got " +
          std::to_string(value) + ")");
    }
    return value;
  }
  return std::min(fallback_cap, config.params.point_count - 1);
}

void append_bundle_fields(ordered_json& j, const formulas::EstimateBundle& b,
                          double error) {
  j["exact"] = b.exact;
  j["heuristic"] = b.heuristic;
  j["asymptotic_large_n_points"] = b.asymptotic_large_n_points;
  j["asymptotic_full"] = b.asymptotic_full;
  j["mean_volume_estimate"] = b.mean_volume_estimate;
  j["mean_enclosed_volume"] = b.mean_enclosed_volume;
  j["error"] = error;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

struct EngineResult {
  std::string engine;
  sim::SampleStats stats;
  double wall_time_ms;
};

EngineResult run_engine(const std::string& engine, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  sim::SampleStats stats;
  if (engine == "spatial") {
    stats = sim::run_spatial_trials(config.params, config.trials, config.seed)
                .distance[static_cast<std::size_t>(
                              config.params.neighbour_index) -
                          1];
  } else {
    stats = sim::run_sampler_trials(config.params, config.trials,
                                    sim::sampler_engine_from_name(engine),
                                    config.seed);
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return EngineResult{
      engine, stats,
      std::chrono::duration<double, std::milli>(elapsed).count()};
}

}  // namespace

OutputFormat output_format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw std::invalid_argument("--format must be json or csv (got '" + name +
                              "')");
}

std::vector<std::string> parse_engines(const std::string& comma_list) {
  std::vector<std::string> engines;
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    const std::size_t comma = comma_list.find(',', start);
    const std::string name =
        comma_list.substr(start, comma == std::string::npos ? std::string::npos
                                                            : comma - start);
    if (!name.empty()) {
      if (name != "spatial" && name != "absolute" && name != "chain") {
        throw std::invalid_argument(
            "--engines accepts spatial, absolute, chain (got '" + name + "')");
      }
      if (std::find(engines.begin(), engines.end(), name) == engines.end()) {
        engines.push_back(name);
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (engines.empty()) {
    throw std::invalid_argument("--engines must select at least one engine");
  }
  return engines;
}

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void run_exact(const RunConfig& config, std::ostream& out) {
  const auto& p = config.params;
  const auto bundle = formulas::bundle(p);
  const double error = formulas::estimate_error_exact(p);
  if (config.format == OutputFormat::json) {
    ordered_json j;
    j["dim"] = p.dim.d;
    j["n"] = p.neighbour_index;
    j["points"] = p.point_count;
    append_bundle_fields(j, bundle, error);
    out << j.dump(2) << '\n';
    return;
  }
  out << kExactCsvHeader << '\n';
  write_csv_row(out, {std::to_string(p.dim.d), std::to_string(p.neighbour_index),
                      std::to_string(p.point_count), format_double(bundle.exact),
                      format_double(bundle.heuristic),
                      format_double(bundle.asymptotic_large_n_points),
                      format_double(bundle.asymptotic_full),
                      format_double(bundle.mean_volume_estimate),
                      format_double(bundle.mean_enclosed_volume),
                      format_double(error)});
}

void run_table(const RunConfig& config, std::ostream& out) {
  const auto& p = config.params;
  const std::int64_t max_index = resolved_max_index(config, 10);
  std::vector<TableRow> rows;
  rows.reserve(static_cast<std::size_t>(max_index));
  for (std::int64_t n = 1; n <= max_index; ++n) {
    rows.push_back(make_table_row(ProblemParams(p.dim, n, p.point_count)));
  }

  if (config.format == OutputFormat::json) {
    ordered_json doc = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j;
      j["n"] = row.n;
      append_bundle_fields(j, row.bundle, row.error);
      j["heuristic_rel_dev"] = row.heuristic_rel_dev;
      j["asymptotic_large_n_points_rel_dev"] =
          row.asymptotic_large_n_points_rel_dev;
      j["asymptotic_full_rel_dev"] = row.asymptotic_full_rel_dev;
      j["mean_volume_estimate_rel_dev"] = row.mean_volume_estimate_rel_dev;
      doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << kTableCsvHeader << '\n';
  for (const auto& row : rows) {
    write_csv_row(
        out,
        {std::to_string(row.n), format_double(row.bundle.exact),
         format_double(row.bundle.heuristic),
         format_double(row.bundle.asymptotic_large_n_points),
         format_double(row.bundle.asymptotic_full),
         format_double(row.bundle.mean_volume_estimate),
         format_double(row.bundle.mean_enclosed_volume),
         format_double(row.error), format_double(row.heuristic_rel_dev),
         format_double(row.asymptotic_large_n_points_rel_dev),
         format_double(row.asymptotic_full_rel_dev),
         format_double(row.mean_volume_estimate_rel_dev)});
  }
}

void run_simulate(const RunConfig& config, std::ostream& out,
                  std::ostream* diagnostics) {
  const auto& p = config.params;
  if (config.engines.empty()) {
    throw std::invalid_argument("--engines must select at least one engine");
  }
  const double exact = formulas::exact_mean_distance(p);

  std::vector<EngineResult> results;
  results.reserve(config.engines.size());
  for (const auto& engine : config.engines) {
    results.push_back(run_engine(engine, config));
    if (diagnostics != nullptr) {
      *diagnostics << "engine " << engine << ": "
                   << format_double(results.back().wall_time_ms) << " ms\n";
    }
  }

  if (config.format == OutputFormat::json) {
    ordered_json j;
    j["dim"] = p.dim.d;
    j["n"] = p.neighbour_index;
    j["points"] = p.point_count;
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["rng"] = kRngAlgorithm;
    j["exact"] = exact;
    ordered_json engines = ordered_json::array();
    for (const auto& res : results) {
      ordered_json e;
      e["engine"] = res.engine;
      e["mean"] = res.stats.mean;
      e["standard_error"] = res.stats.standard_error();
      e["z_score"] = (res.stats.mean - exact) / res.stats.standard_error();
      engines.push_back(std::move(e));
    }
    j["engines"] = std::move(engines);
    out << j.dump(2) << '\n';
    return;
  }
  out << kSimulateCsvHeader << '\n';
  for (const auto& res : results) {
    write_csv_row(
        out, {res.engine, std::to_string(p.dim.d),
              std::to_string(p.neighbour_index), std::to_string(p.point_count),
              std::to_string(config.trials), std::to_string(config.seed),
              kRngAlgorithm, format_double(res.stats.mean),
              format_double(res.stats.standard_error()), format_double(exact),
              format_double((res.stats.mean - exact) /
                            res.stats.standard_error())});
  }
}

void run_error_analysis(const RunConfig& config, std::ostream& out) {
  const auto& p = config.params;
  const std::int64_t max_dim = resolved_max_index(config, 20);

  struct ErrorRow {
    int dim;
    double error;
    double rescaled_error;
    double harmonic_form;
    double log_form;
  };
  std::vector<ErrorRow> rows;
  rows.reserve(static_cast<std::size_t>(max_dim));
  for (std::int64_t d = 1; d <= max_dim; ++d) {
    const ProblemParams q(Dimension(static_cast<int>(d)), p.neighbour_index,
                          p.point_count);
    const double error = formulas::estimate_error_exact(q);
    const double radius =
        specfun::geometry_constants(q.dim).unit_ball_radius;
    const auto approx = formulas::estimate_error_large_d_approx(q);
    rows.push_back(ErrorRow{static_cast<int>(d), error, error / radius,
                            approx.harmonic_form, approx.log_form});
  }

  if (config.format == OutputFormat::json) {
    ordered_json doc = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j;
      j["dim"] = row.dim;
      j["error"] = row.error;
      j["rescaled_error"] = row.rescaled_error;
      j["error_large_d_harmonic"] = row.harmonic_form;
      j["error_large_d_log"] = row.log_form;
      doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << kErrorAnalysisCsvHeader << '\n';
  for (const auto& row : rows) {
    write_csv_row(out, {std::to_string(row.dim), format_double(row.error),
                        format_double(row.rescaled_error),
                        format_double(row.harmonic_form),
                        format_double(row.log_form)});
  }
}

}  // namespace nnd::cli
