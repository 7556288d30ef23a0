#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nnd/types.hpp"

// Command implementations behind the `nnd` command-line tool. Each
// command writes one machine-readable document (JSON object/array or
// CSV with a fixed header) to the given stream; simulation timing goes
// to the optional diagnostics stream so the payload stays reproducible
// byte for byte.

namespace nnd::cli {

enum class OutputFormat { json, csv };

OutputFormat output_format_from_name(const std::string& name);

// Validated engine selection, order-preserving and duplicate-free.
std::vector<std::string> parse_engines(const std::string& comma_list);

struct RunConfig {
  ProblemParams params;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  std::vector<std::string> engines = {"spatial", "absolute", "chain"};
  std::optional<std::int64_t> max_index;  // table / error-analysis sweeps
  OutputFormat format = OutputFormat::json;

  explicit RunConfig(ProblemParams p) : params(p) {}
};

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// All closed-form estimates for one (D, n, N).
void run_exact(const RunConfig& config, std::ostream& out);

// One row per neighbour index n = 1..max_index at fixed (D, N), with
// each approximation's relative deviation from the exact mean.
void run_table(const RunConfig& config, std::ostream& out);

// Monte Carlo estimates of <r_n> per selected engine, with standard
// errors and z-scores against the exact mean.
void run_simulate(const RunConfig& config, std::ostream& out,
                  std::ostream* diagnostics = nullptr);

// Error of the mean-volume estimate swept over D = 1..max_index at
// fixed (n, N), against its large-D approximations.
void run_error_analysis(const RunConfig& config, std::ostream& out);

}  // namespace nnd::cli
