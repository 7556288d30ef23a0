#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nnd/cli.hpp"
#include "nnd/types.hpp"

namespace {

struct Flags {
  int dim = 1;
  std::int64_t n = 1;
  std::int64_t points = 2;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  std::string engines = "spatial,absolute,chain";
  std::int64_t max_index = 0;
  std::string format = "json";
  std::string output;
};

void add_common_flags(CLI::App* cmd, Flags& flags, bool n_required) {
  cmd->add_option("--dim", flags.dim, "Euclidean dimension D")->required();
  auto* n_opt =
      cmd->add_option("--n", flags.n, "neighbour index n (1 <= n < points)");
  if (n_required) n_opt->required();
  cmd->add_option("--points", flags.points,
                  "points N per unit volume, including the reference point")
      ->required();
  cmd->add_option("--format", flags.format, "output format: json or csv")
      ->capture_default_str();
  cmd->add_option("--output", flags.output,
                  "write the document to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean distance to the n-th neighbour among N uniform random "
               "points in D dimensions: exact and approximate formulas plus "
               "cross-validating Monte Carlo engines."};
  app.require_subcommand(1);
  Flags flags;

  auto* exact =
      app.add_subcommand("exact", "All closed-form estimates for one (D, n, N)");
  add_common_flags(exact, flags, true);

  auto* table = app.add_subcommand(
      "table", "Estimates for n = 1..max-index at fixed (D, N)");
  add_common_flags(table, flags, false);
  auto* table_max = table->add_option("--max-index", flags.max_index,
                                      "largest neighbour index in the sweep");

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimates of the mean");
  add_common_flags(simulate, flags, true);
  simulate->add_option("--trials", flags.trials, "Monte Carlo trials")
      ->capture_default_str();
  simulate->add_option("--seed", flags.seed, "random seed (0 is a valid seed)")
      ->capture_default_str();
  simulate
      ->add_option("--engines", flags.engines,
                   "comma list from: spatial, absolute, chain")
      ->capture_default_str();

  auto* errors = app.add_subcommand(
      "error-analysis",
      "Mean-volume estimate error over D = 1..max-index at fixed (n, N)");
  add_common_flags(errors, flags, true);
  auto* errors_max = errors->add_option("--max-index", flags.max_index,
                                        "largest dimension in the sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    nnd::ProblemParams params(nnd::Dimension(flags.dim), flags.n, flags.points);
    nnd::cli::RunConfig config(params);
    config.trials = flags.trials;
    config.seed = flags.seed;
    config.engines = nnd::cli::parse_engines(flags.engines);
    config.format = nnd::cli::output_format_from_name(flags.format);
    if (table_max->count() > 0 || errors_max->count() > 0) {
      config.max_index = flags.max_index;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!flags.output.empty()) {
      file.open(flags.output);
      if (!file) {
        std::cerr << "error: cannot open output file '" << flags.output
                  << "'\n";
        return 1;
      }
      out = &file;
    }

    if (exact->parsed()) {
      nnd::cli::run_exact(config, *out);
    } else if (table->parsed()) {
      nnd::cli::run_table(config, *out);
    } else if (simulate->parsed()) {
      nnd::cli::run_simulate(config, *out, &std::cerr);
    } else {
      nnd::cli::run_error_analysis(config, *out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
