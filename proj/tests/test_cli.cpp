#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nnd/cli.hpp"
#include "nnd/formulas.hpp"
#include "nnd/rng.hpp"

using namespace nnd;
using nlohmann::json;

namespace {

ProblemParams params(int d, std::int64_t n, std::int64_t big_n) {
  return ProblemParams(Dimension(d), n, big_n);
}

cli::RunConfig config(int d, std::int64_t n, std::int64_t big_n) {
  return cli::RunConfig(params(d, n, big_n));
}

struct CommandResult {
  int exit_code;
  std::string output;
};

// Runs the built CLI binary through the shell, capturing the combined
// stream the command writes (callers add 2>&1 or 2>/dev/null).
CommandResult run_command(const std::string& args) {
  const std::string cmd = std::string(NND_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    output.append(buf, got);
  }
  const int status = pclose(pipe);
  return CommandResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("format_double emits shortest round-trip decimals") {
  Xoshiro256pp rng(55);
  std::vector<double> values = {0.0, 1.0, 0.1, 2.0 / 3.0, 1e-300, 1e300};
  for (int i = 0; i < 500; ++i) {
    const double mantissa = 2.0 * rng.uniform_open() - 1.0;
    const int exponent = static_cast<int>(rng.uniform_open() * 600.0) - 300;
    values.push_back(mantissa * std::pow(10.0, exponent));
  }
  for (double v : values) {
    const std::string text = cli::format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("engine list parsing") {
  CHECK(cli::parse_engines("spatial,absolute,chain") ==
        std::vector<std::string>{"spatial", "absolute", "chain"});
  CHECK(cli::parse_engines("chain,spatial") ==
        std::vector<std::string>{"chain", "spatial"});
  CHECK(cli::parse_engines("chain,chain") ==
        std::vector<std::string>{"chain"});
  CHECK_THROWS_AS(cli::parse_engines("spatial,warp"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_engines(""), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_engines(",,"), std::invalid_argument);

  CHECK(cli::output_format_from_name("json") == cli::OutputFormat::json);
  CHECK(cli::output_format_from_name("csv") == cli::OutputFormat::csv);
  CHECK_THROWS_AS(cli::output_format_from_name("xml"), std::invalid_argument);
}

TEST_CASE("exact command emits the full bundle") {
  auto cfg = config(2, 1, 2);

  SUBCASE("json") {
    std::ostringstream out;
    cli::run_exact(cfg, out);
    const json doc = json::parse(out.str());
    CHECK(doc.is_object());
    CHECK(doc["dim"] == 2);
    CHECK(doc["n"] == 1);
    CHECK(doc["points"] == 2);
    const auto p = params(2, 1, 2);
    CHECK(doc["exact"].get<double>() == formulas::exact_mean_distance(p));
    CHECK(doc["heuristic"].get<double>() ==
          formulas::heuristic_mean_distance(p));
    CHECK(doc["asymptotic_large_n_points"].get<double>() ==
          formulas::asymptotic_mean_distance_large_point_count(p));
    CHECK(doc["asymptotic_full"].get<double>() ==
          formulas::asymptotic_mean_distance_full(p));
    CHECK(doc["mean_volume_estimate"].get<double>() ==
          formulas::mean_volume_distance_estimate(p));
    CHECK(doc["mean_enclosed_volume"].get<double>() == 0.5);
    CHECK(doc["error"].get<double>() == formulas::estimate_error_exact(p));
  }

  SUBCASE("csv") {
    cfg.format = cli::OutputFormat::csv;
    std::ostringstream out;
    cli::run_exact(cfg, out);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "dim,n,points,exact,heuristic,asymptotic_large_n_points,"
          "asymptotic_full,mean_volume_estimate,mean_enclosed_volume,error");
    CHECK(lines[1].substr(0, 6) == "2,1,2,");
    // Values round-trip through the CSV text.
    const std::string rest = lines[1].substr(6);
    const double exact = std::strtod(rest.c_str(), nullptr);
    CHECK(exact == formulas::exact_mean_distance(params(2, 1, 2)));
  }
}

TEST_CASE("table command sweeps the neighbour index") {
  auto cfg = config(2, 1, 100);
  cfg.max_index = 12;
  std::ostringstream out;
  cli::run_table(cfg, out);
  const json doc = json::parse(out.str());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 12);

  double prev_exact = 0.0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& row = doc[i];
    CHECK(row["n"] == static_cast<std::int64_t>(i + 1));
    const double exact = row["exact"].get<double>();
    CHECK(exact > prev_exact);  // strictly increasing in n
    prev_exact = exact;
    CHECK(row["mean_enclosed_volume"].get<double>() ==
          static_cast<double>(i + 1) / 100.0);
  }

  // The heuristic's relative deviation shrinks when N grows at fixed
  // n/N: compare n=1, N=100 against n=10, N=1000.
  auto big = config(2, 1, 1000);
  big.max_index = 10;
  std::ostringstream out_big;
  cli::run_table(big, out_big);
  const json doc_big = json::parse(out_big.str());
  const double dev_small = std::fabs(doc[0]["heuristic_rel_dev"].get<double>());
  const double dev_big = std::fabs(doc_big[9]["heuristic_rel_dev"].get<double>());
  CHECK(dev_big < dev_small);

  // Default sweep covers min(10, N-1) rows.
  auto small = config(3, 1, 5);
  std::ostringstream out_small;
  cli::run_table(small, out_small);
  CHECK(json::parse(out_small.str()).size() == 4);

  auto bad = config(2, 1, 10);
  bad.max_index = 10;
  std::ostringstream sink;
  CHECK_THROWS_AS(cli::run_table(bad, sink), std::invalid_argument);
}

TEST_CASE("simulate command is reproducible and respects engine selection") {
  auto cfg = config(2, 1, 30);
  cfg.trials = 4000;
  cfg.seed = 11;
  cfg.engines = {"spatial", "chain"};

  std::ostringstream first;
  std::ostringstream second;
  cli::run_simulate(cfg, first);
  cli::run_simulate(cfg, second);
  CHECK(first.str() == second.str());

  const json doc = json::parse(first.str());
  CHECK(doc["rng"] == "xoshiro256++");
  CHECK(doc["seed"] == 11);
  CHECK(doc["trials"] == 4000);
  REQUIRE(doc["engines"].size() == 2);
  CHECK(doc["engines"][0]["engine"] == "spatial");
  CHECK(doc["engines"][1]["engine"] == "chain");
  for (const auto& engine : doc["engines"]) {
    CHECK(std::isfinite(engine["z_score"].get<double>()));
    CHECK(engine["standard_error"].get<double>() > 0.0);
  }

  cfg.format = cli::OutputFormat::csv;
  std::ostringstream csv_out;
  cli::run_simulate(cfg, csv_out);
  const auto lines = split_lines(csv_out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "engine,dim,n,points,trials,seed,rng,mean,standard_error,exact,"
        "z_score");
  CHECK(lines[1].substr(0, 8) == "spatial,");
  CHECK(lines[2].substr(0, 6) == "chain,");
  // LF endings only, no quoting.
  CHECK(csv_out.str().find('\r') == std::string::npos);
  CHECK(csv_out.str().find('"') == std::string::npos);
}

TEST_CASE("error-analysis command") {
  auto cfg = config(1, 10, 1000);
  cfg.max_index = 30;
  std::ostringstream out;
  cli::run_error_analysis(cfg, out);
  const json doc = json::parse(out.str());
  REQUIRE(doc.size() == 30);

  CHECK(doc[0]["dim"] == 1);
  CHECK(std::fabs(doc[0]["error"].get<double>()) <= 1e-14);
  for (std::size_t i = 1; i < doc.size(); ++i) {
    CHECK(doc[i]["error"].get<double>() >= 0.0);
  }

  // The rescaled error and its two large-D approximations converge
  // toward one another as D grows.
  const auto spread = [&](std::size_t i) {
    const double a = doc[i]["rescaled_error"].get<double>();
    const double b = doc[i]["error_large_d_harmonic"].get<double>();
    const double c = doc[i]["error_large_d_log"].get<double>();
    const double lo = std::min({a, b, c});
    const double hi = std::max({a, b, c});
    return hi - lo;
  };
  CHECK(spread(29) < spread(4));
}

TEST_CASE("cli binary end to end") {
  SUBCASE("exact json output and exit code") {
    const auto res = run_command("exact --dim 1 --n 3 --points 10 2>/dev/null");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc["exact"].get<double>() == doctest::Approx(0.15).epsilon(1e-13));
  }

  SUBCASE("invalid neighbour index names the violated constraint") {
    const auto res = run_command("exact --dim 2 --n 5 --points 4 2>&1");
    CHECK(res.exit_code != 0);
    CHECK(res.output.find("n < points") != std::string::npos);
  }

  SUBCASE("invalid dimension is rejected") {
    const auto res = run_command("exact --dim 0 --n 1 --points 4 2>&1");
    CHECK(res.exit_code != 0);
    CHECK(res.output.find("dim") != std::string::npos);
  }

  SUBCASE("unknown engine is rejected") {
    const auto res = run_command(
        "simulate --dim 2 --n 1 --points 10 --engines warp 2>&1");
    CHECK(res.exit_code != 0);
    CHECK(res.output.find("engines") != std::string::npos);
  }

  SUBCASE("unknown flag is rejected") {
    const auto res = run_command("exact --dim 2 --n 1 --points 10 --frob 2>&1");
    CHECK(res.exit_code != 0);
  }

  SUBCASE("output lands in the requested file") {
    const std::string path = "/tmp/nnd_cli_test_output.csv";
    std::remove(path.c_str());
    const auto res = run_command("exact --dim 1 --n 1 --points 4 --format csv "
                                 "--output " +
                                 path + " 2>/dev/null");
    CHECK(res.exit_code == 0);
    CHECK(res.output.empty());
    std::ifstream file(path);
    REQUIRE(file.good());
    std::string header;
    std::getline(file, header);
    CHECK(header.substr(0, 4) == "dim,");
    std::remove(path.c_str());
  }

  SUBCASE("default simulate config keeps every engine within 4 sigma") {
    const auto res =
        run_command("simulate --dim 2 --n 1 --points 50 2>/dev/null");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.output);
    REQUIRE(doc["engines"].size() == 3);
    CHECK(doc["trials"] == 100000);
    CHECK(doc["seed"] == 0);
    for (const auto& engine : doc["engines"]) {
      CHECK(std::fabs(engine["z_score"].get<double>()) < 4.0);
    }
  }
}
