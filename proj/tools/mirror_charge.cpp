#include "mirror/report.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Central charges of toric Fano orbifolds and their mirrors"};
  app.require_subcommand(1, 1);
  std::string out_path, svg_path, csv_path, degree_bound;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--tol", tol, "absolute quadrature tolerance");
  app.add_option("--degree-bound", degree_bound, "curve class degree bound (rational)");
  app.add_option("--seed", seed, "seed for sampled checks");
  app.add_option("--svg", svg_path, "write the cell diagram (n = 2)");
  app.add_option("--csv", csv_path, "write the cell table");
  app.add_flag("--quiet", quiet, "do not print the report");

  std::string config_path;
  for (const char* name : mirror::kSubcommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "instance configuration (JSON)")->required();
    sub->fallthrough();
  }
  CLI11_PARSE(app, argc, argv);

  mirror::RunResult result;
  try {
    mirror::RunFlags flags;
    flags.tol = tol;
    flags.seed = seed;
    flags.svg_path = svg_path;
    flags.csv_path = csv_path;
    if (!degree_bound.empty()) flags.degree_bound = mirror::parse_rational(degree_bound);
    auto cfg = mirror::load_config(config_path);
    result = mirror::run_subcommand(app.get_subcommands().front()->get_name(), cfg, flags);
  } catch (const mirror::MirrorError& e) {
    result = {mirror::exit_code_for(e.code()), mirror::error_report(e)};
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << result.report;
  } else if (!quiet) {
    std::cout << result.report;
  }
  if (result.exit_code != 0 && quiet) std::cerr << result.report;
  return result.exit_code;
}
