#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace sphere_qmc;
using namespace sphere_qmc::cli;

int main(int argc, char **argv) {
  CLI::App app{"Point sets on the sphere and their cap discrepancy"};
  app.require_subcommand(1);
  int digits = 17;
  app.add_option("--digits", digits, "significant digits of numeric output")->check(CLI::Range(1, 17));

  const auto sweep_names = CLI::IsMember({"both", "open"});

  GenerateOptions gen;
  auto *generate_cmd = app.add_subcommand("generate", "write a point set as CSV or JSON");
  generate_cmd->add_option("descriptor", gen.descriptor, "net:b=2,m=10 | seq:b=2,n=1000 | fib:m=21 | rand:n=1000,seed=42")
      ->required();
  generate_cmd->add_option("-o,--output", gen.output, "output file (default: stdout)");
  generate_cmd->add_flag("--sphere", gen.sphere, "apply the Lambert map");
  generate_cmd->add_flag("--json", gen.json, "JSON instead of CSV");

  DiscrepancyOptions disc;
  auto *disc_cmd = app.add_subcommand("discrepancy", "compute one discrepancy value");
  disc_cmd->add_option("source", disc.source, "descriptor or .csv/.json file")->required();
  disc_cmd->add_option("--kind", disc.kind, "L2-cap | empirical-cap | exact-cap | isotropic")
      ->check(CLI::IsMember({"L2-cap", "empirical-cap", "exact-cap", "isotropic"}));
  std::string disc_sweep = "both";
  disc_cmd->add_option("--sweep", disc_sweep, "height sweep for empirical-cap: both | open")->check(sweep_names);
  disc_cmd->add_option("--exact-limit", disc.exact_limit, "largest N accepted by exact-cap");
  disc_cmd->add_flag("--json", disc.json, "JSON report");

  TableOptions table;
  std::string table_kind = "fibonacci";
  auto *table_cmd = app.add_subcommand("table", "normalised D~ for Fibonacci lattices or nets");
  table_cmd->add_option("--kind", table_kind, "fibonacci | net")->check(CLI::IsMember({"fibonacci", "net"}));
  table_cmd->add_option("--from", table.from, "first m");
  table_cmd->add_option("--to", table.to, "last m");
  table_cmd->add_option("--base", table.base, "net base");
  std::string table_sweep = "open";
  table_cmd->add_option("--sweep", table_sweep, "height sweep: open | both")->check(sweep_names);
  table_cmd->add_flag("--json", table.json, "JSON rows");

  RandomExperimentOptions rnd;
  bool no_empirical = false;
  auto *rnd_cmd = app.add_subcommand("random-experiment", "statistics of random point sets");
  rnd_cmd->add_option("--n", rnd.n, "points per set");
  rnd_cmd->add_option("--reps", rnd.reps, "replications");
  rnd_cmd->add_option("--seed", rnd.seed, "base seed");
  rnd_cmd->add_flag("--no-empirical", no_empirical, "skip the D~ statistics");

  TraceOptions trace;
  auto *trace_cmd = app.add_subcommand("trace-curve", "trace a cap pre-image boundary with curvature");
  trace_cmd->add_option("--u", trace.u, "centre longitude parameter in [0,1)");
  trace_cmd->add_option("--v", trace.v, "centre height parameter in (0,1)");
  trace_cmd->add_option("--t", trace.t, "cap height in (-1,1)");
  trace_cmd->add_option("--resolution", trace.resolution, "samples per branch");

  std::string level = "quick";
  auto *verify_cmd = app.add_subcommand("verify", "run the invariant checks");
  verify_cmd->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (generate_cmd->parsed()) {
    gen.digits = digits;
    return cmd_generate(gen, std::cout, std::cerr);
  }
  if (disc_cmd->parsed()) {
    disc.sweep = *height_sweep_from_string(disc_sweep);
    disc.digits = digits;
    return cmd_discrepancy(disc, std::cout, std::cerr);
  }
  if (table_cmd->parsed()) {
    table.kind = table_kind == "net" ? TableKind::net : TableKind::fibonacci;
    table.sweep = *height_sweep_from_string(table_sweep);
    table.digits = digits;
    return cmd_table(table, std::cout, std::cerr);
  }
  if (rnd_cmd->parsed()) {
    rnd.empirical = !no_empirical;
    rnd.digits = digits;
    return cmd_random_experiment(rnd, std::cout, std::cerr);
  }
  if (trace_cmd->parsed()) {
    trace.digits = digits;
    return cmd_trace_curve(trace, std::cout, std::cerr);
  }
  if (verify_cmd->parsed()) return cmd_verify(level == "full", std::cout, std::cerr);
  return kUsage;
}
