// patpoly: build pattern-avoiding polytopes, reproduce tables, run suites.
#include <iostream>

#include <CLI11.hpp>

#include "patpoly/cli.hpp"

namespace {

template <class F>
int run(F&& f) {
  try {
    const auto r = f();
    std::cout << r.output;
    return r.exit_code;
  } catch (const patpoly::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return patpoly::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return patpoly::exit_mismatch;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace patpoly;
  CLI::App app{"Pattern-avoiding permutohedra and Birkhoff polytopes"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "markdown";
  std::uint64_t budget = 0;
  app.add_option("--format", format, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown", "md"}));
  app.add_option("--budget", budget, "enumeration budget (search nodes); PATPOLY_BUDGET overrides the default");
  app.add_option("--workers", cfg.workers, "worker threads, 0 for all cores");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--data-dir", cfg.data_dir, "directory holding golden/");

  auto* compute = app.add_subcommand("compute", "one operation on a named construction");
  compute->add_option("spec", cfg.spec, "e.g. P(4;123), B(4;132), Balt(8;123), CRY(5), PS(1,2,3)")->required();
  std::string ops_help = "one of:";
  for (const auto& o : compute_ops()) ops_help += " " + o;
  compute->add_option("op", cfg.op, ops_help)->required()->check(CLI::IsMember(compute_ops()));
  compute->add_option("--m", cfg.m, "dilate for interior");
  compute->add_option("--max-m", cfg.max_m, "largest dilate for idp");

  std::string name;
  auto* table = app.add_subcommand("table", "recompute a table and diff it against the golden data");
  table->add_option("name", name)->required()->check(CLI::IsMember(table_names()));
  table->add_flag("--include-skipped", cfg.include_skipped, "also compute rows skipped by default");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  auto suites = suite_names();
  suites.push_back("idp");
  verify->add_option("suite", name)->required()->check(CLI::IsMember(suites));
  verify->add_option("--max-m", cfg.max_m, "largest dilate for IDP checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_pass : exit_usage;
  }

  return run([&]() -> CommandResult {
    cfg.format = parse_format(format);
    cfg.budget = budget ? budget : budget_from_env(cfg.budget);
    if (*compute) return cmd_compute(cfg);
    if (*table) return cmd_table(name, cfg);
    return cmd_verify(name, cfg);
  });
}
