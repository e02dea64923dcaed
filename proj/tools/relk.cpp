// relk: exact relative K-theory of maps between matrix-block C*-algebras.
// Problems arrive as JSON documents (or bundled fixture names); subcommands
// compute absolute and relative K-groups, six-term sequences, boundary maps
// on explicit cycle data, and verify triples and certificates.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relk/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relative K-theory workbench for matrix C*-algebra maps"};
  app.require_subcommand(1);
  // global flags may follow the subcommand arguments
  app.fallthrough();

  std::optional<double> tolerance;
  std::optional<int> grid;
  std::string output = "text";
  app.add_option("--tolerance", tolerance,
                 "comparison tolerance (default: problem setting, 1e-9)");
  app.add_option("--grid", grid,
                 "path sample nodes (default: problem setting, 257)");
  app.add_option("--output", output, "output form: text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  std::string problem, algebra, hom, ladder, map, triple;
  std::string lifts, expect, certificate, emit_dir;

  CLI::App* kgroups =
      app.add_subcommand("kgroups", "absolute K-groups of a named algebra");
  kgroups->add_option("problem", problem, "problem file or fixture name")
      ->required();
  kgroups->add_option("algebra", algebra, "algebra name")->required();

  CLI::App* relative = app.add_subcommand(
      "relative", "relative K-groups of a named homomorphism");
  relative->add_option("problem", problem, "problem file or fixture name")
      ->required();
  relative->add_option("hom", hom, "homomorphism name")->required();

  CLI::App* sixterm =
      app.add_subcommand("sixterm", "six-term sequence of a named ladder");
  sixterm->add_option("problem", problem, "problem file or fixture name")
      ->required();
  sixterm->add_option("ladder", ladder, "ladder name")->required();

  CLI::App* boundary = app.add_subcommand(
      "boundary", "boundary map of a ladder applied to a named triple");
  boundary->add_option("problem", problem, "problem file or fixture name")
      ->required();
  boundary->add_option("ladder", ladder, "ladder name")->required();
  boundary->add_option("map", map, "which boundary: index or exp")
      ->required()
      ->check(CLI::IsMember({"index", "exp"}));
  boundary->add_option("triple", triple, "triple name")->required();
  boundary->add_option("--lifts", lifts, "named lifts for the index map");
  boundary->add_option("--expect", expect,
                       "compare the output projection to a named element");

  CLI::App* verify =
      app.add_subcommand("verify", "check all invariants of a named triple");
  verify->add_option("problem", problem, "problem file or fixture name")
      ->required();
  verify->add_option("triple", triple, "triple name")->required();
  verify->add_option("--certificate", certificate,
                     "'rotation' for the built-in witness, or a stored "
                     "certificate name");

  CLI::App* fixtures_cmd =
      app.add_subcommand("fixtures", "list or export the bundled problems");
  fixtures_cmd->add_option("--emit", emit_dir,
                           "write each computable problem to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  relk::CliOptions opts;
  opts.tolerance = tolerance;
  opts.grid = grid;
  opts.machine = output == "machine";

  try {
    if (fixtures_cmd->parsed())
      return relk::cmd_fixtures(emit_dir, opts, std::cout, std::cerr);
    relk::ProblemFile p = relk::resolve_problem(problem);
    if (kgroups->parsed())
      return relk::cmd_kgroups(p, algebra, opts, std::cout, std::cerr);
    if (relative->parsed())
      return relk::cmd_relative(p, hom, opts, std::cout, std::cerr);
    if (sixterm->parsed())
      return relk::cmd_sixterm(p, ladder, opts, std::cout, std::cerr);
    if (boundary->parsed())
      return relk::cmd_boundary(p, ladder, map, triple, lifts, expect, opts,
                                std::cout, std::cerr);
    if (verify->parsed())
      return relk::cmd_verify(p, triple, certificate, opts, std::cout,
                              std::cerr);
  } catch (const relk::ResolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const relk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
