#pragma once

// The command layer behind the relk executable. Every subcommand is an
// ordinary function over a parsed problem plus options, writing to caller
// streams, so tests can drive the tool in process. Return value doubles as
// the process exit code: 0 success, 1 a verification failed, 2 a name or
// file did not resolve, 3 outside the computable regime or grid too coarse,
// 4 a supplied lift or certificate is invalid.

#include <iostream>
#include <optional>
#include <string>

#include "relk/problem.hpp"

namespace relk {

struct CliOptions {
  std::optional<double> tolerance;  // overrides the file's settings
  std::optional<int> grid;
  bool machine = false;  // emit the problem schema with a results section
};

// Resolve a problem argument: an existing file path, else <arg>.json under
// $RELK_FIXTURE_DIR when that is set, else a bundled fixture name.
ProblemFile resolve_problem(const std::string& arg);

// Absolute K-groups of one named algebra.
int cmd_kgroups(const ProblemFile& p, const std::string& algebra,
                const CliOptions& o, std::ostream& out, std::ostream& err);

// Relative K-groups of one named homomorphism, their realized generators,
// and the six-term exactness verdicts around it.
int cmd_relative(const ProblemFile& p, const std::string& hom,
                 const CliOptions& o, std::ostream& out, std::ostream& err);

// Six-term sequence of a named ladder: groups, maps, exactness per node.
int cmd_sixterm(const ProblemFile& p, const std::string& ladder,
                const CliOptions& o, std::ostream& out, std::ostream& err);

// Boundary maps of a ladder applied to a named triple. `map` is "index"
// (degree 1 -> 0; optional named lifts) or "exp" (degree 0 -> 1, applied to
// the normalized form). `expect` compares the output projection against a
// named element (index only).
int cmd_boundary(const ProblemFile& p, const std::string& ladder,
                 const std::string& map, const std::string& triple,
                 const std::string& lifts_name, const std::string& expect_name,
                 const CliOptions& o, std::ostream& out, std::ostream& err);

// All invariants of a named triple, with numeric defects. `certificate` is
// empty, "rotation" for the built-in triviality witness of t + (-t), or the
// name of a stored certificate (elementary path in degree 0, connecting
// path in degree 1).
int cmd_verify(const ProblemFile& p, const std::string& triple,
               const std::string& certificate, const CliOptions& o,
               std::ostream& out, std::ostream& err);

// List the bundled problem catalog; with a directory, write each computable
// entry as a canonical problem file.
int cmd_fixtures(const std::string& emit_dir, const CliOptions& o,
                 std::ostream& out, std::ostream& err);

}  // namespace relk
