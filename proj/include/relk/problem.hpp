#pragma once

// The on-disk problem format: one JSON document holding named algebras,
// homomorphisms, ladders, cycle triples, boundary lifts, connecting
// certificates, standalone elements and numeric settings. Parsing resolves
// and validates every cross-reference and matrix shape. Serialization is
// canonical: sorted keys, fixed float formatting with 17 significant
// digits, so canonical files round-trip byte for byte.

#include <string>
#include <utility>
#include <vector>

#include "relk/fixtures.hpp"

namespace relk {

struct ProblemSettings {
  double tolerance = 1e-9;
  int grid = 257;
};

struct ProblemFile {
  int format = 1;
  std::vector<std::pair<std::string, Algebra>> algebras;
  std::vector<std::pair<std::string, Hom>> homs;
  std::vector<std::pair<std::string, Ladder>> ladders;
  std::vector<std::pair<std::string, K0Triple>> k0_triples;
  std::vector<std::pair<std::string, K1Triple>> k1_triples;
  std::vector<std::pair<std::string, IndexLifts>> lifts;
  std::vector<std::pair<std::string, std::vector<Element>>> certificates;
  std::vector<std::pair<std::string, Element>> elements;
  ProblemSettings settings;
};

// Throws ResolveError naming the offending entity or field.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem_file(const std::string& path);
std::string serialize_problem(const ProblemFile& p);
// Canonical document with a "results" object appended; `results_body` is the
// inner JSON of that object (already canonical).
std::string serialize_problem_with_results(const ProblemFile& p,
                                           const std::string& results_body);

// Lookups by name; throw ResolveError naming the missing entity.
const Algebra& find_algebra(const ProblemFile& p, const std::string& name);
const Hom& find_hom(const ProblemFile& p, const std::string& name);
const Ladder& find_ladder(const ProblemFile& p, const std::string& name);
const Element& find_element(const ProblemFile& p, const std::string& name);
const IndexLifts& find_lifts(const ProblemFile& p, const std::string& name);
const std::vector<Element>& find_certificate(const ProblemFile& p,
                                             const std::string& name);
// Either degree; exactly one pointer is non-null.
struct TripleRef {
  const K0Triple* k0 = nullptr;
  const K1Triple* k1 = nullptr;
};
TripleRef find_triple(const ProblemFile& p, const std::string& name);

// A bundled problem assembled from a catalog entry.
ProblemFile problem_from_fixture(const Fixture& f);

}  // namespace relk
