#pragma once

// Bundled worked problems with frozen expected values. The catalog keys are
// stable identifiers used by the command-line tools and the golden tests.
// Four small entries cover the purely block-algebra regime, two ladder
// entries carry sampled-function data: a two-point evaluation ladder whose
// exponential boundary doubles a generator, and a disk-over-interval ladder
// whose degree-one boundary lands on the standard rank-one projection over
// the plane. Entries whose content lies outside the computable regimes are
// marked not computable and carry notes instead of checks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relk/maps.hpp"
#include "relk/triples.hpp"

namespace relk {

struct Fixture {
  std::string name;   // catalog key
  std::string title;  // one line: what the entry exercises
  bool computable = true;
  int grid = 257;  // sampling resolution of any function-algebra data

  std::vector<std::pair<std::string, Algebra>> algebras;
  // The leading homomorphism is the one the expected groups refer to.
  std::vector<std::pair<std::string, Hom>> homs;
  std::vector<std::pair<std::string, Ladder>> ladders;
  std::vector<std::pair<std::string, K0Triple>> k0_triples;
  std::vector<std::pair<std::string, K1Triple>> k1_triples;

  // Expected presentations of the relative groups of the leading
  // homomorphism; empty string = outside the computable regimes.
  std::string expected_k0, expected_k1;
  // Expected class coordinates of the leading triple of each degree.
  std::vector<intk::i64> k0_class, k1_class;
  // Expected class of the exponential boundary of the leading degree-zero
  // triple through the ladder, read in the relative groups of its left leg.
  std::vector<intk::i64> boundary_class;
  // Supplied lift data for the degree-one boundary, where the entry
  // prescribes it.
  std::optional<IndexLifts> index_lifts;
  // Named pointwise targets for boundary outputs.
  std::vector<std::pair<std::string, Element>> expected_elements;

  std::vector<std::string> notes;
};

// The full catalog in a fixed order. Deterministic: identical data across
// runs and platforms.
const std::vector<Fixture>& fixtures();
std::vector<std::string> fixture_names();
// Throws ResolveError for unknown keys.
const Fixture& fixture(const std::string& name);

}  // namespace relk
