#pragma once

// The maps surrounding the relative K-groups on explicit representatives:
// comparison maps between relative cycles and absolute classes, their
// splittings over the zero homomorphism, the projection path attached to a
// normalized degree-zero cycle, Bott and theta suspension constructions,
// the boundary maps of a ladder of short exact rows, and the mapping-cone
// comparisons. Everything returns concrete cycle data; turning data into
// group coordinates is the engine's job.

#include <string>
#include <vector>

#include "relk/triples.hpp"

namespace relk {

// A unitary u over the target unitization becomes the cycle (1_n, 1_n, u).
K0Triple mu0(const Element& u, const Hom& hom);

// Per-block rank differences of the two projections, a class in K0 of the
// source block algebra (one entry per block, sample node 0).
std::vector<intk::i64> nu0(const K0Triple& t);

// Projections P, Q over the target unitization with equal scalar ranks
// become (1_n, 1_n, s -> e^{2 pi i s P} e^{-2 pi i s Q}).
K1Triple mu1(const Element& P, const Element& Q, const Hom& hom, int grid);

// The full unitary u + (1 - p) over the source unitization.
Element nu1(const K1Triple& t);

// Splittings of nu0 / nu1 when the homomorphism is zero: the connecting
// data can be chosen scalar. RegimeError for any other homomorphism.
K0Triple lambda0(const Element& p, const Element& q, const Hom& hom);
K1Triple lambda1(const Element& u, const Hom& hom, int grid);

// [[v, 1 - v v*], [1 - v* v, v*]], a unitary at doubled level.
Element doubling_unitary(const Element& v);

// Projection path p_v(s) = w(s)* (q-dot (+) 0) w(s) at doubled level, from
// the scalar q-dot (+) 0 to phi(p) (+) 0; w(s) moves along the reflections
// whose product is the doubling unitary. Requires the right-hand projection
// of t to be scalar. Constant when the doubling unitary is the identity.
std::vector<Element> p_v_path(const K0Triple& t, int grid);

// Suspension cycle of a normalized degree-zero cycle: loops
// u(t) = e^{2 pi i t (p (+) 0)} e^{-2 pi i t (q-dot (+) 0)} and
// g(s, t) = e^{2 pi i t p_v(s)} e^{-2 pi i t (q-dot (+) 0)}, packaged as a
// degree-one cycle over the suspended homomorphism.
K1Triple bott(const K0Triple& t, int grid);

// Suspension cycle of a normalized degree-one cycle:
// (w (1_n (+) 0) w*, 1_n (+) 0, (g (+) 0) phi(w*)) with w the reflection
// path splitting u (+) u*, a degree-zero cycle over the suspended
// homomorphism.
K0Triple theta(const K1Triple& t);

// User-supplied lifts for the degree-one boundary: w a unitary over the top
// total algebra whose quotient image fixes u (+) 0, h a unitary path over
// the bottom total algebra lifting g with scalar start.
struct IndexLifts {
  Element w;
  std::vector<Element> h;
};

struct K0BoundaryResult {
  K0Triple triple;
  double ideal_defect = 0;  // largest value dropped by corestriction
  std::vector<std::string> log;
};

struct K1BoundaryResult {
  K1Triple triple;
  double ideal_defect = 0;
  std::vector<std::string> log;
};

// Degree-one boundary of a ladder: a normalized cycle over gamma becomes a
// cycle over psi. The automatic variant lifts u (+) u* through the two
// reflections whose halved complements admit self-adjoint lifts, and lifts
// g coordinatewise. Throws LiftError when supplied lifts fail their
// identities.
K0BoundaryResult index_map(const K1Triple& t, const Ladder& l);
K0BoundaryResult index_map(const K1Triple& t, const Ladder& l,
                           const IndexLifts& lifts);

// Degree-zero boundary: exponentials of self-adjoint lifts of p and of the
// projection path. The returned cycle carries negated = true: its class is
// minus the boundary class.
K1BoundaryResult exp_map(const K0Triple& t, const Ladder& l, int grid);

// Functoriality for a commuting square: alpha on the source side, beta on
// the target side, and the homomorphism the image cycle lives over. The
// output is validated.
K0Triple induced_k0(const K0Triple& t, const Hom& alpha, const Hom& beta,
                    const Hom& hom);
K1Triple induced_k1(const K1Triple& t, const Hom& alpha, const Hom& beta,
                    const Hom& hom);

// Mapping-cone comparisons; both require the scalar-pinned normal form.
ConeElement cone_delta0(const K0Triple& t, int grid);
ConeElement cone_delta1(const K1Triple& t);

}  // namespace relk
