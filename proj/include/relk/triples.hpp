#pragma once

// Cycle data for the relative K-groups of a *-homomorphism phi: A -> B.
//
// Degree 0: (p, q, v) with projections p, q over A~ and a partial isometry v
// over B~ satisfying v*v = phi(p), vv* = phi(q). Degree 1: (p, u, g) with a
// projection p, a unitary u of the corner pA~p, and a path g of unitaries of
// the corner phi(p)B~phi(p) from phi(p) to phi(u), sampled on a uniform
// grid. Raw variants carry idempotents and corner-invertible elements;
// normalize_* refines raw data and pins the right-hand side at a scalar.

#include <string>
#include <vector>

#include "relk/algebra.hpp"

namespace relk {

struct RawK0Triple {
  Element e, f, b;
  Hom hom;
};

struct K0Triple {
  Element p, q, v;
  Hom hom;
};

struct RawK1Triple {
  Element e, a;
  std::vector<Element> g;
  Hom hom;
};

struct K1Triple {
  Element p, u;
  std::vector<Element> g;
  Hom hom;
  // The class this data represents is minus the class of the cycle itself.
  // Set by the exponential boundary map; consumed when classes are read.
  bool negated = false;
};

// Every violated invariant with its numeric defect; empty means valid.
std::vector<std::string> validate_raw_k0(const RawK0Triple& t, double eps = 1e-7);
std::vector<std::string> validate_k0(const K0Triple& t, double eps = 1e-7);
std::vector<std::string> validate_raw_k1(const RawK1Triple& t, double eps = 1e-7);
std::vector<std::string> validate_k1(const K1Triple& t, double eps = 1e-7);

struct NormalizedK0 {
  K0Triple triple;
  std::vector<std::string> log;
};

struct NormalizedK1 {
  K1Triple triple;
  std::vector<std::string> log;
};

// Range-projection refinement, polar decomposition of the connecting map,
// complement so the right projection becomes scalar, then scalar rotations
// so both scalar parts equal 1_n (+) 0_n at doubled level. Throws
// ValidationError when the input is not a valid raw triple.
NormalizedK0 normalize_k0(const RawK0Triple& t, double eps = 1e-7);

// Complement to a full invertible (level stays), polar refinement to
// unitaries, then pointwise scalar correction so scalar parts are 1_n.
NormalizedK1 normalize_k1(const RawK1Triple& t, double eps = 1e-7);

K0Triple add_k0(const K0Triple& a, const K0Triple& b);
K0Triple negate_k0(const K0Triple& t);
K1Triple add_k1(const K1Triple& a, const K1Triple& b);
K1Triple negate_k1(const K1Triple& t);

// (p, q, v) followed by (q, r, w) composes to (p, r, w v); the middle
// projections must agree within eps.
K0Triple compose_k0(const K0Triple& a, const K0Triple& b, double eps = 1e-7);

// Partial isometries c (over A~) and d (over B~) implementing an
// isomorphism of triples: c*c = p, cc* = p', d*d = q, dd* = q',
// phi(d) v = v' phi(c).
struct IsoCertificateK0 {
  Element c, d;
};

std::vector<std::string> verify_iso(const K0Triple& s, const K0Triple& t,
                                    const IsoCertificateK0& cert,
                                    double eps = 1e-7);

// Path of partial isometries from phi(p) to v witnessing that (p, p, v)
// is elementary.
std::vector<std::string> verify_elementary_k0(const K0Triple& t,
                                              const std::vector<Element>& path,
                                              double eps = 1e-7);

// Two-parameter family (u_path[i], g_path[i]) joining (p, p, const) to
// (p, u, g) through valid degree-1 cycles.
struct HomotopyCertificateK1 {
  std::vector<Element> u_path;
  std::vector<std::vector<Element>> g_path;
};

std::vector<std::string> verify_elementary_k1(const K1Triple& t,
                                              const HomotopyCertificateK1& cert,
                                              double eps = 1e-7);

// Corner-invertible rotation path from phi(e (+) f) to
// [[0, binv], [-b, 0]] in three triangular factors; witnesses that the raw
// triple (e (+) f, e (+) f, that rotation) is elementary. binv is the
// corner inverse of b, supplied by the caller.
std::vector<Element> rotation_path_raw(const Element& e, const Element& f,
                                       const Element& b, const Element& binv,
                                       const Hom& hom, int steps);

// Everything needed to certify that s + (-s) is trivial: the sum, the
// isomorphism onto a (p, p, v) triple, and the elementary path for it
// (rotation path made pointwise into partial isometries).
struct NegationWitness {
  K0Triple summed;
  K0Triple rotated;
  IsoCertificateK0 iso;
  std::vector<Element> path;
};

NegationWitness negate_witness(const K0Triple& t, int steps);

// Six-factor triangular path witnessing that s + (-s) is elementary in
// degree 1 (certificate for add_k1(s, negate_k1(s))).
HomotopyCertificateK1 whitehead_certificate(const K1Triple& t, int steps);

}  // namespace relk
