#include "relk/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relk/errors.hpp"
#include "relk/linalg.hpp"

namespace relk {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void require_unitary(const Element& u, const std::string& what) {
  if (!classify_element(u, kCompositeTol).unitary)
    throw ValidationError(what + " is not unitary");
}

void require_projection(const Element& p, const std::string& what) {
  if (!classify_element(p, kCompositeTol).projection)
    throw ValidationError(what + " is not a projection");
}

// The scalar-pinned shape produced by normalization: q equals its scalar
// part, which must be a projection.
void require_scalar_q(const K0Triple& t) {
  Element qs = Element::scalar_element(t.q.alg, t.q.scalar);
  if (element_diff(t.q, qs) > kCompositeTol)
    throw ValidationError(
        "the right-hand projection must be scalar; normalize first");
}

void require_normalized_k1(const K1Triple& t) {
  if (element_diff(t.p, Element::unit(t.p.alg, t.p.level)) > kCompositeTol)
    throw ValidationError("the cycle must have p = 1_n; normalize first");
}

CMatrix swap_matrix(int n) {
  CMatrix s = CMatrix::zeros(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    s.at(i, n + i) = 1.0;
    s.at(n + i, i) = 1.0;
  }
  return s;
}

Hom suspend_hom(const Hom& h, const Algebra& sa, const Algebra& sb) {
  if (h.kind == HomKind::zero) return zero_hom(sa, sb, "S" + h.label);
  if (h.kind != HomKind::block)
    throw RegimeError(
        "suspension needs a block homomorphism between point algebras");
  std::vector<std::vector<int>> copies;
  std::vector<CMatrix> us;
  for (const auto& act : h.actions) {
    copies.push_back(act.copies);
    us.push_back(act.u);
  }
  return block_hom(sa, sb, copies, us, "S" + h.label);
}

// Repackage a t-indexed family of point-algebra values as one element over
// the matching interval algebra, with the prescribed constant scalar part.
Element loop_element(const Algebra& susp, const CMatrix& scalar,
                     const std::vector<Element>& nodes) {
  Element out = Element::zero(susp, scalar.rows());
  out.scalar = scalar;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int b = 0; b < susp.base.block_count(); ++b)
      out.body[i][b] =
          nodes[i].full(0, b) -
          CMatrix::kron_identity(scalar, susp.base.blocks[b]);
  return out;
}

}  // namespace

K0Triple mu0(const Element& u, const Hom& hom) {
  if (!u.alg.same_shape(hom.target))
    throw AlgebraMismatchError("mu0 wants a unitary over the target algebra");
  require_unitary(u, "mu0 input");
  int n = u.level;
  return {Element::unit(hom.source, n), Element::unit(hom.source, n), u, hom};
}

std::vector<intk::i64> nu0(const K0Triple& t) {
  std::vector<intk::i64> out;
  for (int b = 0; b < t.p.alg.base.block_count(); ++b)
    out.push_back(intk::i64(idempotent_rank(t.p.full(0, b), 1e-6)) -
                  intk::i64(idempotent_rank(t.q.full(0, b), 1e-6)));
  return out;
}

K1Triple mu1(const Element& P, const Element& Q, const Hom& hom, int grid) {
  if (grid < 2) throw GridError("mu1 needs at least two sample nodes");
  if (!P.alg.same_shape(hom.target) || !Q.alg.same_shape(hom.target))
    throw AlgebraMismatchError(
        "mu1 wants projections over the target algebra");
  if (P.level != Q.level)
    throw DimensionError("mu1 projections must share a level");
  require_projection(P, "mu1 left input");
  require_projection(Q, "mu1 right input");
  if (idempotent_rank(P.scalar, 1e-6) != idempotent_rank(Q.scalar, 1e-6))
    throw ValidationError(
        "mu1 wants a difference class: scalar ranks must agree");
  int n = P.level;
  std::vector<Element> g;
  g.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    double s = double(i) / (grid - 1);
    g.push_back(element_proj_exp(P, s) * element_proj_exp(Q, s).adjoint());
  }
  return {Element::unit(hom.source, n), Element::unit(hom.source, n),
          std::move(g), hom, false};
}

Element nu1(const K1Triple& t) {
  return t.u + (Element::unit(t.p.alg, t.p.level) - t.p);
}

K0Triple lambda0(const Element& p, const Element& q, const Hom& hom) {
  if (!hom.is_zero())
    throw RegimeError("the splitting exists only over the zero homomorphism");
  if (!p.alg.same_shape(hom.source) || !q.alg.same_shape(hom.source))
    throw AlgebraMismatchError(
        "lambda0 wants projections over the source algebra");
  if (p.level != q.level)
    throw DimensionError("lambda0 projections must share a level");
  require_projection(p, "lambda0 left input");
  require_projection(q, "lambda0 right input");
  int n = p.level;
  HermEig ep = herm_eig((p.scalar + p.scalar.adjoint()) * cplx(0.5));
  HermEig eq = herm_eig((q.scalar + q.scalar.adjoint()) * cplx(0.5));
  int rp = idempotent_rank(p.scalar, 1e-6);
  if (rp != idempotent_rank(q.scalar, 1e-6))
    throw ValidationError(
        "lambda0 wants a difference class: scalar ranks must agree");
  // v-dot maps the range of p-dot onto the range of q-dot isometrically
  CMatrix vd = CMatrix::zeros(n, n);
  for (int k = 0; k < rp; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        vd.at(i, j) += eq.vectors.at(i, k) * std::conj(ep.vectors.at(j, k));
  }
  return {p, q, Element::scalar_element(hom.target, vd), hom};
}

K1Triple lambda1(const Element& u, const Hom& hom, int grid) {
  if (grid < 2) throw GridError("lambda1 needs at least two sample nodes");
  if (!hom.is_zero())
    throw RegimeError("the splitting exists only over the zero homomorphism");
  if (!u.alg.same_shape(hom.source))
    throw AlgebraMismatchError("lambda1 wants a unitary over the source");
  require_unitary(u, "lambda1 input");
  int n = u.level;
  std::vector<Element> g;
  g.reserve(grid);
  for (const CMatrix& m :
       unitary_geodesic(CMatrix::identity(n), u.scalar, grid))
    g.push_back(Element::scalar_element(hom.target, m));
  return {Element::unit(hom.source, n), u, std::move(g), hom, false};
}

Element doubling_unitary(const Element& v) {
  Element one = Element::unit(v.alg, v.level);
  Element c01 = one - v * v.adjoint();
  Element c10 = one - v.adjoint() * v;
  Element vs = v.adjoint();
  return level_block_2x2(&v, &c01, &c10, &vs);
}

std::vector<Element> p_v_path(const K0Triple& t, int grid) {
  if (grid < 2) throw GridError("p_v needs at least two sample nodes");
  require_scalar_q(t);
  int m = t.v.level;
  const Algebra& balg = t.v.alg;
  CMatrix e2 = CMatrix::direct_sum(t.q.scalar, CMatrix::zeros(m, m));
  Element e2el = Element::scalar_element(balg, e2);
  std::vector<Element> out;
  out.reserve(grid);
  Element w1 = doubling_unitary(t.v);
  if (element_diff(w1, Element::unit(balg, 2 * m)) <= 1e-9) {
    for (int i = 0; i < grid; ++i) out.push_back(e2el);
    return out;
  }
  Element u1 = Element::scalar_element(balg, swap_matrix(m));
  Element one = Element::unit(balg, m);
  Element a00 = one - t.v.adjoint() * t.v;
  Element a01 = t.v.adjoint();
  Element a10 = t.v;
  Element a11 = one - t.v * t.v.adjoint();
  Element u2 = level_block_2x2(&a00, &a01, &a10, &a11);
  for (int i = 0; i < grid; ++i) {
    double s = double(i) / (grid - 1);
    Element w = element_sau_path(u1, s) * element_sau_path(u2, s);
    out.push_back(w.adjoint() * e2el * w);
  }
  return out;
}

K1Triple bott(const K0Triple& t, int grid) {
  if (grid < 2) throw GridError("bott needs at least two sample nodes");
  if (!t.p.alg.is_point() || !t.v.alg.is_point())
    throw RegimeError("bott suspends cycles between point algebras");
  require_scalar_q(t);
  int m = t.p.level;
  Algebra sa = interval_algebra(t.p.alg.base, Boundary::vanish_ends, grid,
                                "S" + t.p.alg.label);
  Algebra sb = interval_algebra(t.v.alg.base, Boundary::vanish_ends, grid,
                                "S" + t.v.alg.label);
  Hom shom = suspend_hom(t.hom, sa, sb);
  Element pd = direct_sum(t.p, Element::zero(t.p.alg, m));
  CMatrix e2 = CMatrix::direct_sum(t.q.scalar, CMatrix::zeros(m, m));
  std::vector<Element> unodes;
  unodes.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    double tt = double(i) / (grid - 1);
    unodes.push_back(scalar_mul_right(element_proj_exp(pd, tt),
                                      herm_exp_2pi(e2, -tt)));
  }
  Element u = loop_element(sa, CMatrix::identity(2 * m), unodes);
  std::vector<Element> pv = p_v_path(t, grid);
  std::vector<Element> g;
  g.reserve(grid);
  for (int j = 0; j < grid; ++j) {
    std::vector<Element> nodes;
    nodes.reserve(grid);
    for (int i = 0; i < grid; ++i) {
      double tt = double(i) / (grid - 1);
      nodes.push_back(scalar_mul_right(element_proj_exp(pv[j], tt),
                                       herm_exp_2pi(e2, -tt)));
    }
    g.push_back(loop_element(sb, CMatrix::identity(2 * m), nodes));
  }
  return {Element::unit(sa, 2 * m), u, std::move(g), shom, false};
}

K0Triple theta(const K1Triple& t) {
  require_normalized_k1(t);
  if (!t.p.alg.is_point())
    throw RegimeError("theta suspends cycles between point algebras");
  int n = t.p.level;
  int grid = static_cast<int>(t.g.size());
  if (grid < 2) throw GridError("theta needs at least two path nodes");
  const Algebra& aalg = t.p.alg;
  const Algebra& balg = t.g.front().alg;
  Algebra sa = interval_algebra(aalg.base, Boundary::vanish_ends, grid,
                                "S" + aalg.label);
  Algebra sb = interval_algebra(balg.base, Boundary::vanish_ends, grid,
                                "S" + balg.label);
  Hom shom = suspend_hom(t.hom, sa, sb);
  Element us = t.u.adjoint();
  Element s1 = level_block_2x2(nullptr, &t.u, &us, nullptr);
  Element s2 = Element::scalar_element(aalg, swap_matrix(n));
  CMatrix en = CMatrix::zeros(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) en.at(i, i) = 1.0;
  Element eel = Element::scalar_element(aalg, en);
  Element zn = Element::zero(balg, n);
  std::vector<Element> pnodes, vnodes;
  pnodes.reserve(grid);
  vnodes.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    double tt = double(i) / (grid - 1);
    Element w = element_sau_path(s1, tt) * element_sau_path(s2, tt);
    pnodes.push_back(w * eel * w.adjoint());
    vnodes.push_back(direct_sum(t.g[i], zn) *
                     apply(t.hom, w.adjoint()));
  }
  Element P = loop_element(sa, en, pnodes);
  Element V = loop_element(sb, en, vnodes);
  return {P, Element::scalar_element(sa, en), V, shom};
}

namespace {

// Shared tail of the two boundary maps in degree one: conjugate the scalar
// corner by the lifted unitary, build the connecting element, and push both
// into the ideals.
K0BoundaryResult index_tail(const K1Triple& t, const Ladder& l,
                            const Element& w, const std::vector<Element>& h,
                            std::vector<std::string> log) {
  int n = t.p.level;
  int big = w.level;
  CMatrix en = CMatrix::zeros(big, big);
  for (int i = 0; i < n; ++i) en.at(i, i) = 1.0;
  Element etot = Element::scalar_element(l.a.total, en);
  Element ptot = w * etot * w.adjoint();
  Element vtot = direct_sum(h.back(), Element::zero(l.b.total, big - n)) *
                 apply(l.phi, w.adjoint());
  double d1 = 0, d2 = 0;
  Element pout = corestrict(l.a, ptot, &d1);
  Element vout = corestrict(l.b, vtot, &d2);
  log.push_back("corestriction defects " + fmt(d1) + " / " + fmt(d2));
  K0Triple out{pout, Element::scalar_element(pout.alg, en), vout, l.psi};
  auto bad = validate_k0(out, kCompositeTol);
  if (!bad.empty())
    throw ValidationError("index_map output: " + bad.front());
  log.push_back("output validated");
  return {out, std::max(d1, d2), std::move(log)};
}

void require_over_gamma_k1(const K1Triple& t, const Ladder& l) {
  if (!t.p.alg.same_shape(l.a.quotient) ||
      !t.g.front().alg.same_shape(l.b.quotient))
    throw AlgebraMismatchError(
        "the cycle must live over the quotient homomorphism of the ladder");
}

}  // namespace

K0BoundaryResult index_map(const K1Triple& t, const Ladder& l) {
  if (t.g.empty()) throw GridError("the cycle has an empty path");
  require_over_gamma_k1(t, l);
  require_normalized_k1(t);
  int n = t.p.level;
  std::vector<std::string> log;
  Element us = t.u.adjoint();
  Element s1 = level_block_2x2(nullptr, &t.u, &us, nullptr);
  Element s2 = Element::scalar_element(t.p.alg, swap_matrix(n));
  Element one2 = Element::unit(t.p.alg, 2 * n);
  Element m1 = sa_lift(l.a, (one2 - s1).scale(0.5));
  Element m2 = sa_lift(l.a, (one2 - s2).scale(0.5));
  Element w = element_exp_2pi(m1, 0.5) * element_exp_2pi(m2, 0.5);
  log.push_back("lifted the halved complements of the two reflections "
                "splitting u (+) u*");
  std::vector<Element> h;
  h.reserve(t.g.size());
  double udef = 0;
  for (const auto& gs : t.g) {
    Element hi = element_lift(l.b, gs);
    udef = std::max(
        udef,
        std::max(element_diff(hi * hi.adjoint(),
                              Element::unit(hi.alg, hi.level)),
                 element_diff(hi.adjoint() * hi,
                              Element::unit(hi.alg, hi.level))));
    h.push_back(std::move(hi));
  }
  if (udef > kCompositeTol)
    throw LiftError("automatic path lift is not unitary (defect " +
                    fmt(udef) + "); supply lifts");
  log.push_back("lifted the path coordinatewise (unitarity defect " +
                fmt(udef) + ")");
  return index_tail(t, l, w, h, std::move(log));
}

K0BoundaryResult index_map(const K1Triple& t, const Ladder& l,
                           const IndexLifts& lifts) {
  if (t.g.empty()) throw GridError("the cycle has an empty path");
  require_over_gamma_k1(t, l);
  require_normalized_k1(t);
  int n = t.p.level;
  int big = lifts.w.level;
  if (big < n) throw LiftError("w must live at level >= the cycle level");
  if (!lifts.w.alg.same_shape(l.a.total))
    throw LiftError("w must live over the top total algebra");
  Element onew = Element::unit(lifts.w.alg, big);
  double wdef = std::max(
      element_diff(lifts.w * lifts.w.adjoint(), onew),
      element_diff(lifts.w.adjoint() * lifts.w, onew));
  if (wdef > kCompositeTol)
    throw LiftError("w is not unitary (defect " + fmt(wdef) + ")");
  CMatrix en = CMatrix::zeros(big, big);
  for (int i = 0; i < n; ++i) en.at(i, i) = 1.0;
  Element eq = Element::scalar_element(t.p.alg, en);
  double qdef = element_diff(apply(l.a.pi, lifts.w) * eq,
                             pad_to(t.u, big) * eq);
  if (qdef > kCompositeTol)
    throw LiftError("the quotient image of w does not restrict to u "
                    "(defect " + fmt(qdef) + ")");
  if (lifts.h.size() != t.g.size())
    throw LiftError("h must sample the same grid as g");
  double hdef = 0;
  for (std::size_t i = 0; i < lifts.h.size(); ++i) {
    const Element& hi = lifts.h[i];
    if (!hi.alg.same_shape(l.b.total) || hi.level != n)
      throw LiftError("h nodes must live over the bottom total algebra at "
                      "the cycle level");
    Element oneh = Element::unit(hi.alg, n);
    hdef = std::max(hdef, element_diff(hi * hi.adjoint(), oneh));
    hdef = std::max(hdef, element_diff(hi.adjoint() * hi, oneh));
    hdef = std::max(hdef, element_diff(apply(l.b.pi, hi), t.g[i]));
  }
  Element h0 = Element::scalar_element(lifts.h.front().alg,
                                       lifts.h.front().scalar);
  hdef = std::max(hdef, element_diff(lifts.h.front(), h0));
  if (hdef > kCompositeTol)
    throw LiftError("h fails its lift identities (defect " + fmt(hdef) +
                    ")");
  std::vector<std::string> log{"verified the supplied lifts (defects " +
                               fmt(wdef) + " / " + fmt(hdef) + ")"};
  return index_tail(t, l, lifts.w, lifts.h, std::move(log));
}

K1BoundaryResult exp_map(const K0Triple& t, const Ladder& l, int grid) {
  if (grid < 2) throw GridError("exp_map needs at least two sample nodes");
  if (!t.p.alg.same_shape(l.a.quotient) ||
      !t.v.alg.same_shape(l.b.quotient))
    throw AlgebraMismatchError(
        "the cycle must live over the quotient homomorphism of the ladder");
  require_scalar_q(t);
  int m = t.p.level;
  std::vector<std::string> log;
  Element a = sa_lift(l.a, t.p);
  log.push_back("lifted the projection to a self-adjoint element");
  std::vector<Element> pv = p_v_path(t, grid);
  std::vector<Element> f0;
  f0.reserve(grid);
  for (const auto& node : pv) f0.push_back(sa_lift(l.b, node));
  Element fa = direct_sum(apply(l.phi, a), Element::zero(l.b.total, m));
  Element corr = fa - f0.back();
  double cdef = apply(l.b.pi, corr).max_abs();
  log.push_back("endpoint correction is ideal-supported (leak " + fmt(cdef) +
                ")");
  if (cdef > kCompositeTol)
    throw ValidationError(
        "exp_map: the endpoint correction leaks out of the ideal (defect " +
        fmt(cdef) + "); the ladder does not commute");
  Element u = element_exp_2pi(direct_sum(a, Element::zero(a.alg, m)), 1.0);
  double du = 0, dg = 0;
  Element uout = corestrict(l.a, u, &du);
  std::vector<Element> gout;
  gout.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    double s = double(i) / (grid - 1);
    double d = 0;
    gout.push_back(corestrict(l.b, element_exp_2pi(f0[i] + corr.scale(s), 1.0), &d));
    dg = std::max(dg, d);
  }
  log.push_back("corestriction defects " + fmt(du) + " / " + fmt(dg));
  K1Triple out{Element::unit(uout.alg, 2 * m), uout, std::move(gout), l.psi,
               true};
  auto bad = validate_k1(out, kCompositeTol);
  if (!bad.empty()) throw ValidationError("exp_map output: " + bad.front());
  log.push_back("output validated; class carries a negation flag");
  return {out, std::max(du, dg), std::move(log)};
}

K0Triple induced_k0(const K0Triple& t, const Hom& alpha, const Hom& beta,
                    const Hom& hom) {
  K0Triple out{apply(alpha, t.p), apply(alpha, t.q), apply(beta, t.v), hom};
  auto bad = validate_k0(out, kCompositeTol);
  if (!bad.empty())
    throw ValidationError("induced cycle: " + bad.front() +
                          " (the square may not commute)");
  return out;
}

K1Triple induced_k1(const K1Triple& t, const Hom& alpha, const Hom& beta,
                    const Hom& hom) {
  K1Triple out{apply(alpha, t.p), apply(alpha, t.u),
               apply_path(beta, t.g), hom, t.negated};
  auto bad = validate_k1(out, kCompositeTol);
  if (!bad.empty())
    throw ValidationError("induced cycle: " + bad.front() +
                          " (the square may not commute)");
  return out;
}

ConeElement cone_delta0(const K0Triple& t, int grid) {
  std::vector<Element> pv = p_v_path(t, grid);
  Element start = Element::scalar_element(pv.front().alg, pv.front().scalar);
  if (element_diff(pv.front(), start) > kCompositeTol)
    throw EndpointMismatchError("cone path must start scalar");
  Element a2 = direct_sum(t.p, Element::zero(t.p.alg, t.p.level));
  return cone_element(a2, std::move(pv), t.hom);
}

ConeElement cone_delta1(const K1Triple& t) {
  require_normalized_k1(t);
  if (t.g.empty()) throw GridError("the cycle has an empty path");
  Element start = Element::scalar_element(t.g.front().alg,
                                          t.g.front().scalar);
  if (element_diff(t.g.front(), start) > kCompositeTol)
    throw EndpointMismatchError("cone path must start scalar");
  return cone_element(t.u, t.g, t.hom);
}

}  // namespace relk
