#include "relk/triples.hpp"

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

void note(std::vector<std::string>& out, const std::string& what,
          double defect, double eps) {
  if (defect > eps) out.push_back(what + " (defect " + fmt(defect) + ")");
}

double proj_defect(const Element& x) {
  return std::max(element_diff(x, x.adjoint()), element_diff(x * x, x));
}

double idem_defect(const Element& x) { return element_diff(x * x, x); }

// Count singular values above a floor relative to the largest one.
int numeric_rank(const CMatrix& m) {
  HermEig eig = herm_eig(m.adjoint() * m, 1e-6);
  double top = eig.evals.empty() ? 0.0 : std::max(eig.evals.front(), 0.0);
  double cut = 1e-12 * std::max(1.0, top);
  int r = 0;
  for (double v : eig.evals)
    if (v > cut) ++r;
  return r;
}

// b must restrict to a bijection between the ranges of the idempotents
// src and dst: equivalent to equality of the three ranks, checked on the
// scalar parts and on every represented value.
void check_corner_ranks(std::vector<std::string>& out, const Element& b,
                        const Element& src, const Element& dst,
                        const std::string& what) {
  try {
    if (numeric_rank(b.scalar) != idempotent_rank(src.scalar, 1e-6) ||
        numeric_rank(b.scalar) != idempotent_rank(dst.scalar, 1e-6)) {
      out.push_back(what + " (scalar part rank mismatch)");
      return;
    }
    int nodes = b.alg.node_count();
    for (int i = 0; i < nodes; ++i)
      for (int blk = 0; blk < b.alg.base.block_count(); ++blk) {
        int r = numeric_rank(b.full(i, blk));
        if (r != idempotent_rank(src.full(i, blk), 1e-6) ||
            r != idempotent_rank(dst.full(i, blk), 1e-6)) {
          out.push_back(what + " (rank mismatch at node " +
                        std::to_string(i) + ")");
          return;
        }
      }
  } catch (const GridError&) {
    out.push_back(what + " (idempotent rank is not integral)");
  }
}

void structural(std::vector<std::string>& out, const Element& x,
                const std::string& name) {
  for (const auto& s : validate_element(x, 1e-7))
    out.push_back(name + ": " + s);
}

Element corner_polar(const Element& raw, const Element& support) {
  return element_inv_sqrt_psd(raw * raw.adjoint(), support) * raw;
}

void require_same_hom(const Hom& x, const Hom& y) {
  if (x.kind != y.kind || !x.source.same_shape(y.source) ||
      !x.target.same_shape(y.target))
    throw AlgebraMismatchError(
        "cycles live over different homomorphisms");
}

}  // namespace

std::vector<std::string> validate_k0(const K0Triple& t, double eps) {
  std::vector<std::string> out;
  if (!t.p.alg.same_shape(t.hom.source))
    out.push_back("p does not live over the source algebra");
  if (!t.q.alg.same_shape(t.hom.source))
    out.push_back("q does not live over the source algebra");
  if (!t.v.alg.same_shape(t.hom.target))
    out.push_back("v does not live over the target algebra");
  if (t.p.level != t.q.level || t.p.level != t.v.level)
    out.push_back("levels differ across the triple");
  if (!out.empty()) return out;
  note(out, "p is not a projection", proj_defect(t.p), eps);
  note(out, "q is not a projection", proj_defect(t.q), eps);
  note(out, "v* v != phi(p)",
       element_diff(t.v.adjoint() * t.v, apply(t.hom, t.p)), eps);
  note(out, "v v* != phi(q)",
       element_diff(t.v * t.v.adjoint(), apply(t.hom, t.q)), eps);
  structural(out, t.p, "p");
  structural(out, t.q, "q");
  structural(out, t.v, "v");
  return out;
}

std::vector<std::string> validate_raw_k0(const RawK0Triple& t, double eps) {
  std::vector<std::string> out;
  if (!t.e.alg.same_shape(t.hom.source))
    out.push_back("e does not live over the source algebra");
  if (!t.f.alg.same_shape(t.hom.source))
    out.push_back("f does not live over the source algebra");
  if (!t.b.alg.same_shape(t.hom.target))
    out.push_back("b does not live over the target algebra");
  if (t.e.level != t.f.level || t.e.level != t.b.level)
    out.push_back("levels differ across the triple");
  if (!out.empty()) return out;
  note(out, "e is not idempotent", idem_defect(t.e), eps);
  note(out, "f is not idempotent", idem_defect(t.f), eps);
  Element fe = apply(t.hom, t.e);
  Element ff = apply(t.hom, t.f);
  note(out, "b is not supported in the (e, f) corner",
       element_diff(ff * t.b * fe, t.b), eps);
  if (out.empty())
    check_corner_ranks(out, t.b, fe, ff, "b is not corner invertible");
  structural(out, t.e, "e");
  structural(out, t.f, "f");
  structural(out, t.b, "b");
  return out;
}

std::vector<std::string> validate_k1(const K1Triple& t, double eps) {
  std::vector<std::string> out;
  if (!t.p.alg.same_shape(t.hom.source))
    out.push_back("p does not live over the source algebra");
  if (!t.u.alg.same_shape(t.hom.source))
    out.push_back("u does not live over the source algebra");
  if (t.g.empty()) out.push_back("the path g has no nodes");
  for (const auto& x : t.g)
    if (!x.alg.same_shape(t.hom.target)) {
      out.push_back("a node of g does not live over the target algebra");
      break;
    }
  if (t.p.level != t.u.level) out.push_back("levels differ across the triple");
  for (const auto& x : t.g)
    if (x.level != t.p.level) {
      out.push_back("levels differ along the path");
      break;
    }
  if (!out.empty()) return out;
  note(out, "p is not a projection", proj_defect(t.p), eps);
  note(out, "u is not supported in the corner of p",
       std::max(element_diff(t.p * t.u, t.u), element_diff(t.u * t.p, t.u)),
       eps);
  note(out, "u is not a corner unitary",
       std::max(element_diff(t.u.adjoint() * t.u, t.p),
                element_diff(t.u * t.u.adjoint(), t.p)),
       eps);
  Element fp = apply(t.hom, t.p);
  double supp = 0, unit = 0, step = 0;
  for (std::size_t i = 0; i < t.g.size(); ++i) {
    const Element& x = t.g[i];
    supp = std::max({supp, element_diff(fp * x, x), element_diff(x * fp, x)});
    unit = std::max({unit, element_diff(x.adjoint() * x, fp),
                     element_diff(x * x.adjoint(), fp)});
    if (i + 1 < t.g.size()) step = std::max(step, element_diff(t.g[i + 1], x));
  }
  note(out, "a node of g leaves the corner of phi(p)", supp, eps);
  note(out, "a node of g is not a corner unitary", unit, eps);
  note(out, "g does not start at phi(p)", element_diff(t.g.front(), fp), eps);
  note(out, "g does not end at phi(u)",
       element_diff(t.g.back(), apply(t.hom, t.u)), eps);
  note(out, "consecutive nodes of g jump too far", step, 0.9);
  structural(out, t.p, "p");
  structural(out, t.u, "u");
  for (const auto& x : t.g) {
    auto v = validate_element(x, 1e-7);
    if (!v.empty()) {
      out.push_back("g node: " + v.front());
      break;
    }
  }
  return out;
}

std::vector<std::string> validate_raw_k1(const RawK1Triple& t, double eps) {
  std::vector<std::string> out;
  if (!t.e.alg.same_shape(t.hom.source))
    out.push_back("e does not live over the source algebra");
  if (!t.a.alg.same_shape(t.hom.source))
    out.push_back("a does not live over the source algebra");
  if (t.g.empty()) out.push_back("the path g has no nodes");
  for (const auto& x : t.g)
    if (!x.alg.same_shape(t.hom.target)) {
      out.push_back("a node of g does not live over the target algebra");
      break;
    }
  if (t.e.level != t.a.level) out.push_back("levels differ across the triple");
  for (const auto& x : t.g)
    if (x.level != t.e.level) {
      out.push_back("levels differ along the path");
      break;
    }
  if (!out.empty()) return out;
  note(out, "e is not idempotent", idem_defect(t.e), eps);
  note(out, "a is not supported in the corner of e",
       element_diff(t.e * t.a * t.e, t.a), eps);
  if (out.empty())
    check_corner_ranks(out, t.a, t.e, t.e, "a is not corner invertible");
  Element fe = apply(t.hom, t.e);
  double supp = 0;
  for (const auto& x : t.g)
    supp = std::max(supp, element_diff(fe * x * fe, x));
  note(out, "a node of g leaves the corner of phi(e)", supp, eps);
  if (out.empty())
    for (std::size_t i = 0; i < t.g.size(); ++i) {
      std::vector<std::string> rk;
      check_corner_ranks(rk, t.g[i], fe, fe,
                         "g node " + std::to_string(i) +
                             " is not corner invertible");
      if (!rk.empty()) {
        out.push_back(rk.front());
        break;
      }
    }
  note(out, "g does not start at phi(e)", element_diff(t.g.front(), fe), eps);
  note(out, "g does not end at phi(a)",
       element_diff(t.g.back(), apply(t.hom, t.a)), eps);
  return out;
}

NormalizedK0 normalize_k0(const RawK0Triple& t, double eps) {
  auto bad = validate_raw_k0(t, eps);
  if (!bad.empty()) throw ValidationError("normalize_k0: " + bad.front());
  std::vector<std::string> log;
  int n = std::max({t.e.level, t.f.level, t.b.level});
  Element e = pad_to(t.e, n);
  Element f = pad_to(t.f, n);
  Element b = pad_to(t.b, n);
  log.push_back("pad to level " + std::to_string(n));
  Element p = element_rho(e);
  Element q = element_rho(f);
  log.push_back("replace idempotents by their range projections");
  Element phi_p = apply(t.hom, p);
  Element phi_q = apply(t.hom, q);
  Element b1 = apply(t.hom, f) * b * phi_p;
  Element v = corner_polar(b1, phi_q);
  log.push_back("take the partial isometry part of the compressed "
                "connecting element");
  Element comp = Element::unit(p.alg, n) - q;
  Element p1 = direct_sum(p, comp);
  Element fcomp = Element::unit(v.alg, n) - phi_q;
  Element v1 = level_block_2x2(&v, &fcomp, nullptr, nullptr);
  log.push_back("append the complement of the right-hand projection");
  HermEig eig = herm_eig(p1.scalar, eps);
  for (int i = 0; i < 2 * n; ++i) {
    double want = i < n ? 1.0 : 0.0;
    if (std::abs(eig.evals[i] - want) > kCompositeTol)
      throw ValidationError(
          "normalize_k0: the doubled scalar projection does not have full "
          "level rank");
  }
  Element p2 = scalar_conj(eig.vectors.adjoint(), p1);
  Element v2 = scalar_mul_right(v1, eig.vectors);
  log.push_back("rotate the scalar parts onto the upper corner");
  CMatrix cfix = v2.scalar;
  for (int i = n; i < 2 * n; ++i) cfix.at(i, i) += 1.0;
  double udef =
      std::max(CMatrix::max_abs_diff(cfix.adjoint() * cfix,
                                     CMatrix::identity(2 * n)),
               CMatrix::max_abs_diff(cfix * cfix.adjoint(),
                                     CMatrix::identity(2 * n)));
  if (udef > kCompositeTol)
    throw ValidationError("normalize_k0: scalar correction is not unitary");
  Element v3 = scalar_mul_left(cfix.adjoint(), v2);
  log.push_back("absorb the scalar part of the connecting element");
  CMatrix top = CMatrix::zeros(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) top.at(i, i) = 1.0;
  K0Triple out{p2, Element::scalar_element(p.alg, top), v3, t.hom};
  bad = validate_k0(out, std::max(eps, kCompositeTol));
  if (!bad.empty())
    throw ValidationError("normalize_k0 output: " + bad.front());
  log.push_back("output validated at level " + std::to_string(2 * n));
  return {out, log};
}

NormalizedK1 normalize_k1(const RawK1Triple& t, double eps) {
  auto bad = validate_raw_k1(t, eps);
  if (!bad.empty()) throw ValidationError("normalize_k1: " + bad.front());
  std::vector<std::string> log;
  int n = std::max(t.e.level, t.a.level);
  for (const auto& x : t.g) n = std::max(n, x.level);
  Element e = pad_to(t.e, n);
  Element a = pad_to(t.a, n);
  log.push_back("pad to level " + std::to_string(n));
  Element one_a = Element::unit(e.alg, n);
  Element fe = apply(t.hom, e);
  Element one_b = Element::unit(fe.alg, n);
  Element u0 = a + (one_a - e);
  Element u1 = corner_polar(u0, one_a);
  std::vector<Element> g1;
  g1.reserve(t.g.size());
  for (const auto& x : t.g)
    g1.push_back(corner_polar(pad_to(x, n) + (one_b - fe), one_b));
  log.push_back("complement to full invertibles and take unitary parts");
  Element u2 = scalar_mul_left(u1.scalar.adjoint(), u1);
  std::vector<Element> g2;
  g2.reserve(g1.size());
  for (const auto& x : g1) g2.push_back(scalar_mul_left(x.scalar.adjoint(), x));
  log.push_back("absorb the scalar parts");
  K1Triple out{one_a, u2, g2, t.hom, false};
  bad = validate_k1(out, std::max(eps, kCompositeTol));
  if (!bad.empty())
    throw ValidationError("normalize_k1 output: " + bad.front());
  log.push_back("output validated at level " + std::to_string(n));
  return {out, log};
}

K0Triple add_k0(const K0Triple& a, const K0Triple& b) {
  require_same_hom(a.hom, b.hom);
  return {direct_sum(a.p, b.p), direct_sum(a.q, b.q), direct_sum(a.v, b.v),
          a.hom};
}

K0Triple negate_k0(const K0Triple& t) {
  return {t.q, t.p, t.v.adjoint(), t.hom};
}

K1Triple add_k1(const K1Triple& a, const K1Triple& b) {
  require_same_hom(a.hom, b.hom);
  if (a.g.size() != b.g.size())
    throw GridError("cannot add paths sampled on different grids");
  if (a.negated != b.negated)
    throw ValidationError("cannot add cycles with mixed negation flags");
  std::vector<Element> g;
  g.reserve(a.g.size());
  for (std::size_t i = 0; i < a.g.size(); ++i)
    g.push_back(direct_sum(a.g[i], b.g[i]));
  return {direct_sum(a.p, b.p), direct_sum(a.u, b.u), std::move(g), a.hom,
          a.negated};
}

K1Triple negate_k1(const K1Triple& t) {
  std::vector<Element> g;
  g.reserve(t.g.size());
  for (const auto& x : t.g) g.push_back(x.adjoint());
  return {t.p, t.u.adjoint(), std::move(g), t.hom, t.negated};
}

K0Triple compose_k0(const K0Triple& a, const K0Triple& b, double eps) {
  require_same_hom(a.hom, b.hom);
  if (element_diff(a.q, b.p) > eps)
    throw ValidationError(
        "compose_k0: middle projections disagree (defect " +
        fmt(element_diff(a.q, b.p)) + ")");
  return {a.p, b.q, b.v * a.v, a.hom};
}

std::vector<std::string> verify_iso(const K0Triple& s, const K0Triple& t,
                                    const IsoCertificateK0& cert, double eps) {
  std::vector<std::string> out;
  if (s.p.level != t.p.level || cert.c.level != s.p.level ||
      cert.d.level != s.p.level) {
    out.push_back("certificate levels do not match the cycles");
    return out;
  }
  if (!cert.c.alg.same_shape(s.hom.source) ||
      !cert.d.alg.same_shape(s.hom.source)) {
    out.push_back("certificate elements must live over the source algebra");
    return out;
  }
  note(out, "c* c != p", element_diff(cert.c.adjoint() * cert.c, s.p), eps);
  note(out, "c c* != p'", element_diff(cert.c * cert.c.adjoint(), t.p), eps);
  note(out, "d* d != q", element_diff(cert.d.adjoint() * cert.d, s.q), eps);
  note(out, "d d* != q'", element_diff(cert.d * cert.d.adjoint(), t.q), eps);
  note(out, "phi(d) v != v' phi(c)",
       element_diff(apply(s.hom, cert.d) * s.v, t.v * apply(s.hom, cert.c)),
       eps);
  return out;
}

std::vector<std::string> verify_elementary_k0(const K0Triple& t,
                                              const std::vector<Element>& path,
                                              double eps) {
  std::vector<std::string> out;
  note(out, "an elementary cycle needs p = q", element_diff(t.p, t.q), eps);
  if (path.size() < 2) {
    out.push_back("the path needs at least two nodes");
    return out;
  }
  Element fp = apply(t.hom, t.p);
  note(out, "the path does not start at phi(p)",
       element_diff(path.front(), fp), eps);
  note(out, "the path does not end at v", element_diff(path.back(), t.v),
       eps);
  double supp = 0, range = 0, step = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    supp = std::max(supp, element_diff(path[i].adjoint() * path[i], fp));
    range = std::max(range, element_diff(path[i] * path[i].adjoint(), fp));
    if (i + 1 < path.size())
      step = std::max(step, element_diff(path[i + 1], path[i]));
  }
  note(out, "a path node has support != phi(p)", supp, eps);
  note(out, "a path node has range != phi(p)", range, eps);
  note(out, "consecutive path nodes jump too far", step, 0.5);
  return out;
}

std::vector<std::string> verify_elementary_k1(
    const K1Triple& t, const HomotopyCertificateK1& cert, double eps) {
  std::vector<std::string> out;
  std::size_t steps = cert.u_path.size();
  if (steps < 2) {
    out.push_back("the family needs at least two slices");
    return out;
  }
  if (cert.g_path.size() != steps) {
    out.push_back("u and g families have different slice counts");
    return out;
  }
  for (const auto& row : cert.g_path)
    if (row.size() != t.g.size()) {
      out.push_back("a g slice does not match the grid of the cycle");
      return out;
    }
  note(out, "the family does not start at p",
       element_diff(cert.u_path.front(), t.p), eps);
  note(out, "the family does not end at u",
       element_diff(cert.u_path.back(), t.u), eps);
  Element fp = apply(t.hom, t.p);
  double d0 = 0, d1 = 0;
  for (std::size_t j = 0; j < t.g.size(); ++j) {
    d0 = std::max(d0, element_diff(cert.g_path.front()[j], fp));
    d1 = std::max(d1, element_diff(cert.g_path.back()[j], t.g[j]));
  }
  note(out, "the loops do not start constant at phi(p)", d0, eps);
  note(out, "the loops do not end at g", d1, eps);
  double step = 0;
  for (std::size_t i = 0; i + 1 < steps; ++i)
    step = std::max(step, element_diff(cert.u_path[i + 1], cert.u_path[i]));
  note(out, "consecutive slices jump too far", step, 0.5);
  int reported = 0;
  for (std::size_t i = 0; i < steps && reported < 3; ++i) {
    K1Triple slice{t.p, cert.u_path[i], cert.g_path[i], t.hom, false};
    auto v = validate_k1(slice, eps);
    if (!v.empty()) {
      out.push_back("slice " + std::to_string(i) + ": " + v.front());
      ++reported;
    }
  }
  return out;
}

std::vector<Element> rotation_path_raw(const Element& e, const Element& f,
                                       const Element& b, const Element& binv,
                                       const Hom& hom, int steps) {
  if (steps < 2) throw GridError("rotation path needs at least two nodes");
  Element fe = apply(hom, e);
  Element ff = apply(hom, f);
  std::vector<Element> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    double tt = double(i) / (steps - 1);
    Element c01 = binv.scale(tt);
    Element c10 = b.scale(-tt);
    Element upper = level_block_2x2(&fe, &c01, nullptr, &ff);
    Element lower = level_block_2x2(&fe, nullptr, &c10, &ff);
    out.push_back(upper * lower * upper);
  }
  return out;
}

NegationWitness negate_witness(const K0Triple& t, int steps) {
  if (steps < 2) throw GridError("rotation path needs at least two nodes");
  K0Triple summed = add_k0(t, negate_k0(t));
  int n = t.p.level;
  CMatrix rot = CMatrix::zeros(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    rot.at(i, n + i) = 1.0;
    rot.at(n + i, i) = -1.0;
  }
  IsoCertificateK0 iso{summed.p, scalar_mul_left(rot, summed.q)};
  K0Triple rotated{summed.p, summed.p, scalar_mul_left(rot, summed.v), t.hom};
  Element phi_p = apply(t.hom, t.p);
  Element phi_q = apply(t.hom, t.q);
  Element fp = apply(t.hom, summed.p);
  Element vstar = t.v.adjoint();
  std::vector<Element> path;
  path.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    double tt = double(i) / (steps - 1);
    Element c01 = vstar.scale(tt);
    Element c10 = t.v.scale(-tt);
    Element upper = level_block_2x2(&phi_p, &c01, nullptr, &phi_q);
    Element lower = level_block_2x2(&phi_p, nullptr, &c10, &phi_q);
    path.push_back(corner_polar(upper * lower * upper, fp));
  }
  return {summed, rotated, iso, std::move(path)};
}

HomotopyCertificateK1 whitehead_certificate(const K1Triple& t, int steps) {
  if (steps < 2) throw GridError("homotopy family needs at least two slices");
  K1Triple tau = add_k1(t, negate_k1(t));
  Element fp = apply(t.hom, t.p);
  Element supp_a = tau.p;
  Element supp_b = apply(t.hom, tau.p);
  // a (+) a^{-1} joined to the corner unit by six triangular factors; at
  // every slice the value at a = the corner unit is exactly the unit, so
  // loading g(s) instead of u keeps the s-endpoints right for free.
  auto six = [](const Element& diag, const Element& a, double tt) {
    Element c1 = a.scale(tt);
    Element c2 = a.adjoint().scale(-tt);
    Element f1u = level_block_2x2(&diag, &c1, nullptr, &diag);
    Element f1l = level_block_2x2(&diag, nullptr, &c2, &diag);
    Element d1 = diag.scale(-tt);
    Element d2 = diag.scale(tt);
    Element f2u = level_block_2x2(&diag, &d1, nullptr, &diag);
    Element f2l = level_block_2x2(&diag, nullptr, &d2, &diag);
    return f1u * f1l * f1u * (f2u * f2l * f2u);
  };
  HomotopyCertificateK1 cert;
  cert.u_path.reserve(steps);
  cert.g_path.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    double tt = double(i) / (steps - 1);
    cert.u_path.push_back(corner_polar(six(t.p, t.u, tt), supp_a));
    std::vector<Element> row;
    row.reserve(t.g.size());
    for (const auto& gs : t.g)
      row.push_back(corner_polar(six(fp, gs, tt), supp_b));
    cert.g_path.push_back(std::move(row));
  }
  return cert;
}

}  // namespace relk
