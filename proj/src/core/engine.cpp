#include "relk/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include <utility>

#include "relk/linalg.hpp"

namespace relk {

namespace {

constexpr double kPi = std::numbers::pi;

bool rank_shape(const Algebra& a) {
  if (a.is_point()) return true;
  if (a.domain == Domain::interval && a.boundary == Boundary::none) return true;
  if (a.domain == Domain::polar && a.boundary == Boundary::none) return true;
  return false;
}

bool winding_shape(const Algebra& a) {
  return a.domain == Domain::interval && a.boundary == Boundary::vanish_ends;
}

// Zero algebras fit both regimes (both groups vanish either way).
bool fits(const Algebra& a, KProfile p) {
  if (a.is_zero()) return true;
  return k_profile(a) == p;
}

// Induced matrix on winding vectors: conjugation leaves determinants alone,
// so a block action multiplies windings by its copies matrix.
intk::IMatrix winding_matrix(const Hom& h) {
  int rows = h.target.base.block_count();
  int cols = h.source.base.block_count();
  intk::IMatrix m(rows, cols);
  switch (h.kind) {
    case HomKind::zero:
      return m;
    case HomKind::block:
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = h.actions[std::size_t(i)].copies[std::size_t(j)];
      return m;
    default:
      throw RegimeError("no induced winding matrix for this homomorphism kind");
  }
}

double body_max(const Element& x) {
  double m = 0;
  for (const auto& node : x.body)
    for (const auto& blk : node) m = std::max(m, blk.max_abs());
  return m;
}

// Rank-one projection sitting in one block, constant across nodes.
Element block_projection(const Algebra& a, int block) {
  Element p = Element::zero(a, 1);
  for (auto& node : p.body) node[std::size_t(block)].at(0, 0) = 1.0;
  return p;
}

// Unit plus a corner phase loop of the given winding in each block.
Element winding_unitary(const Algebra& a, const std::vector<intk::i64>& w) {
  Element u = Element::unit(a, 1);
  for (int i = 0; i < a.node_count(); ++i) {
    double s = a.interval_s(i);
    for (std::size_t j = 0; j < w.size(); ++j)
      u.body[std::size_t(i)][j].at(0, 0) = cis_2pi(double(w[j]) * s) - 1.0;
  }
  return u;
}

// A kernel vector of the induced matrix becomes (p, q, v): diagonal
// projections of ranks x+ and x- per source block, v assembled per target
// block from eigenbases of the pushed projections (the ranks agree exactly
// because the vector lies in the kernel).
K0Triple kernel_rank_cycle(const Hom& h, const std::vector<intk::i64>& x) {
  intk::i64 lvl = 1;
  for (intk::i64 c : x) lvl = std::max(lvl, std::llabs(c));
  int n = int(lvl);
  Element p = Element::zero(h.source, n);
  Element q = Element::zero(h.source, n);
  for (std::size_t j = 0; j < x.size(); ++j) {
    int plus = x[j] > 0 ? int(x[j]) : 0;
    int minus = x[j] < 0 ? int(-x[j]) : 0;
    for (auto& node : p.body)
      for (int k = 0; k < plus; ++k) node[j].at(k, k) = 1.0;
    for (auto& node : q.body)
      for (int k = 0; k < minus; ++k) node[j].at(k, k) = 1.0;
  }
  Element fp = apply(h, p);
  Element fq = apply(h, q);
  Element v = Element::zero(h.target, n);
  int kb = h.target.base.block_count();
  for (int b = 0; b < kb; ++b) {
    CMatrix mp = fp.full(0, b);
    CMatrix mq = fq.full(0, b);
    HermEig ep = herm_eig((mp + mp.adjoint()) * cplx(0.5, 0));
    HermEig eq = herm_eig((mq + mq.adjoint()) * cplx(0.5, 0));
    int dim = mp.rows();
    CMatrix vb = CMatrix::zeros(dim, dim);
    for (int k = 0; k < dim; ++k) {
      bool inp = ep.evals[std::size_t(k)] > 0.5;
      bool inq = eq.evals[std::size_t(k)] > 0.5;
      if (inp != inq)
        throw ValidationError(
            "pushed projection ranks disagree on a kernel vector");
      if (!inp) continue;
      vb += eq.vectors.block(0, k, dim, 1) * ep.vectors.block(0, k, dim, 1).adjoint();
    }
    for (auto& node : v.body) node[std::size_t(b)] = vb;
  }
  K0Triple t{p, q, v, h};
  auto errs = validate_k0(t);
  if (!errs.empty()) throw ValidationError("kernel cycle failed validation: " + errs.front());
  return t;
}

// Winding loops per source block with a constant unit path downstairs;
// only available when the target has no K-theory to match.
K1Triple winding_kernel_cycle(const Hom& h, const std::vector<intk::i64>& x) {
  Element p = Element::unit(h.source, 1);
  Element u = winding_unitary(h.source, x);
  std::vector<Element> g(5, Element::unit(h.target, 1));
  K1Triple t{p, u, g, h, false};
  auto errs = validate_k1(t);
  if (!errs.empty()) throw ValidationError("winding cycle failed validation: " + errs.front());
  return t;
}

// Path of unitaries over the source unitization from 1 to u, used to close
// the degree-one loop downstairs. Point domains take the logarithmic
// geodesic. Interval domains use the squeeze u(min(s, tau)): its stage k
// agrees with u up to node k and freezes beyond, so every stage samples u's
// own node values. Polar domains squeeze radially toward the center. A
// pointwise geodesic from 1 to the constant starting stage is prefixed when
// u does not begin at the unit.
std::vector<Element> unitary_certificate(const Element& u, int len) {
  const Algebra& a = u.alg;
  std::vector<Element> cert;
  if (a.is_point()) {
    Element h = element_unitary_log(u).scale(cplx(1.0 / (2.0 * kPi), 0));
    int steps = std::max(len, 2);
    cert.reserve(std::size_t(steps));
    for (int k = 0; k < steps; ++k)
      cert.push_back(element_exp_2pi(h, double(k) / double(steps - 1)));
    return cert;
  }
  if (a.boundary != Boundary::none)
    throw ResolveError("no certificate construction for this domain shape");
  std::vector<Element> stages;
  if (a.domain == Domain::interval) {
    for (int k = 0; k < a.node_count(); ++k) {
      Element stage = u;
      for (int i = k + 1; i < a.node_count(); ++i)
        for (std::size_t b = 0; b < stage.body[std::size_t(i)].size(); ++b)
          stage.body[std::size_t(i)][b] = u.body[std::size_t(k)][b];
      stages.push_back(stage);
    }
  } else {
    for (int k = 0; k < a.grid; ++k) {
      Element stage = u;
      for (int ir = k + 1; ir < a.grid; ++ir)
        for (int it = 0; it < a.grid; ++it) {
          std::size_t to = std::size_t(a.polar_index(ir, it));
          std::size_t from = std::size_t(a.polar_index(k, it));
          for (std::size_t b = 0; b < stage.body[to].size(); ++b)
            stage.body[to][b] = u.body[from][b];
        }
      stages.push_back(stage);
    }
  }
  Element one = Element::unit(a, u.level);
  if (element_diff(stages.front(), one) > 1e-9) {
    int pre = std::max(5, int(stages.size()) / 4);
    int kb = a.base.block_count();
    const Element& start = stages.front();
    std::vector<std::vector<CMatrix>> geo(static_cast<std::size_t>(kb));
    for (int b = 0; b < kb; ++b)
      geo[std::size_t(b)] = unitary_geodesic(
          CMatrix::identity(start.full(0, b).rows()), start.full(0, b), pre);
    for (int m = 0; m < pre - 1; ++m) {
      Element d = one;
      for (auto& node : d.body)
        for (int b = 0; b < kb; ++b)
          node[std::size_t(b)] =
              geo[std::size_t(b)][std::size_t(m)] -
              CMatrix::identity(start.full(0, b).rows());
      cert.push_back(d);
    }
  }
  (void)len;
  for (auto& s : stages) cert.push_back(std::move(s));
  return cert;
}

std::vector<intk::i64> negate_vec(std::vector<intk::i64> v) {
  for (auto& c : v) c = intk::checked_neg(c);
  return v;
}

std::vector<intk::i64> zeros(int n) { return std::vector<intk::i64>(std::size_t(n), 0); }

K0Triple renormalized(const K0Triple& t) {
  return normalize_k0(RawK0Triple{t.p, t.q, t.v, t.hom}).triple;
}

K1Triple renormalized(const K1Triple& t) {
  K1Triple n = normalize_k1(RawK1Triple{t.p, t.u, t.g, t.hom}).triple;
  n.negated = t.negated;  // the raw layer does not carry the flag
  return n;
}

std::string alg_name(const Algebra& a, const char* fallback) {
  return a.label.empty() ? std::string(fallback) : a.label;
}

intk::GroupMap column_map(const intk::GroupPresentation& src,
                          const intk::GroupPresentation& tgt,
                          const std::vector<std::vector<intk::i64>>& cols,
                          const std::string& label) {
  intk::IMatrix m(tgt.generators, src.generators);
  for (int j = 0; j < src.generators; ++j)
    for (int i = 0; i < tgt.generators; ++i) m.at(i, j) = cols[std::size_t(j)][std::size_t(i)];
  return intk::make_map(src, tgt, m, label);
}

void summarize(SixTermReport& r) {
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    r.log.push_back(r.nodes[i] + " = " + intk::format_group(r.groups[i]));
  r.ok = true;
  for (const auto& e : r.exact) {
    r.log.push_back("exactness at " + e.node + ": " +
                    (e.exact() ? "holds" : "FAILS " + e.detail));
    if (!e.exact()) r.ok = false;
  }
}

}  // namespace

KProfile k_profile(const Algebra& a) {
  if (a.is_zero() || rank_shape(a)) return KProfile::rank;
  if (winding_shape(a)) return KProfile::winding;
  throw RegimeError("K-theory of '" + a.label +
                    "' is outside the rank and winding regimes");
}

std::pair<intk::GroupPresentation, intk::GroupPresentation> k_groups_alg(
    const Algebra& a) {
  int k = a.base.block_count();
  auto free_k = intk::make_presentation(k, intk::IMatrix(k, 0));
  auto trivial = intk::make_presentation(0, intk::IMatrix(0, 0));
  if (a.is_zero()) return {trivial, trivial};
  if (k_profile(a) == KProfile::rank) return {free_k, trivial};
  return {trivial, free_k};
}

intk::i64 winding_number(const std::vector<CMatrix>& nodes) {
  if (nodes.size() < 2) throw GridError("winding needs at least two samples");
  double total = 0;
  cplx prev = det(nodes.front());
  if (std::abs(prev) < 1e-8)
    throw GridError("determinant vanishes along the path");
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    cplx cur = det(nodes[k]);
    if (std::abs(cur) < 1e-8)
      throw GridError("determinant vanishes along the path");
    double step = std::arg(cur / prev);
    if (std::abs(step) >= kPi / 2)
      throw GridError("determinant phase jumps by a quarter turn between samples; refine the grid");
    total += step;
    prev = cur;
  }
  double turns = total / (2.0 * kPi);
  intk::i64 w = std::llround(turns);
  if (std::abs(turns - double(w)) > 0.01)
    throw GridError("winding does not close up to an integer; the path is not a loop at this resolution");
  return w;
}

std::vector<intk::i64> loop_winding(const Element& u) {
  if (u.alg.domain != Domain::interval)
    throw RegimeError("loop winding needs an interval domain");
  int kb = u.alg.base.block_count();
  std::vector<intk::i64> w(std::size_t(kb), 0);
  for (int b = 0; b < kb; ++b) {
    std::vector<CMatrix> nodes;
    nodes.reserve(std::size_t(u.alg.node_count()));
    for (int i = 0; i < u.alg.node_count(); ++i) nodes.push_back(u.full(i, b));
    w[std::size_t(b)] = winding_number(nodes);
  }
  return w;
}

std::vector<intk::i64> path_winding(const std::vector<Element>& nodes) {
  if (nodes.empty()) throw GridError("winding needs at least two samples");
  int kb = nodes.front().alg.base.block_count();
  std::vector<intk::i64> w(std::size_t(kb), 0);
  for (int b = 0; b < kb; ++b) {
    std::vector<CMatrix> vals;
    vals.reserve(nodes.size());
    for (const auto& e : nodes) vals.push_back(e.full(0, b));
    w[std::size_t(b)] = winding_number(vals);
  }
  return w;
}

RelativeGroups relative_groups(const Hom& h, int grid) {
  RelativeGroups g;
  g.hom = h;
  g.grid = grid;
  KProfile prof;
  if (!h.source.is_zero())
    prof = k_profile(h.source);
  else if (!h.target.is_zero())
    prof = k_profile(h.target);
  else
    prof = KProfile::rank;
  if (!fits(h.source, prof) || !fits(h.target, prof))
    throw RegimeError("source and target carry K-theory in different degrees");
  g.induced = prof == KProfile::rank ? k0_matrix(h) : winding_matrix(h);
  int kb = h.target.base.block_count();
  if (prof == KProfile::rank) {
    g.k0_model = GroupModel::kernel_rank;
    g.k1_model = GroupModel::coker_rank;
    g.k0_basis = intk::int_kernel(g.induced);
    int r = g.k0_basis.cols();
    g.k0 = intk::make_presentation(r, intk::IMatrix(r, 0));
    g.k1 = intk::make_presentation(kb, g.induced);
    for (int j = 0; j < r; ++j)
      g.k0_gens.push_back(kernel_rank_cycle(h, g.k0_basis.col(j)));
    g.k0_realized = true;
    for (int b = 0; b < kb; ++b)
      g.k1_gens.push_back(
          mu1(block_projection(h.target, b), Element::zero(h.target, 1), h, grid));
    g.k1_realized = true;
    return g;
  }
  g.k0_model = GroupModel::coker_winding;
  g.k1_model = GroupModel::kernel_winding;
  g.k0 = intk::make_presentation(kb, g.induced);
  g.k1_basis = intk::int_kernel(g.induced);
  int r = g.k1_basis.cols();
  g.k1 = intk::make_presentation(r, intk::IMatrix(r, 0));
  for (int b = 0; b < kb; ++b) {
    std::vector<intk::i64> w(std::size_t(kb), 0);
    w[std::size_t(b)] = 1;
    g.k0_gens.push_back(mu0(winding_unitary(h.target, w), h));
  }
  g.k0_realized = true;
  if (h.target.is_zero()) {
    for (int j = 0; j < r; ++j)
      g.k1_gens.push_back(winding_kernel_cycle(h, g.k1_basis.col(j)));
    g.k1_realized = true;
  }
  return g;
}

std::vector<intk::i64> class_of_k0(const K0Triple& t, const RelativeGroups& g) {
  if (g.k0.generators == 0) return {};
  if (g.k0_model == GroupModel::kernel_rank) {
    std::vector<intk::i64> x = nu0(t);
    std::vector<intk::i64> out;
    if (!intk::solve_int(g.k0_basis, x, &out))
      throw ResolveError("rank vector lies outside the kernel lattice");
    return out;
  }
  // coker_winding: the class is read off a corner unitary, which exists in
  // this form only when the normalized cycle has scalar projections.
  K0Triple nt = renormalized(t);
  if (body_max(nt.p) > 1e-6) {
    if (g.k0.is_trivial()) return zeros(g.k0.generators);
    throw ResolveError("left projection is not scalar after normalization; the winding class is not computed");
  }
  Element corner =
      nt.v + Element::unit(t.hom.target, nt.q.level) -
      Element::scalar_element(t.hom.target, nt.q.scalar);
  if (!classify_element(corner, 1e-6).unitary) {
    if (g.k0.is_trivial()) return zeros(g.k0.generators);
    throw ResolveError("corner loop of the normalized cycle is not unitary");
  }
  return loop_winding(corner);
}

namespace {

// Close the path with the homomorphism's image of the reversed certificate
// and count determinant windings per target block.
std::vector<intk::i64> coker_loop_class(const K1Triple& t,
                                        const std::vector<Element>& cert) {
  std::vector<Element> loop = t.g;
  loop.reserve(t.g.size() + cert.size());
  for (std::size_t k = cert.size() - 1; k-- > 0;)
    loop.push_back(apply(t.hom, cert[k]));
  std::vector<intk::i64> y = path_winding(loop);
  return t.negated ? negate_vec(std::move(y)) : y;
}

}  // namespace

std::vector<intk::i64> class_of_k1(const K1Triple& t, const RelativeGroups& g) {
  if (g.k1.generators == 0) return {};
  K1Triple nt = renormalized(t);
  if (g.k1_model == GroupModel::coker_rank) {
    std::vector<Element> cert =
        unitary_certificate(nt.u, int(std::max<std::size_t>(nt.g.size(), 5)));
    return coker_loop_class(nt, cert);
  }
  // kernel_winding: the normalized unitary is itself a loop upstairs.
  std::vector<intk::i64> y = loop_winding(nt.u);
  if (nt.negated) y = negate_vec(std::move(y));
  std::vector<intk::i64> out;
  if (!intk::solve_int(g.k1_basis, y, &out))
    throw ResolveError("winding vector lies outside the kernel lattice");
  return out;
}

std::vector<intk::i64> class_of_k1(const K1Triple& t, const RelativeGroups& g,
                                   const std::vector<Element>& certificate) {
  if (g.k1_model != GroupModel::coker_rank)
    throw RegimeError(
        "a connecting certificate applies to the block-cokernel model only");
  if (certificate.size() < 2)
    throw CertificateError(
        "a connecting certificate needs at least two nodes");
  Element one = Element::unit(t.u.alg, t.u.level);
  for (const auto& node : certificate) {
    if (!node.alg.same_shape(t.u.alg) || node.level != t.u.level)
      throw CertificateError(
          "certificate nodes must match the cycle's unitary");
    if (element_diff(node * node.adjoint(), one) > kCompositeTol ||
        element_diff(node.adjoint() * node, one) > kCompositeTol)
      throw CertificateError("certificate node is not unitary");
  }
  if (element_diff(certificate.front(), one) > kCompositeTol)
    throw CertificateError("the certificate must start at the identity");
  if (element_diff(certificate.back(), t.u) > kCompositeTol)
    throw CertificateError("the certificate must end at the cycle's unitary");
  if (g.k1.generators == 0) return {};
  return coker_loop_class(t, certificate);
}

SixTermReport six_term_hom(const Hom& h, int grid) {
  if (!fits(h.source, KProfile::rank) || !fits(h.target, KProfile::rank))
    throw RegimeError("the six-term report over one homomorphism needs both algebras in the rank regime");
  RelativeGroups g = relative_groups(h, grid);
  int ka = h.source.base.block_count();
  int kb = h.target.base.block_count();
  auto [ka0, ka1] = k_groups_alg(h.source);
  auto [kb0, kb1] = k_groups_alg(h.target);
  std::string la = alg_name(h.source, "A");
  std::string lb = alg_name(h.target, "B");
  std::string lf = h.label.empty() ? "phi" : h.label;

  SixTermReport r;
  r.nodes = {"K1(" + la + ")", "K1(" + lb + ")", "K0(" + lf + ")",
             "K0(" + la + ")", "K0(" + lb + ")", "K1(" + lf + ")"};
  r.groups = {ka1, kb1, g.k0, ka0, kb0, g.k1};

  std::vector<std::vector<intk::i64>> cols;
  r.maps.push_back(intk::make_map(ka1, kb1, intk::IMatrix(0, 0), lf + "_*1"));
  r.maps.push_back(
      intk::make_map(kb1, g.k0, intk::IMatrix(g.k0.generators, 0), "mu_0"));
  cols.clear();
  for (const auto& gen : g.k0_gens) cols.push_back(nu0(gen));
  r.maps.push_back(column_map(g.k0, ka0, cols, "nu_0"));
  {
    intk::IMatrix m(kb, ka);
    for (int j = 0; j < ka; ++j) {
      Element fp = apply(h, block_projection(h.source, j));
      for (int b = 0; b < kb; ++b)
        m.at(b, j) = idempotent_rank(fp.full(0, b), 1e-6);
    }
    if (!(m == g.induced))
      throw ValidationError("pushed projection ranks disagree with the induced matrix");
    r.maps.push_back(intk::make_map(ka0, kb0, m, lf + "_*0"));
  }
  cols.clear();
  for (const auto& gen : g.k1_gens) cols.push_back(class_of_k1(gen, g));
  r.maps.push_back(column_map(kb0, g.k1, cols, "mu_1"));
  r.maps.push_back(
      intk::make_map(g.k1, ka1, intk::IMatrix(0, g.k1.generators), "nu_1"));

  r.exact = intk::check_exact(r.maps, true);
  summarize(r);
  return r;
}

SixTermReport six_term_ladder(const Ladder& l, int grid) {
  bool fd_rows = l.a.lift == LiftStyle::insert_blocks &&
                 l.b.lift == LiftStyle::insert_blocks;
  bool eval_row = l.a.lift == LiftStyle::interpolate_ends &&
                  l.b.lift == LiftStyle::identity && l.b.total.is_point() &&
                  l.b.ideal.is_zero();
  if (!fd_rows && !eval_row)
    throw RegimeError("unsupported ladder shape: need two finite-dimensional rows or an interval row over a point row with zero ideal");
  auto lerrs = validate_ladder(l);
  if (!lerrs.empty())
    throw ValidationError("ladder fails validation: " + lerrs.front());

  RelativeGroups gp = relative_groups(l.psi, grid);
  RelativeGroups gf = relative_groups(l.phi, grid);
  RelativeGroups gg = relative_groups(l.gamma, grid);

  auto require_gens = [](const char* node, int gens, bool realized) {
    if (gens > 0 && !realized)
      throw ResolveError(std::string("no realized generators at ") + node);
  };
  require_gens("K0(psi)", gp.k0.generators, gp.k0_realized);
  require_gens("K0(phi)", gf.k0.generators, gf.k0_realized);
  require_gens("K0(gamma)", gg.k0.generators, gg.k0_realized);
  require_gens("K1(psi)", gp.k1.generators, gp.k1_realized);
  require_gens("K1(phi)", gf.k1.generators, gf.k1_realized);
  require_gens("K1(gamma)", gg.k1.generators, gg.k1_realized);

  std::string lp = l.psi.label.empty() ? "psi" : l.psi.label;
  std::string lf = l.phi.label.empty() ? "phi" : l.phi.label;
  std::string lg = l.gamma.label.empty() ? "gamma" : l.gamma.label;

  SixTermReport r;
  r.nodes = {"K0(" + lp + ")", "K0(" + lf + ")", "K0(" + lg + ")",
             "K1(" + lp + ")", "K1(" + lf + ")", "K1(" + lg + ")"};
  r.groups = {gp.k0, gf.k0, gg.k0, gp.k1, gf.k1, gg.k1};

  std::vector<std::vector<intk::i64>> cols;
  for (const auto& gen : gp.k0_gens)
    cols.push_back(class_of_k0(induced_k0(gen, l.a.iota, l.b.iota, l.phi), gf));
  r.maps.push_back(column_map(gp.k0, gf.k0, cols, "iota_*0"));

  cols.clear();
  for (const auto& gen : gf.k0_gens)
    cols.push_back(class_of_k0(induced_k0(gen, l.a.pi, l.b.pi, l.gamma), gg));
  r.maps.push_back(column_map(gf.k0, gg.k0, cols, "pi_*0"));

  cols.clear();
  for (const auto& gen : gg.k0_gens) {
    K1BoundaryResult b = exp_map(renormalized(gen), l, grid);
    r.log.push_back("exp boundary defect " + std::to_string(b.ideal_defect));
    cols.push_back(class_of_k1(b.triple, gp));
  }
  r.maps.push_back(column_map(gg.k0, gp.k1, cols, "exp_0"));

  cols.clear();
  for (const auto& gen : gp.k1_gens)
    cols.push_back(class_of_k1(induced_k1(gen, l.a.iota, l.b.iota, l.phi), gf));
  r.maps.push_back(column_map(gp.k1, gf.k1, cols, "iota_*1"));

  cols.clear();
  for (const auto& gen : gf.k1_gens)
    cols.push_back(class_of_k1(induced_k1(gen, l.a.pi, l.b.pi, l.gamma), gg));
  r.maps.push_back(column_map(gf.k1, gg.k1, cols, "pi_*1"));

  cols.clear();
  for (const auto& gen : gg.k1_gens) {
    K0BoundaryResult b = index_map(renormalized(gen), l);
    r.log.push_back("index boundary defect " + std::to_string(b.ideal_defect));
    cols.push_back(class_of_k0(b.triple, gp));
  }
  r.maps.push_back(column_map(gg.k1, gp.k0, cols, "index_1"));

  r.exact = intk::check_exact(r.maps, true);
  summarize(r);
  return r;
}

}  // namespace relk
