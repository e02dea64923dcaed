#include "relk/maps.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "relk/errors.hpp"
#include "relk/linalg.hpp"

using namespace relk;

namespace {

CMatrix m1(cplx v) { return CMatrix::from_rows({{v}}); }

Element body_element(const Algebra& a, int level,
                     const std::vector<CMatrix>& blocks) {
  Element x = Element::zero(a, level);
  for (size_t b = 0; b < blocks.size(); ++b) x.body[0][b] = blocks[b];
  return x;
}

Element rand_herm(const Algebra& a, int level, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  Element x = Element::zero(a, level);
  auto fill = [&](CMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = cplx(d(rng), d(rng));
    m = (m + m.adjoint()) * cplx(0.5, 0.0);
  };
  fill(x.scalar);
  for (auto& node : x.body)
    for (auto& blk : node) fill(blk);
  return x;
}

Element rand_unitary(const Algebra& a, int level, std::mt19937& rng) {
  return element_exp_2pi(rand_herm(a, level, rng), 0.31);
}

// The rank-one difference cycle over C (+) C -> M2, x -> diag(x).
K0Triple rank_one_cycle() {
  Algebra a = point_algebra(make_fd({1, 1}, "CC"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom phi = block_hom(a, b, {{1, 1}});
  Element p = body_element(a, 1, {CMatrix::zeros(1, 1), m1(1.0)});
  Element q = body_element(a, 1, {m1(1.0), CMatrix::zeros(1, 1)});
  CMatrix e12 = CMatrix::zeros(2, 2);
  e12.at(0, 1) = 1.0;
  Element v = body_element(b, 1, {e12});
  return {p, q, v, phi};
}

// The winding cycle over C -> C (+) C, x -> (x, x).
K1Triple winding_cycle(int grid) {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Algebra b = point_algebra(make_fd({1, 1}, "CC"));
  Hom phi = block_hom(a, b, {{1}, {1}});
  std::vector<Element> g;
  for (int i = 0; i < grid; ++i) {
    double t = double(i) / (grid - 1);
    Element gi = Element::unit(b, 1);
    gi.body[0][0] = m1(cis_2pi(t) - 1.0);
    g.push_back(gi);
  }
  return {Element::unit(a, 1), Element::unit(a, 1), std::move(g), phi,
          false};
}

// Identity ladder between two copies of the evaluation row over C.
Ladder identity_interval_ladder(int grid) {
  Row ra = interval_row(make_fd({1}, "C"), grid, "top");
  Row rb = interval_row(make_fd({1}, "C"), grid, "bottom");
  Hom psi = block_hom(ra.ideal, rb.ideal, {{1}});
  Hom phi = block_hom(ra.total, rb.total, {{1}});
  Hom gamma = block_hom(ra.quotient, rb.quotient, {{1, 0}, {0, 1}});
  return {ra, rb, psi, phi, gamma, "id ladder"};
}

}  // namespace

TEST_CASE("comparison maps build valid cycles and rank data") {
  std::mt19937 rng(11);
  Algebra a = point_algebra(make_fd({1, 1}, "CC"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom phi = block_hom(a, b, {{1, 1}});

  Element u = rand_unitary(b, 2, rng);
  K0Triple c = mu0(u, phi);
  CHECK(validate_k0(c).empty());
  for (auto d : nu0(c)) CHECK(d == 0);

  auto ranks = nu0(rank_one_cycle());
  REQUIRE(ranks.size() == 2);
  CHECK(ranks[0] == -1);
  CHECK(ranks[1] == 1);

  CMatrix d10 = CMatrix::diag({cplx(1.0), cplx(0.0)});
  Element w = rand_unitary(b, 2, rng);
  Element P = w * Element::scalar_element(b, d10) * w.adjoint();
  Element Q = Element::scalar_element(b, d10);
  K1Triple m = mu1(P, Q, phi, 17);
  CHECK(validate_k1(m).empty());
  CHECK(element_diff(m.g.front(), Element::unit(b, 2)) <= 1e-12);
  CHECK(element_diff(m.g.back(), Element::unit(b, 2)) <= 1e-12);
  CHECK(element_diff(nu1(m), Element::unit(a, 2)) <= 1e-12);

  Element Q2 = Element::scalar_element(b, CMatrix::identity(2));
  CHECK_THROWS_AS(mu1(P, Q2, phi, 17), ValidationError);
  CHECK_THROWS_AS(mu0(Element::unit(a, 1), phi), AlgebraMismatchError);
}

TEST_CASE("splittings over the zero homomorphism invert the rank maps") {
  std::mt19937 rng(13);
  Algebra a = point_algebra(make_fd({1, 1}, "CC"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom z = zero_hom(a, b);

  // opposite-block projections with zero scalar part
  Element p = body_element(a, 2,
                           {CMatrix::diag({cplx(1.0), cplx(0.0)}),
                            CMatrix::zeros(2, 2)});
  Element q = body_element(a, 2,
                           {CMatrix::zeros(2, 2),
                            CMatrix::diag({cplx(1.0), cplx(0.0)})});
  K0Triple s = lambda0(p, q, z);
  CHECK(validate_k0(s).empty());
  auto d = nu0(s);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1);
  CHECK(d[1] == -1);

  // scalar-heavy projections through a random rotation
  CMatrix d10 = CMatrix::diag({cplx(1.0), cplx(0.0)});
  Element w1 = rand_unitary(a, 2, rng);
  Element w2 = rand_unitary(a, 2, rng);
  Element p2 = w1 * Element::scalar_element(a, d10) * w1.adjoint();
  Element q2 = w2 * Element::scalar_element(a, d10) * w2.adjoint();
  K0Triple s2 = lambda0(p2, q2, z);
  CHECK(validate_k0(s2).empty());

  Element u = rand_unitary(a, 2, rng);
  K1Triple s3 = lambda1(u, z, 17);
  CHECK(validate_k1(s3).empty());
  CHECK(element_diff(nu1(s3), u) == 0.0);

  Hom phi = block_hom(a, b, {{1, 1}});
  CHECK_THROWS_AS(lambda0(p, q, phi), RegimeError);
  CHECK_THROWS_AS(lambda1(u, phi, 17), RegimeError);
}

TEST_CASE("projection path runs from the scalar corner to the image") {
  K0Triple raw = rank_one_cycle();
  K0Triple t =
      normalize_k0({raw.p, raw.q, raw.v, raw.hom}).triple;
  int m = t.p.level;

  Element dbl = doubling_unitary(t.v);
  CHECK(classify_element(dbl, kCompositeTol).unitary);

  auto pv = p_v_path(t, 17);
  REQUIRE(pv.size() == 17);
  CMatrix e2 = CMatrix::direct_sum(t.q.scalar, CMatrix::zeros(m, m));
  CHECK(element_diff(pv.front(),
                     Element::scalar_element(t.v.alg, e2)) <= 1e-7);
  Element target = direct_sum(apply(t.hom, t.p),
                              Element::zero(t.v.alg, m));
  CHECK(element_diff(pv.back(), target) <= 1e-7);
  for (const auto& node : pv)
    CHECK(classify_element(node, 1e-7).projection);

  // identity connecting element: the path collapses
  Algebra c = point_algebra(make_fd({1}, "C"));
  Hom idh = identity_hom(c);
  K0Triple flat{Element::unit(c, 1), Element::unit(c, 1),
                Element::unit(c, 1), idh};
  auto still = p_v_path(flat, 5);
  for (const auto& node : still)
    CHECK(element_diff(node, still.front()) == 0.0);

  CHECK_THROWS_AS(p_v_path(raw, 9), ValidationError);
}

TEST_CASE("degree zero suspension yields based loops over the suspended map") {
  K0Triple raw = rank_one_cycle();
  K0Triple t = normalize_k0({raw.p, raw.q, raw.v, raw.hom}).triple;

  K1Triple s = bott(t, 9);
  CHECK(validate_k1(s).empty());
  CHECK(!s.hom.is_zero());
  CHECK(s.hom.source.boundary == Boundary::vanish_ends);
  REQUIRE(s.g.size() == 9);

  // both loop families are exactly based: zero body at the ends
  int last = s.u.alg.grid - 1;
  for (int b = 0; b < s.u.alg.base.block_count(); ++b) {
    CHECK(s.u.body[0][b].max_abs() == 0.0);
    CHECK(s.u.body[last][b].max_abs() == 0.0);
  }
  for (const auto& gj : s.g)
    for (int b = 0; b < gj.alg.base.block_count(); ++b) {
      CHECK(gj.body[0][b].max_abs() == 0.0);
      CHECK(gj.body[gj.alg.grid - 1][b].max_abs() == 0.0);
    }

  CHECK_THROWS_AS(bott(raw, 9), ValidationError);
  CHECK_THROWS_AS(bott(t, 1), GridError);
}

TEST_CASE("degree one suspension yields a valid relative cycle") {
  K1Triple raw = winding_cycle(17);
  K1Triple t = normalize_k1({raw.p, raw.u, raw.g, raw.hom}).triple;

  K0Triple s = theta(t);
  CHECK(validate_k0(s).empty());
  CHECK(s.p.level == 2 * t.p.level);
  for (int i = 0; i < s.p.alg.node_count(); ++i)
    for (int b = 0; b < s.p.alg.base.block_count(); ++b)
      CHECK(classify(s.p.full(i, b), 1e-7).projection);
  // the middle projection is exactly the scalar corner at both ends
  int last = s.p.alg.grid - 1;
  for (int b = 0; b < s.p.alg.base.block_count(); ++b) {
    CHECK(s.p.body[0][b].max_abs() <= 1e-12);
    CHECK(s.p.body[last][b].max_abs() <= 1e-12);
  }

  K1Triple off = t;
  off.p = Element::scalar_element(off.p.alg, m1(0.0));
  CHECK_THROWS_AS(theta(off), ValidationError);
}

TEST_CASE("degree one boundary lifts through a block ladder") {
  Row ra = fd_row(make_fd({1, 1}, "A"), {0}, "top");
  Row rb = fd_row(make_fd({2, 1}, "B"), {0}, "bottom");
  Hom psi = block_hom(ra.ideal, rb.ideal, {{1}});
  Hom phi = block_hom(ra.total, rb.total, {{1, 1}, {0, 1}});
  Hom gamma = block_hom(ra.quotient, rb.quotient, {{1}});
  Ladder l{ra, rb, psi, phi, gamma, "corner ladder"};
  CHECK(validate_ladder(l).empty());

  int grid = 17;
  std::vector<Element> g;
  for (int i = 0; i < grid; ++i) {
    double t = double(i) / (grid - 1);
    Element gi = Element::unit(ra.quotient, 1);
    gi.body[0][0] = m1(cis_2pi(t) - 1.0);
    g.push_back(gi);
  }
  K1Triple t{Element::unit(ra.quotient, 1), Element::unit(ra.quotient, 1),
             std::move(g), gamma, false};
  REQUIRE(validate_k1(t).empty());

  auto res = index_map(t, l);
  CHECK(validate_k0(res.triple).empty());
  CHECK(res.ideal_defect <= 1e-9);
  CHECK(res.log.size() >= 3);
  CMatrix e2 = CMatrix::diag({cplx(1.0), cplx(0.0)});
  CHECK(element_diff(res.triple.p,
                     Element::scalar_element(ra.ideal, e2)) <= 1e-9);
  CHECK(element_diff(res.triple.v,
                     Element::scalar_element(rb.ideal, e2)) <= 1e-9);
}

TEST_CASE("degree one boundary falls back to supplied lifts") {
  int grid = 17;
  Ladder l = identity_interval_ladder(grid);
  CHECK(validate_ladder(l).empty());

  std::vector<Element> g;
  for (int i = 0; i < grid; ++i) {
    double t = double(i) / (grid - 1);
    Element gi = Element::unit(l.a.quotient, 1);
    gi.body[0][0] = m1(cis_2pi(t) - 1.0);
    g.push_back(gi);
  }
  K1Triple t{Element::unit(l.a.quotient, 1), Element::unit(l.a.quotient, 1),
             std::move(g), l.gamma, false};
  REQUIRE(validate_k1(t).empty());

  // endpoint interpolation of a winding loop is nowhere near unitary
  CHECK_THROWS_AS(index_map(t, l), LiftError);

  IndexLifts lifts;
  lifts.w = Element::unit(l.a.total, 2);
  for (int i = 0; i < grid; ++i) {
    double ti = double(i) / (grid - 1);
    Element hi = Element::unit(l.b.total, 1);
    for (int r = 0; r < grid; ++r) {
      double s = l.b.total.interval_s(r);
      hi.body[r][0] = m1(cis_2pi(ti * (1.0 - s)) - 1.0);
    }
    lifts.h.push_back(hi);
  }
  auto res = index_map(t, l, lifts);
  CHECK(validate_k0(res.triple).empty());
  CHECK(res.ideal_defect <= 1e-9);
  CMatrix e2 = CMatrix::diag({cplx(1.0), cplx(0.0)});
  CHECK(element_diff(res.triple.q,
                     Element::scalar_element(res.triple.q.alg, e2)) == 0.0);

  IndexLifts bad = lifts;
  bad.w = bad.w.scale(1.1);
  CHECK_THROWS_AS(index_map(t, l, bad), LiftError);
  bad = lifts;
  bad.h.pop_back();
  CHECK_THROWS_AS(index_map(t, l, bad), LiftError);
  bad = lifts;
  bad.h.back() = bad.h.back().scale(-1.0);
  CHECK_THROWS_AS(index_map(t, l, bad), LiftError);
}

TEST_CASE("degree zero boundary exponentiates through an evaluation ladder") {
  int grid = 17;
  Ladder l = identity_interval_ladder(grid);

  // connecting unitary with different values at the two evaluation points
  Element v = Element::unit(l.b.quotient, 1);
  v.body[0][1] = m1(-2.0);
  K0Triple t{Element::unit(l.a.quotient, 1), Element::unit(l.a.quotient, 1),
             v, l.gamma};
  REQUIRE(validate_k0(t).empty());

  auto res = exp_map(t, l, grid);
  CHECK(res.triple.negated);
  CHECK(validate_k1(res.triple).empty());
  CHECK(res.ideal_defect <= 1e-9);
  CHECK(res.log.size() >= 4);
  REQUIRE(res.triple.g.size() == size_t(grid));
  CHECK(element_diff(res.triple.u,
                     Element::unit(res.triple.u.alg, 2)) <= 1e-12);
  CHECK(element_diff(res.triple.g.front(),
                     Element::unit(res.triple.g.front().alg, 2)) <= 1e-12);

  Algebra other = point_algebra(make_fd({2}, "M2"));
  K0Triple wrong{Element::unit(other, 1), Element::unit(other, 1),
                 Element::unit(other, 1), identity_hom(other)};
  CHECK_THROWS_AS(exp_map(wrong, l, grid), AlgebraMismatchError);
}

TEST_CASE("cone comparisons enforce their endpoint contracts") {
  K0Triple raw0 = rank_one_cycle();
  K0Triple t0 = normalize_k0({raw0.p, raw0.q, raw0.v, raw0.hom}).triple;
  ConeElement c0 = cone_delta0(t0, 17);
  REQUIRE(c0.f.size() == 17);
  CHECK(c0.a.level == 2 * t0.p.level);
  CHECK(element_diff(c0.f.back(), apply(t0.hom, c0.a)) <= 1e-7);

  K1Triple raw1 = winding_cycle(17);
  K1Triple t1 = normalize_k1({raw1.p, raw1.u, raw1.g, raw1.hom}).triple;
  ConeElement c1 = cone_delta1(t1);
  CHECK(c1.f.size() == t1.g.size());
  CHECK(element_diff(c1.a, t1.u) == 0.0);

  K1Triple doctored = t1;
  doctored.g.front().body[0][0] = m1(0.25);
  CHECK_THROWS_AS(cone_delta1(doctored), EndpointMismatchError);
}
