#include "relk/algebra.hpp"

#include <cmath>

#include "doctest.h"
#include "relk/errors.hpp"
#include "relk/linalg.hpp"

using namespace relk;

namespace {

Element body_element(const Algebra& a, int level,
                     const std::vector<CMatrix>& blocks) {
  Element x = Element::zero(a, level);
  for (size_t b = 0; b < blocks.size(); ++b) x.body[0][b] = blocks[b];
  return x;
}

CMatrix m1(cplx v) { return CMatrix::from_rows({{v}}); }

}  // namespace

TEST_CASE("diagonal embedding doubles a scalar value") {
  Algebra c = point_algebra(make_fd({1}, "C"));
  Algebra cc = point_algebra(make_fd({1, 1}, "C+C"));
  Hom d = block_hom(c, cc, {{1}, {1}});

  Element five = body_element(c, 1, {m1(5.0)});
  Element img = apply(d, five);
  CHECK(img.body[0][0].at(0, 0) == cplx(5.0, 0.0));
  CHECK(img.body[0][1].at(0, 0) == cplx(5.0, 0.0));
  CHECK(img.scalar.max_abs() == 0.0);

  CHECK(apply(d, Element::unit(c, 2)).approx_equal(Element::unit(cc, 2), 0.0));

  intk::IMatrix k = k0_matrix(d);
  CHECK(k.rows() == 2);
  CHECK(k.cols() == 1);
  CHECK(k.at(0, 0) == 1);
  CHECK(k.at(1, 0) == 1);
}

TEST_CASE("pair-of-scalars into the diagonal of a full matrix block") {
  Algebra a = point_algebra(make_fd({1, 1}, "A"));
  Algebra b = point_algebra(make_fd({2}, "B"));
  Hom phi = block_hom(a, b, {{1, 1}});

  Element e1 = body_element(a, 1, {m1(1.0), m1(0.0)});
  Element e2 = body_element(a, 1, {m1(0.0), m1(1.0)});
  Element f1 = apply(phi, e1);
  Element f2 = apply(phi, e2);
  CHECK(f1.body[0][0].approx_equal(CMatrix::diag({1.0, 0.0}), 1e-15));
  CHECK(f2.body[0][0].approx_equal(CMatrix::diag({0.0, 1.0}), 1e-15));
  CHECK(idempotent_rank(f1.full(0, 0)) == 1);

  intk::IMatrix k = k0_matrix(phi);
  CHECK(k.rows() == 1);
  CHECK(k.at(0, 0) == 1);
  CHECK(k.at(0, 1) == 1);

  // A realizing unitary conjugates the arrangement.
  CMatrix swap = CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  Hom phi_u = block_hom(a, b, {{1, 1}}, {swap});
  Element g1 = apply(phi_u, e1);
  CHECK(g1.body[0][0].approx_equal(CMatrix::diag({0.0, 1.0}), 1e-15));
}

TEST_CASE("level layout of an applied homomorphism") {
  Algebra a = point_algebra(make_fd({1, 1}, "A"));
  Algebra b = point_algebra(make_fd({2}, "B"));
  Hom phi = block_hom(a, b, {{1, 1}});

  Element x = Element::zero(a, 2);
  x.body[0][0] = CMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  x.body[0][1] = CMatrix::from_rows({{5.0, 6.0}, {7.0, 8.0}});
  Element y = apply(phi, x);
  // Level cell (r, c) of the image block is diag(x0(r, c), x1(r, c)).
  CMatrix f = y.full(0, 0);
  CHECK(f.at(0, 0) == cplx(1.0, 0.0));
  CHECK(f.at(1, 1) == cplx(5.0, 0.0));
  CHECK(f.at(0, 2) == cplx(2.0, 0.0));
  CHECK(f.at(1, 3) == cplx(6.0, 0.0));
  CHECK(f.at(2, 0) == cplx(3.0, 0.0));
  CHECK(f.at(3, 3) == cplx(8.0, 0.0));
  CHECK(f.at(0, 1) == cplx(0.0, 0.0));
}

TEST_CASE("homomorphism kinds are *-multiplicative on probes") {
  Algebra a = point_algebra(make_fd({1, 2}, "A"));
  Algebra b = point_algebra(make_fd({3, 2}, "B"));
  CMatrix u = unitary_eig(CMatrix::from_rows({{0.0, 1.0, 0.0},
                                              {0.0, 0.0, 1.0},
                                              {1.0, 0.0, 0.0}}))
                  .vectors;
  Hom phi = block_hom(a, b, {{1, 1}, {0, 1}}, {u, CMatrix::identity(2)});

  Element x = Element::zero(a, 2);
  Element y = Element::zero(a, 2);
  int k = 1;
  for (auto* e : {&x, &y}) {
    for (auto& blk : e->body[0]) {
      for (int r = 0; r < blk.rows(); ++r) {
        for (int c = 0; c < blk.cols(); ++c) {
          blk.at(r, c) = cplx(std::cos(0.7 * k), std::sin(0.3 * k));
          ++k;
        }
      }
    }
    e->scalar = CMatrix::from_rows({{cplx(0.2, 0.1), 0.0},
                                    {cplx(0.0, -0.4), cplx(1.0, 0.0)}});
  }
  CHECK(hom_mult_defect(phi, x, y) < 1e-12);

  Row r = interval_row(make_fd({2}, "F"), 9);
  Element fx = Element::zero(r.total, 1);
  Element fy = Element::zero(r.total, 1);
  for (int i = 0; i < 9; ++i) {
    double s = r.total.interval_s(i);
    fx.body[i][0] = CMatrix::from_rows({{s, 0.0}, {0.0, cplx(0.0, s * s)}});
    fy.body[i][0] = CMatrix::from_rows({{std::sin(s), 1.0}, {1.0, 0.0}});
  }
  CHECK(hom_mult_defect(r.pi, fx, fy) < 1e-12);

  Row pr = polar_row(make_fd({1}, "F"), 7);
  Element px = Element::zero(pr.total, 1);
  for (int ir = 0; ir < 7; ++ir) {
    for (int it = 0; it < 7; ++it) {
      px.body[pr.total.polar_index(ir, it)][0] =
          m1(pr.total.polar_point(ir, it));
    }
  }
  CHECK(hom_mult_defect(pr.pi, px, px) < 1e-12);
  CHECK(validate_element(apply(pr.pi, px)).empty());
}

TEST_CASE("classification distributes over direct sums and padding") {
  Algebra a = point_algebra(make_fd({2}, "A"));
  Element p = body_element(a, 1, {CMatrix::diag({1.0, 0.0})});
  Element q = body_element(a, 1, {CMatrix::diag({0.0, 1.0})});
  Element s = direct_sum(p, q);
  CHECK(classify_element(p).projection);
  CHECK(classify_element(s).projection);
  CHECK(classify_element(pad_to(p, 3)).projection);
  CHECK(s.level == 2);

  Element v = body_element(a, 1, {CMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}})});
  CHECK(classify_element(v).partial_isometry);
  CHECK(!classify_element(v).projection);
  CHECK(classify_element(direct_sum(v, v)).partial_isometry);
}

TEST_CASE("sampled element validation flags boundary violations") {
  Algebra sf = interval_algebra(make_fd({1}, "F"), Boundary::vanish_ends, 5);
  Element x = Element::zero(sf, 1);
  for (int i = 0; i < 5; ++i) x.body[i][0] = m1(std::sin(3.14159 * i / 4.0));
  CHECK(!validate_element(x).empty());  // sin(pi) is not exactly zero
  x.body[0][0] = m1(0.0);
  x.body[4][0] = m1(0.0);
  CHECK(validate_element(x).empty());

  Algebra circ = interval_algebra(make_fd({1}, "F"), Boundary::endpoints_equal, 5);
  Element z = Element::zero(circ, 1);
  for (int i = 0; i < 5; ++i) z.body[i][0] = m1(cis_2pi(i / 4.0));
  CHECK(validate_element(z).empty());
  z.body[4][0] = m1(0.5);
  CHECK(!validate_element(z).empty());

  Algebra disk = polar_algebra(make_fd({1}, "F"), Boundary::none, 5);
  Element w = Element::zero(disk, 1);
  for (int ir = 0; ir < 5; ++ir) {
    for (int it = 0; it < 5; ++it) {
      w.body[disk.polar_index(ir, it)][0] = m1(disk.polar_point(ir, it));
    }
  }
  CHECK(validate_element(w).empty());
  w.body[disk.polar_index(2, 4)][0] = m1(9.0);
  CHECK(!validate_element(w).empty());
}

TEST_CASE("spectral helpers on elements") {
  Algebra a = point_algebra(make_fd({2}, "A"));
  // Non-self-adjoint idempotent.
  Element e = body_element(a, 1, {CMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}})});
  CHECK(classify_element(e).idempotent);
  Element r = element_rho(e);
  CHECK(classify_element(r, 1e-10).projection);
  CHECK(element_diff(e * r, r) < 1e-12);
  CHECK(element_diff(r * e, e) < 1e-12);

  Element p = body_element(a, 1, {CMatrix::diag({1.0, 0.0})});
  CHECK(element_diff(element_proj_exp(p, 0.25), element_exp_2pi(p, 0.25)) < 1e-12);
  CHECK(element_diff(element_proj_exp(p, 1.0), Element::unit(a, 1)) < 1e-15);

  // Self-adjoint unitary with a self-adjoint unitary scalar part.
  Algebra c1 = point_algebra(make_fd({1}, "C"));
  Element u = Element::zero(c1, 2);
  u.scalar = CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  u.body[0][0] = CMatrix::from_rows({{0.6, -0.2}, {-0.2, -0.6}});
  CHECK(classify_element(u).unitary);
  CHECK(element_diff(element_sau_path(u, 1.0), u) < 1e-12);
  CHECK(element_diff(element_sau_path(u, 0.0), Element::unit(c1, 2)) < 1e-15);

  Element w = body_element(
      a, 1, {CMatrix::from_rows({{cis_2pi(0.2), 0.0}, {0.0, cis_2pi(0.45)}}) -
             CMatrix::identity(2)});
  w.scalar = m1(1.0);
  Element lw = element_unitary_log(w);
  CHECK(element_diff(element_exp_2pi(lw.scale(1.0 / (2.0 * 3.14159265358979323846)), 1.0), w) < 1e-12);

  Element inv = element_inverse(w);
  CHECK(element_diff(inv * w, Element::unit(a, 1)) < 1e-12);
}

TEST_CASE("k0 matrices compose through stages") {
  Row r = interval_row(make_fd({1}, "F"), 9);
  Algebra b = point_algebra(make_fd({2}, "B"));
  Hom gamma = block_hom(r.quotient, b, {{1, 1}});
  Hom phi = compose_homs(gamma, r.pi);
  intk::IMatrix k = k0_matrix(phi);
  CHECK(k.rows() == 1);
  CHECK(k.cols() == 1);
  CHECK(k.at(0, 0) == 2);
  CHECK_THROWS_AS(k0_matrix(r.iota), RegimeError);
}

TEST_CASE("lift and corestrict round trips") {
  // Block-subset row.
  Row fd = fd_row(make_fd({2, 3}, "B"), {0});
  Element qq = Element::zero(fd.quotient, 2);
  qq.scalar = CMatrix::diag({1.0, 0.5});
  for (int r = 0; r < 6; ++r) qq.body[0][0].at(r, r % 3) = cplx(0.1 * r, 1.0);
  Element lifted = sa_lift(fd, qq);
  CHECK(element_diff(apply(fd.pi, lifted), qq) < 1e-14);
  // An ideal element pushed into the total algebra corestricts back exactly.
  Element ideal_x = Element::zero(fd.ideal, 1);
  ideal_x.body[0][0] = CMatrix::from_rows({{1.0, cplx(0.0, 2.0)}, {0.0, 3.0}});
  double defect = -1.0;
  Element back = corestrict(fd, apply(fd.iota, ideal_x), &defect);
  CHECK(defect == 0.0);
  CHECK(element_diff(back, ideal_x) < 1e-14);
  // Corestricting the lift of a quotient element reports its full size.
  double leak = 0.0;
  corestrict(fd, lifted, &leak);
  CHECK(leak > 0.9);

  // Interval row: lift is linear in s and hits the endpoints exactly.
  Row iv = interval_row(make_fd({1}, "F"), 9);
  Element pq = Element::zero(iv.quotient, 1);
  pq.body[0][0] = m1(2.0);
  pq.body[0][1] = m1(cplx(0.0, 4.0));
  Element il = sa_lift(iv, pq);
  CHECK(element_diff(apply(iv.pi, il), pq) < 1e-15);
  CHECK(il.body[4][0].at(0, 0) == cplx(1.0, 2.0));

  // Polar row: radial taper vanishes at the center, restricts to the data.
  Row pr = polar_row(make_fd({1}, "F"), 7);
  Element cq = Element::zero(pr.quotient, 1);
  for (int it = 0; it < 7; ++it) cq.body[it][0] = m1(cis_2pi(it / 6.0));
  Element pl = sa_lift(pr, cq);
  CHECK(element_diff(apply(pr.pi, pl), cq) < 1e-15);
  CHECK(pl.body[pr.total.polar_index(0, 3)][0].max_abs() == 0.0);
  CHECK(validate_element(pl).empty());

  // Corestriction defect records what had to be thrown away.
  Element bad = Element::zero(iv.total, 1);
  bad.body[0][0] = m1(0.25);
  double d2 = 0.0;
  Element fixed = corestrict(iv, bad, &d2);
  CHECK(d2 == 0.25);
  CHECK(validate_element(fixed).empty());
}

TEST_CASE("ladders of both row kinds commute") {
  // Block-subset ladder.
  Row a = fd_row(make_fd({1, 2}, "A"), {0});
  Row b = fd_row(make_fd({2, 3}, "B"), {0});
  Hom psi = block_hom(a.ideal, b.ideal, {{2}});
  Hom phi = block_hom(a.total, b.total, {{2, 0}, {0, 1}});
  Hom gamma = block_hom(a.quotient, b.quotient, {{1}});
  Ladder l1{a, b, psi, phi, gamma, "fd"};
  CHECK(validate_ladder(l1).empty());

  // Interval-evaluation ladder over a matrix target.
  Row ia = interval_row(make_fd({1}, "C"), 9);
  Algebra m2 = point_algebra(make_fd({2}, "M2"));
  Row ib = zero_ideal_row(m2);
  Hom gamma2 = block_hom(ia.quotient, m2, {{1, 1}});
  Hom phi2 = compose_homs(gamma2, ia.pi);
  Hom psi2 = zero_hom(ia.ideal, ib.ideal);
  Ladder l2{ia, ib, psi2, phi2, gamma2, "interval"};
  CHECK(validate_ladder(l2).empty());

  // A broken vertical map is reported.
  Hom phi_bad = block_hom(a.total, b.total, {{0, 0}, {1, 1}});
  Ladder l3{a, b, psi, phi_bad, gamma, "broken"};
  CHECK(!validate_ladder(l3).empty());
}

TEST_CASE("cone elements validate the endpoint identity") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Algebra b = point_algebra(make_fd({1, 1}, "B"));
  Hom d = block_hom(a, b, {{1}, {1}});
  Element x = body_element(a, 1, {m1(1.0)});
  std::vector<Element> path;
  for (int i = 0; i <= 4; ++i) {
    double s = i / 4.0;
    path.push_back(body_element(b, 1, {m1(s), m1(s)}));
  }
  CHECK_NOTHROW(cone_element(x, path, d));
  path.back() = body_element(b, 1, {m1(0.5), m1(1.0)});
  CHECK_THROWS_AS(cone_element(x, path, d, 1e-9), EndpointMismatchError);
}
