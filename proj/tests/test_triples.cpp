#include "relk/triples.hpp"

#include <cmath>
#include <random>

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

// Scalar 0/1 diagonal conjugated by a random unitary of the unitization.
Element rand_projection(const Algebra& a, int level, std::mt19937& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  CMatrix diag = CMatrix::zeros(level, level);
  diag.at(0, 0) = 1.0;  // keep at least one direction
  for (int i = 1; i < level; ++i) diag.at(i, i) = bit(rng);
  Element w = rand_unitary(a, level, rng);
  return w * Element::scalar_element(a, diag) * w.adjoint();
}

}  // namespace

TEST_CASE("degree zero validation reports each broken identity") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom phi = block_hom(a, b, {{2}});

  K0Triple good{Element::unit(a, 1), Element::unit(a, 1), Element::unit(b, 1),
                phi};
  CHECK(validate_k0(good).empty());

  K0Triple shrunk = good;
  shrunk.v = shrunk.v.scale(0.5);
  auto rep = validate_k0(shrunk);
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("v* v != phi(p)") == 0);

  K0Triple crooked = good;
  crooked.q = Element::scalar_element(a, m1(0.5));
  rep = validate_k0(crooked);
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("q is not a projection") == 0);

  K0Triple lopsided = good;
  lopsided.p = Element::unit(a, 2);
  rep = validate_k0(lopsided);
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("levels differ") == 0);
}

TEST_CASE("raw validation checks idempotents, support and corner ranks") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Hom id = identity_hom(a);
  Element e = body_element(
      a, 2, {CMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}})});
  Element f =
      body_element(a, 2, {CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}})});
  RawK0Triple raw{e, f, e, id};  // f b e = e for b = e
  CHECK(validate_raw_k0(raw).empty());

  RawK0Triple flat = raw;
  flat.b = Element::zero(a, 2);
  auto rep = validate_raw_k0(flat);
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("b is not corner invertible") == 0);

  RawK0Triple soft = raw;
  soft.e = body_element(
      a, 2, {CMatrix::from_rows({{0.5, 0.0}, {0.0, 0.0}})});
  rep = validate_raw_k0(soft);
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("e is not idempotent") == 0);

  RawK0Triple leaky = raw;
  leaky.b = Element::unit(a, 2);
  rep = validate_raw_k0(leaky);
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("b is not supported") == 0);
}

TEST_CASE("normalization of a tilted rank-one cycle pins the scalar parts") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Hom id = identity_hom(a);
  Element e = body_element(
      a, 2, {CMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}})});
  Element f =
      body_element(a, 2, {CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}})});
  NormalizedK0 nk = normalize_k0({e, f, e, id});
  CHECK(nk.log.size() >= 5);
  CHECK(validate_k0(nk.triple).empty());

  CMatrix top = CMatrix::zeros(4, 4);
  top.at(0, 0) = 1.0;
  top.at(1, 1) = 1.0;
  CHECK(CMatrix::max_abs_diff(nk.triple.p.scalar, top) < 1e-9);
  CHECK(CMatrix::max_abs_diff(nk.triple.q.scalar, top) == 0.0);
  CHECK(CMatrix::max_abs_diff(nk.triple.v.scalar, top) < 1e-9);
  CHECK(nk.triple.q.max_abs() == 1.0);  // honest scalar element
}

TEST_CASE("normalization of random raw cycles validates and logs") {
  Algebra a = point_algebra(make_fd({2}, "M2"));
  Algebra b = point_algebra(make_fd({2, 2}, "M2+M2"));
  Hom phi = block_hom(a, b, {{1}, {1}});
  std::mt19937 rng(7);
  for (int it = 0; it < 20; ++it) {
    Element p = rand_projection(a, 2, rng);
    Element w = rand_unitary(a, 2, rng);
    Element q = w * p * w.adjoint();
    Element bmid = apply(phi, w * p);
    Element s = Element::unit(a, 2) + rand_herm(a, 2, rng).scale(0.2);
    Element r = Element::unit(a, 2) + rand_herm(a, 2, rng).scale(0.2);
    Element e = s * p * element_inverse(s);
    Element f = r * q * element_inverse(r);
    Element braw = apply(phi, f) * bmid * apply(phi, e);
    RawK0Triple raw{e, f, braw, phi};
    REQUIRE(validate_raw_k0(raw).empty());
    NormalizedK0 nk = normalize_k0(raw);
    CHECK(validate_k0(nk.triple, kCompositeTol).empty());
    CMatrix top = CMatrix::zeros(4, 4);
    top.at(0, 0) = 1.0;
    top.at(1, 1) = 1.0;
    CHECK(CMatrix::max_abs_diff(nk.triple.p.scalar, top) < kCompositeTol);
    CHECK(CMatrix::max_abs_diff(nk.triple.v.scalar, top) < kCompositeTol);
  }
}

TEST_CASE("normalization keeps honest winding loops intact") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Hom id = identity_hom(a);
  CMatrix pd = CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  Element e = body_element(a, 2, {pd});
  int grid = 17;
  std::vector<Element> g;
  for (int i = 0; i < grid; ++i) {
    double t = double(i) / (grid - 1);
    CMatrix m = CMatrix::zeros(2, 2);
    m.at(0, 0) = cis_2pi(t);
    g.push_back(body_element(a, 2, {m}));
  }
  RawK1Triple raw{e, e, g, id};
  CHECK(validate_raw_k1(raw).empty());
  NormalizedK1 nk = normalize_k1(raw);
  CHECK(validate_k1(nk.triple).empty());
  CHECK(element_diff(nk.triple.p, Element::unit(a, 2)) == 0.0);
  CHECK(element_diff(nk.triple.u, Element::unit(a, 2)) < 1e-9);
  // winding survives: the middle node still sits at -1 in the corner
  CMatrix mid = nk.triple.g[grid / 2].full(0, 0);
  CHECK(std::abs(mid.at(0, 0) - cplx(-1.0, 0.0)) < 1e-9);
  CHECK(std::abs(mid.at(1, 1) - cplx(1.0, 0.0)) < 1e-9);
}

TEST_CASE("group operations compose and cancel supports") {
  Algebra a = point_algebra(make_fd({1, 1}, "C+C"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom phi = block_hom(a, b, {{1, 1}});
  Element p = body_element(a, 1, {m1(0.0), m1(1.0)});
  Element q = body_element(a, 1, {m1(1.0), m1(0.0)});
  Element v =
      body_element(b, 1, {CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})});
  K0Triple sigma{p, q, v, phi};
  REQUIRE(validate_k0(sigma).empty());

  K0Triple neg = negate_k0(sigma);
  CHECK(validate_k0(neg).empty());
  K0Triple sum = add_k0(sigma, neg);
  CHECK(validate_k0(sum).empty());
  CHECK(sum.p.level == 2);

  K0Triple round = compose_k0(sigma, neg);
  CHECK(validate_k0(round).empty());
  CHECK(element_diff(round.p, round.q) == 0.0);
  CHECK(element_diff(round.v, apply(phi, p)) < 1e-12);

  K0Triple other{p, p, apply(phi, p), phi};
  CHECK_THROWS_AS(compose_k0(sigma, other), ValidationError);
}

TEST_CASE("negation witness certifies cancellation in degree zero") {
  Algebra a = point_algebra(make_fd({1, 1}, "C+C"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom phi = block_hom(a, b, {{1, 1}});
  Element p = body_element(a, 1, {m1(0.0), m1(1.0)});
  Element q = body_element(a, 1, {m1(1.0), m1(0.0)});
  Element v =
      body_element(b, 1, {CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})});
  K0Triple sigma{p, q, v, phi};

  NegationWitness w = negate_witness(sigma, 33);
  CHECK(validate_k0(w.summed).empty());
  CHECK(validate_k0(w.rotated, kCompositeTol).empty());
  CHECK(verify_iso(w.summed, w.rotated, w.iso).empty());
  CHECK(verify_elementary_k0(w.rotated, w.path).empty());
}

TEST_CASE("whitehead family certifies cancellation in degree one") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Algebra b = point_algebra(make_fd({1, 1}, "C+C"));
  Hom phi = block_hom(a, b, {{1}, {1}});
  int grid = 17;
  std::vector<Element> g;
  for (int i = 0; i < grid; ++i) {
    double t = double(i) / (grid - 1);
    Element x = Element::unit(b, 1);
    x.body[0][0] = m1(cis_2pi(t) - 1.0);
    g.push_back(x);
  }
  K1Triple sigma{Element::unit(a, 1), Element::unit(a, 1), g, phi, false};
  REQUIRE(validate_k1(sigma).empty());

  K1Triple tau = add_k1(sigma, negate_k1(sigma));
  CHECK(validate_k1(tau).empty());
  HomotopyCertificateK1 cert = whitehead_certificate(sigma, 17);
  CHECK(verify_elementary_k1(tau, cert).empty());
}

TEST_CASE("rotation path stays corner invertible between its endpoints") {
  Algebra a = point_algebra(make_fd({1}, "C"));
  Hom id = identity_hom(a);
  Element e = body_element(
      a, 2, {CMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}})});
  Element f =
      body_element(a, 2, {CMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}})});
  Element binv = f;  // corner inverse of b = e between e and f
  auto path = rotation_path_raw(e, f, e, binv, id, 17);
  REQUIRE(path.size() == 17);

  Element fe = apply(id, e), ff = apply(id, f);
  Element start = level_block_2x2(&fe, nullptr, nullptr, &ff);
  CHECK(element_diff(path.front(), start) < 1e-12);
  Element nb = -e;
  Element end = level_block_2x2(nullptr, &binv, &nb, nullptr);
  CHECK(element_diff(path.back(), end) < 1e-12);

  Element ef = direct_sum(e, f);
  for (int i : {0, 4, 8, 12, 16}) {
    RawK0Triple slice{ef, ef, path[i], id};
    CHECK(validate_raw_k0(slice).empty());
  }
}

TEST_CASE("verifiers reject tampered certificates") {
  Algebra a = point_algebra(make_fd({1, 1}, "C+C"));
  Algebra b = point_algebra(make_fd({2}, "M2"));
  Hom phi = block_hom(a, b, {{1, 1}});
  Element p = body_element(a, 1, {m1(0.0), m1(1.0)});
  Element q = body_element(a, 1, {m1(1.0), m1(0.0)});
  Element v =
      body_element(b, 1, {CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})});
  K0Triple sigma{p, q, v, phi};
  NegationWitness w = negate_witness(sigma, 33);

  auto bent = w.path;
  bent[16] = bent[16].scale(1.01);
  CHECK(!verify_elementary_k0(w.rotated, bent).empty());

  IsoCertificateK0 swapped{w.iso.d, w.iso.c};
  CHECK(!verify_iso(w.summed, w.rotated, swapped).empty());

  K1Triple loop{Element::unit(a, 1), Element::unit(a, 1),
                {apply(phi, Element::unit(a, 1)),
                 apply(phi, Element::unit(a, 1))},
                phi,
                false};
  K1Triple shifted = loop;
  shifted.negated = true;
  CHECK_THROWS_AS(add_k1(loop, shifted), ValidationError);
  K1Triple coarse = loop;
  coarse.g.push_back(coarse.g.back());
  CHECK_THROWS_AS(add_k1(loop, coarse), GridError);
}
