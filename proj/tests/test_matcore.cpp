#include <doctest.h>

#include <cmath>
#include <random>

#include "relk/cmatrix.hpp"
#include "relk/linalg.hpp"

using namespace relk;

namespace {

const cplx I(0.0, 1.0);

CMatrix random_hermitian(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = d(rng);
    for (int j = i + 1; j < n; ++j) {
      cplx z(d(rng), d(rng));
      m.at(i, j) = z;
      m.at(j, i) = std::conj(z);
    }
  }
  return m;
}

CMatrix random_unitary(std::mt19937& rng, int n) {
  return herm_eig(random_hermitian(rng, n)).vectors;
}

bool is_unitary(const CMatrix& u, double eps) {
  return (u.adjoint() * u).approx_equal(CMatrix::identity(u.rows()), eps) &&
         (u * u.adjoint()).approx_equal(CMatrix::identity(u.rows()), eps);
}

CMatrix reconstruct(const HermEig& e) {
  std::vector<cplx> evals(e.evals.begin(), e.evals.end());
  return e.vectors * CMatrix::diag(evals) * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("matrix product against a worked 2x2 value") {
  auto a = CMatrix::from_rows({{cplx(1, 1), cplx(0, 2)}, {cplx(3, 0), cplx(-1, -1)}});
  auto b = CMatrix::from_rows({{cplx(2, 0), cplx(0, 1)}, {cplx(1, -1), cplx(4, 0)}});
  // by hand: row 1 = [(2+2i)+(2+2i), (-1+i)+(0+8i)], row 2 = [(6)+(-2), (3i)+(-4-4i)]
  auto expect =
      CMatrix::from_rows({{cplx(4, 4), cplx(-1, 9)}, {cplx(4, 0), cplx(-4, -1)}});
  CHECK((a * b).approx_equal(expect, 1e-15));
}

TEST_CASE("adjoint, trace, block and direct sum") {
  auto a = CMatrix::from_rows({{cplx(1, 2), cplx(3, -4)}, {cplx(0, 1), cplx(5, 0)}});
  auto ad = a.adjoint();
  CHECK(ad.at(0, 1) == std::conj(a.at(1, 0)));
  CHECK(a.trace() == cplx(6, 2));

  auto s = CMatrix::direct_sum(a, CMatrix::identity(1));
  CHECK(s.rows() == 3);
  CHECK(s.at(2, 2) == cplx(1, 0));
  CHECK(s.at(0, 2) == cplx(0, 0));
  CHECK(s.block(0, 0, 2, 2).approx_equal(a, 0.0));

  auto k = CMatrix::kron_identity(a, 2);
  CHECK(k.rows() == 4);
  CHECK(k.at(0, 0) == a.at(0, 0));
  CHECK(k.at(1, 1) == a.at(0, 0));
  CHECK(k.at(0, 2) == a.at(0, 1));
  CHECK(k.at(0, 3) == cplx(0, 0));
}

TEST_CASE("determinant and solve") {
  auto a = CMatrix::from_rows({{cplx(1, 0), cplx(2, 0)}, {cplx(3, 0), cplx(4, 0)}});
  CHECK(std::abs(det(a) - cplx(-2, 0)) < 1e-12);

  auto b = CMatrix::from_rows({{cplx(5, 0)}, {cplx(6, 0)}});
  auto x = solve(a, b);
  CHECK((a * x).approx_equal(b, 1e-12));

  auto sing = CMatrix::from_rows({{cplx(1, 0), cplx(1, 0)}, {cplx(1, 0), cplx(1, 0)}});
  CHECK_THROWS_AS(solve(sing, b), SingularOnSupportError);
}

TEST_CASE("classification flags") {
  auto p = CMatrix::diag({1.0, 0.0});
  auto cp = classify(p);
  CHECK(cp.projection);
  CHECK(cp.idempotent);
  CHECK(cp.partial_isometry);
  CHECK(!cp.unitary);

  auto e = CMatrix::from_rows({{cplx(1, 0), cplx(1, 0)}, {cplx(0, 0), cplx(0, 0)}});
  auto ce = classify(e);
  CHECK(ce.idempotent);
  CHECK(!ce.self_adjoint);
  CHECK(!ce.projection);

  auto u = CMatrix::from_rows({{cplx(0, 0), cplx(1, 0)}, {cplx(1, 0), cplx(0, 0)}});
  CHECK(classify(u).unitary);

  auto v = CMatrix::from_rows({{cplx(0, 0), cplx(1, 0)}, {cplx(0, 0), cplx(0, 0)}});
  auto cv = classify(v);
  CHECK(cv.partial_isometry);
  CHECK(!cv.idempotent);
}

TEST_CASE("hermitian eigensolver on a known 2x2") {
  // [[2, i], [-i, 2]] has eigenvalues 3 and 1
  auto m = CMatrix::from_rows({{cplx(2, 0), I}, {-I, cplx(2, 0)}});
  auto e = herm_eig(m);
  CHECK(e.evals[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.evals[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(is_unitary(e.vectors, 1e-12));
  CHECK(reconstruct(e).approx_equal(m, 1e-12));
}

TEST_CASE("hermitian eigensolver on random and degenerate inputs") {
  std::mt19937 rng(42);
  for (int n : {1, 2, 3, 5, 8, 12}) {
    auto m = random_hermitian(rng, n);
    auto e = herm_eig(m);
    CHECK(is_unitary(e.vectors, 1e-10));
    CHECK(reconstruct(e).approx_equal(m, 1e-9));
    for (int i = 0; i + 1 < n; ++i) CHECK(e.evals[i] >= e.evals[i + 1]);
  }
  // repeated eigenvalues
  auto d = CMatrix::diag({2.0, 2.0, 2.0, -1.0});
  std::mt19937 rng2(3);
  auto u = random_unitary(rng2, 4);
  auto m = u * d * u.adjoint();
  auto e = herm_eig(m);
  CHECK(e.evals[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(e.evals[2] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(e.evals[3] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(reconstruct(e).approx_equal(m, 1e-9));

  CHECK_THROWS_AS(herm_eig(CMatrix::from_rows({{cplx(0, 0), cplx(1, 0)},
                                               {cplx(0, 0), cplx(0, 0)}})),
                  NotHermitianError);
}

TEST_CASE("unitary eigensolver splits cosine-degenerate pairs") {
  // eigenvalues e^{i a} and e^{-i a} share the cosine but not the sine
  double a = 1.0;
  auto d = CMatrix::diag({std::polar(1.0, a), std::polar(1.0, -a), cplx(1, 0)});
  std::mt19937 rng(11);
  auto w = random_unitary(rng, 3);
  auto u = w * d * w.adjoint();
  auto e = unitary_eig(u);
  CMatrix rec = e.vectors * CMatrix::diag(e.evals) * e.vectors.adjoint();
  CHECK(rec.approx_equal(u, 1e-8));
  for (const auto& z : e.evals) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
}

TEST_CASE("unitary log and exp round-trip") {
  std::mt19937 rng(5);
  for (int n : {1, 2, 4}) {
    auto u = random_unitary(rng, n);
    auto h = unitary_log(u);
    CHECK(classify(h, 1e-9).self_adjoint);
    // exp(i h) via the 2 pi normalized exponential: exp(2 pi i (h / 2 pi))
    auto uu = herm_exp_2pi(h * cplx(1.0 / (2.0 * M_PI), 0.0), 1.0);
    CHECK(uu.approx_equal(u, 1e-9));
  }
  // principal branch lands in (-pi, pi]
  auto m1 = CMatrix::diag({cplx(-1.0, 0.0)});
  auto h = unitary_log(m1);
  CHECK(h.at(0, 0).real() == doctest::Approx(M_PI));
}

TEST_CASE("cis_2pi is exact at integers") {
  CHECK(cis_2pi(0.0) == cplx(1, 0));
  CHECK(cis_2pi(1.0) == cplx(1, 0));
  CHECK(cis_2pi(-3.0) == cplx(1, 0));
  CHECK(std::abs(cis_2pi(0.25) - I) < 1e-15);
  CHECK(std::abs(cis_2pi(0.5) + cplx(1, 0)) < 1e-15);
}

TEST_CASE("projection exponential closed form matches the spectral route") {
  std::mt19937 rng(8);
  auto w = random_unitary(rng, 3);
  auto p = w * CMatrix::diag({1.0, 1.0, 0.0}) * w.adjoint();
  for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    auto closed = herm_exp_2pi(p, t);
    // spectral: exp(2 pi i t p) = w diag(e^{2 pi i t}, e^{2 pi i t}, 1) w*
    auto spec = w * CMatrix::diag({cis_2pi(t), cis_2pi(t), cplx(1, 0)}) * w.adjoint();
    CHECK(closed.approx_equal(spec, 1e-12));
  }
  CHECK(herm_exp_2pi(p, 1.0).approx_equal(CMatrix::identity(3), 1e-12));
}

TEST_CASE("self-adjoint unitary path hits both endpoints") {
  auto u = CMatrix::from_rows({{cplx(0, 0), cplx(1, 0)}, {cplx(1, 0), cplx(0, 0)}});
  CHECK(sau_path_point(u, 0.0).approx_equal(CMatrix::identity(2), 1e-14));
  CHECK(sau_path_point(u, 1.0).approx_equal(u, 1e-14));
  CHECK(is_unitary(sau_path_point(u, 0.37), 1e-12));
}

TEST_CASE("unitary geodesic endpoints are exact") {
  std::mt19937 rng(21);
  auto u0 = random_unitary(rng, 3);
  auto u1 = random_unitary(rng, 3);
  auto path = unitary_geodesic(u0, u1, 9);
  REQUIRE(path.size() == 9);
  CHECK(CMatrix::max_abs_diff(path.front(), u0) == 0.0);
  CHECK(CMatrix::max_abs_diff(path.back(), u1) == 0.0);
  for (const auto& u : path) CHECK(is_unitary(u, 1e-10));
}

TEST_CASE("inverse square root on the support") {
  std::mt19937 rng(13);
  auto w = random_unitary(rng, 3);
  auto m = w * CMatrix::diag({4.0, 9.0, 0.0}) * w.adjoint();
  auto support = w * CMatrix::diag({1.0, 1.0, 0.0}) * w.adjoint();
  auto s = inv_sqrt_psd(m, support);
  CHECK((s * m * s).approx_equal(support, 1e-9));

  // mass outside the declared support is rejected
  CHECK_THROWS_AS(inv_sqrt_psd(m, CMatrix::diag({1.0, 0.0, 0.0})),
                  SingularOnSupportError);
}

TEST_CASE("rho projection on a worked idempotent") {
  auto e = CMatrix::from_rows({{cplx(1, 0), cplx(1, 0)}, {cplx(0, 0), cplx(0, 0)}});
  auto r = rho_projection(e);
  CHECK(r.approx_equal(CMatrix::diag({1.0, 0.0}), 1e-12));
  CHECK((r * e).approx_equal(e, 1e-12));
  CHECK((e * r).approx_equal(r, 1e-12));
  CHECK(classify(r).projection);

  CHECK_THROWS_AS(rho_projection(CMatrix::from_rows({{cplx(2, 0)}})), NotIdempotentError);
}

TEST_CASE("polar partial isometry of an invertible corner") {
  // b = 2 v for a partial isometry v: polar part recovers v
  auto v = CMatrix::from_rows({{cplx(0, 0), cplx(1, 0)}, {cplx(0, 0), cplx(0, 0)}});
  auto src = CMatrix::diag({0.0, 1.0});
  auto dst = CMatrix::diag({1.0, 0.0});
  auto w = polar_partial_isometry(v * cplx(2.0, 0.0), src, dst);
  CHECK(w.approx_equal(v, 1e-10));
  CHECK((w.adjoint() * w).approx_equal(src, 1e-9));
  CHECK((w * w.adjoint()).approx_equal(dst, 1e-9));
}

TEST_CASE("corner inverse") {
  auto b = CMatrix::from_rows({{cplx(0, 0), cplx(0, 0)}, {cplx(3, 4), cplx(0, 0)}});
  auto src = CMatrix::diag({1.0, 0.0});
  auto dst = CMatrix::diag({0.0, 1.0});
  auto binv = corner_inverse(b, src, dst);
  CHECK((binv * b).approx_equal(src, 1e-9));
  CHECK((b * binv).approx_equal(dst, 1e-9));
}

TEST_CASE("idempotent rank") {
  CHECK(idempotent_rank(CMatrix::diag({1.0, 1.0, 0.0})) == 2);
  auto e = CMatrix::from_rows({{cplx(1, 0), cplx(5, 0)}, {cplx(0, 0), cplx(0, 0)}});
  CHECK(idempotent_rank(e) == 1);
}
