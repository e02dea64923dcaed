#include <immintrin.h>

#include "relk/kernels.hpp"

// AVX2 variants. A __m256d holds two complex doubles as [re0 im0 re1 im1].
// Complex multiply by a broadcast scalar (ar + i*ai):
//   t1 = ar * [re im ...],  t2 = ai * [im re ...] (pairwise swap),
//   addsub(t1, t2) = [t1.0 - t2.0, t1.1 + t2.1, ...]
//                  = [ar*re - ai*im, ar*im + ai*re, ...]
// which is the same mul/mul/sub (resp. add) sequence as the scalar kernel,
// so results match it bit for bit.

namespace relk::kern {

namespace {

inline __m256d cmul_broadcast(__m256d vre, __m256d vim, __m256d b) {
  __m256d t1 = _mm256_mul_pd(vre, b);
  __m256d bs = _mm256_permute_pd(b, 0b0101);
  __m256d t2 = _mm256_mul_pd(vim, bs);
  return _mm256_addsub_pd(t1, t2);
}

void mul_acc_avx2(cplx* c, const cplx* a, const cplx* b, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const cplx* arow = a + std::size_t(i) * k;
    cplx* crow = c + std::size_t(i) * n;
    for (int p = 0; p < k; ++p) {
      const double are = arow[p].real(), aim = arow[p].imag();
      const __m256d vre = _mm256_set1_pd(are);
      const __m256d vim = _mm256_set1_pd(aim);
      const cplx* brow = b + std::size_t(p) * n;
      int j = 0;
      for (; j + 2 <= n; j += 2) {
        __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j));
        __m256d vc = _mm256_loadu_pd(reinterpret_cast<double*>(crow + j));
        vc = _mm256_add_pd(vc, cmul_broadcast(vre, vim, vb));
        _mm256_storeu_pd(reinterpret_cast<double*>(crow + j), vc);
      }
      for (; j < n; ++j) {
        const double bre = brow[j].real(), bim = brow[j].imag();
        const double pre = are * bre - aim * bim;
        const double pim = are * bim + aim * bre;
        crow[j] = cplx(crow[j].real() + pre, crow[j].imag() + pim);
      }
    }
  }
}

void axpy_avx2(cplx* y, cplx alpha, const cplx* x, std::size_t len) {
  const double are = alpha.real(), aim = alpha.imag();
  const __m256d vre = _mm256_set1_pd(are);
  const __m256d vim = _mm256_set1_pd(aim);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<double*>(y + i));
    vy = _mm256_add_pd(vy, cmul_broadcast(vre, vim, vx));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i), vy);
  }
  for (; i < len; ++i) {
    const double xre = x[i].real(), xim = x[i].imag();
    const double pre = are * xre - aim * xim;
    const double pim = are * xim + aim * xre;
    y[i] = cplx(y[i].real() + pre, y[i].imag() + pim);
  }
}

void scale_avx2(cplx* x, cplx alpha, std::size_t len) {
  const double are = alpha.real(), aim = alpha.imag();
  const __m256d vre = _mm256_set1_pd(are);
  const __m256d vim = _mm256_set1_pd(aim);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul_broadcast(vre, vim, vx));
  }
  for (; i < len; ++i) {
    const double xre = x[i].real(), xim = x[i].imag();
    x[i] = cplx(are * xre - aim * xim, are * xim + aim * xre);
  }
}

// |z|^2 per complex entry: square all doubles, then hadd pairs adjacent
// lanes, matching the scalar re*re + im*im single-rounding add.
double max_sqdiff_avx2(const cplx* x, const cplx* y, std::size_t len) {
  __m256d vbest = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    __m256d d = _mm256_sub_pd(vx, vy);
    __m256d sq = _mm256_mul_pd(d, d);
    __m256d s = _mm256_hadd_pd(sq, sq);  // [|z0|^2, |z0|^2, |z1|^2, |z1|^2]
    vbest = _mm256_max_pd(vbest, s);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vbest);
  double best = lanes[0];
  if (lanes[2] > best) best = lanes[2];
  for (; i < len; ++i) {
    const double dre = x[i].real() - y[i].real();
    const double dim = x[i].imag() - y[i].imag();
    const double sq = dre * dre + dim * dim;
    if (sq > best) best = sq;
  }
  return best;
}

double max_sqabs_avx2(const cplx* x, std::size_t len) {
  __m256d vbest = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d sq = _mm256_mul_pd(vx, vx);
    __m256d s = _mm256_hadd_pd(sq, sq);
    vbest = _mm256_max_pd(vbest, s);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vbest);
  double best = lanes[0];
  if (lanes[2] > best) best = lanes[2];
  for (; i < len; ++i) {
    const double sq = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (sq > best) best = sq;
  }
  return best;
}

const Kernels avx2_impl = {
    mul_acc_avx2, axpy_avx2, scale_avx2, max_sqdiff_avx2, max_sqabs_avx2, "avx2",
};

}  // namespace

const Kernels* avx2_kernels() { return &avx2_impl; }

}  // namespace relk::kern
