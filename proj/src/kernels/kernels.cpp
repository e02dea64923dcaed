#include "relk/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace relk::kern {

namespace {

void mul_acc_ref(cplx* c, const cplx* a, const cplx* b, int m, int k, int n) {
  // i-k-j order; per (i,j) the accumulation over k happens in index order,
  // which the SIMD variants preserve lane-for-lane.
  for (int i = 0; i < m; ++i) {
    const cplx* arow = a + std::size_t(i) * k;
    cplx* crow = c + std::size_t(i) * n;
    for (int p = 0; p < k; ++p) {
      const double are = arow[p].real(), aim = arow[p].imag();
      const cplx* brow = b + std::size_t(p) * n;
      for (int j = 0; j < n; ++j) {
        const double bre = brow[j].real(), bim = brow[j].imag();
        const double pre = are * bre - aim * bim;
        const double pim = are * bim + aim * bre;
        crow[j] = cplx(crow[j].real() + pre, crow[j].imag() + pim);
      }
    }
  }
}

void axpy_ref(cplx* y, cplx alpha, const cplx* x, std::size_t len) {
  const double are = alpha.real(), aim = alpha.imag();
  for (std::size_t i = 0; i < len; ++i) {
    const double xre = x[i].real(), xim = x[i].imag();
    const double pre = are * xre - aim * xim;
    const double pim = are * xim + aim * xre;
    y[i] = cplx(y[i].real() + pre, y[i].imag() + pim);
  }
}

void scale_ref(cplx* x, cplx alpha, std::size_t len) {
  const double are = alpha.real(), aim = alpha.imag();
  for (std::size_t i = 0; i < len; ++i) {
    const double xre = x[i].real(), xim = x[i].imag();
    x[i] = cplx(are * xre - aim * xim, are * xim + aim * xre);
  }
}

double max_sqdiff_ref(const cplx* x, const cplx* y, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double dre = x[i].real() - y[i].real();
    const double dim = x[i].imag() - y[i].imag();
    const double sq = dre * dre + dim * dim;
    if (sq > best) best = sq;
  }
  return best;
}

double max_sqabs_ref(const cplx* x, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double sq = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (sq > best) best = sq;
  }
  return best;
}

const Kernels scalar_kernels = {
    mul_acc_ref, axpy_ref, scale_ref, max_sqdiff_ref, max_sqabs_ref, "scalar",
};

}  // namespace

#if defined(RELK_HAVE_AVX2_TU)
const Kernels* avx2_kernels();  // defined in kernels_avx2.cpp
#endif
#if defined(RELK_HAVE_NEON_TU)
const Kernels* neon_kernels();  // defined in kernels_neon.cpp
#endif

namespace {

std::vector<const Kernels*> detect_available() {
  std::vector<const Kernels*> out;
  out.push_back(&scalar_kernels);
#if defined(RELK_HAVE_AVX2_TU)
  if (__builtin_cpu_supports("avx2")) out.push_back(avx2_kernels());
#endif
#if defined(RELK_HAVE_NEON_TU)
  out.push_back(neon_kernels());
#endif
  return out;
}

const Kernels* find_by_name(const std::string& name) {
  for (const Kernels* k : available())
    if (name == k->name) return k;
  return nullptr;
}

const Kernels* pick_default() {
  if (const char* env = std::getenv("RELK_SIMD"); env && *env) {
    std::string want(env);
    if (want != "auto") {
      if (const Kernels* k = find_by_name(want)) return k;
      // Unsupported request from the environment falls back to scalar
      // rather than aborting library initialization.
      return &scalar_kernels;
    }
  }
  return available().back();
}

const Kernels* g_active = nullptr;

}  // namespace

std::vector<const Kernels*> available() {
  static const std::vector<const Kernels*> v = detect_available();
  return v;
}

const Kernels& active() {
  if (!g_active) g_active = pick_default();
  return *g_active;
}

void select(const std::string& name) {
  if (name == "auto") {
    g_active = available().back();
    return;
  }
  const Kernels* k = find_by_name(name);
  if (!k) throw std::invalid_argument("unknown or unsupported kernel variant: " + name);
  g_active = k;
}

}  // namespace relk::kern
