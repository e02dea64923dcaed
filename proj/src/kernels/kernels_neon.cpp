#include <arm_neon.h>

#include "relk/kernels.hpp"

// NEON variants. A float64x2_t holds one complex double as [re im].
// Same mul/mul/sub(add) sequence as the scalar kernel, so results match
// it bit for bit.

namespace relk::kern {

namespace {

// [t1.0 - t2.0, t1.1 + t2.1]
inline float64x2_t caddsub(float64x2_t t1, float64x2_t t2) {
  double lo = vgetq_lane_f64(t1, 0) - vgetq_lane_f64(t2, 0);
  double hi = vgetq_lane_f64(t1, 1) + vgetq_lane_f64(t2, 1);
  float64x2_t r = vdupq_n_f64(lo);
  return vsetq_lane_f64(hi, r, 1);
}

inline float64x2_t cmul(double are, double aim, float64x2_t b) {
  float64x2_t t1 = vmulq_f64(vdupq_n_f64(are), b);
  float64x2_t bs = vextq_f64(b, b, 1);
  float64x2_t t2 = vmulq_f64(vdupq_n_f64(aim), bs);
  return caddsub(t1, t2);
}

void mul_acc_neon(cplx* c, const cplx* a, const cplx* b, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const cplx* arow = a + std::size_t(i) * k;
    cplx* crow = c + std::size_t(i) * n;
    for (int p = 0; p < k; ++p) {
      const double are = arow[p].real(), aim = arow[p].imag();
      const cplx* brow = b + std::size_t(p) * n;
      for (int j = 0; j < n; ++j) {
        float64x2_t vb = vld1q_f64(reinterpret_cast<const double*>(brow + j));
        float64x2_t vc = vld1q_f64(reinterpret_cast<double*>(crow + j));
        vc = vaddq_f64(vc, cmul(are, aim, vb));
        vst1q_f64(reinterpret_cast<double*>(crow + j), vc);
      }
    }
  }
}

void axpy_neon(cplx* y, cplx alpha, const cplx* x, std::size_t len) {
  const double are = alpha.real(), aim = alpha.imag();
  for (std::size_t i = 0; i < len; ++i) {
    float64x2_t vx = vld1q_f64(reinterpret_cast<const double*>(x + i));
    float64x2_t vy = vld1q_f64(reinterpret_cast<double*>(y + i));
    vy = vaddq_f64(vy, cmul(are, aim, vx));
    vst1q_f64(reinterpret_cast<double*>(y + i), vy);
  }
}

void scale_neon(cplx* x, cplx alpha, std::size_t len) {
  const double are = alpha.real(), aim = alpha.imag();
  for (std::size_t i = 0; i < len; ++i) {
    float64x2_t vx = vld1q_f64(reinterpret_cast<const double*>(x + i));
    vst1q_f64(reinterpret_cast<double*>(x + i), cmul(are, aim, vx));
  }
}

double max_sqdiff_neon(const cplx* x, const cplx* y, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    float64x2_t vx = vld1q_f64(reinterpret_cast<const double*>(x + i));
    float64x2_t vy = vld1q_f64(reinterpret_cast<const double*>(y + i));
    float64x2_t d = vsubq_f64(vx, vy);
    float64x2_t sq = vmulq_f64(d, d);
    const double s = vgetq_lane_f64(sq, 0) + vgetq_lane_f64(sq, 1);
    if (s > best) best = s;
  }
  return best;
}

double max_sqabs_neon(const cplx* x, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    float64x2_t vx = vld1q_f64(reinterpret_cast<const double*>(x + i));
    float64x2_t sq = vmulq_f64(vx, vx);
    const double s = vgetq_lane_f64(sq, 0) + vgetq_lane_f64(sq, 1);
    if (s > best) best = s;
  }
  return best;
}

const Kernels neon_impl = {
    mul_acc_neon, axpy_neon, scale_neon, max_sqdiff_neon, max_sqabs_neon, "neon",
};

}  // namespace

const Kernels* neon_kernels() { return &neon_impl; }

}  // namespace relk::kern
