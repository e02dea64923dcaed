#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

// Low-level array kernels for dense complex arithmetic. Scalar reference
// implementations plus SIMD variants selected at runtime; all variants
// execute the same rounding sequence (kernel translation units are built
// with -ffp-contract=off), so results are bitwise identical across them.

namespace relk::kern {

using cplx = std::complex<double>;

struct Kernels {
  // c (m x n) += a (m x k) * b (k x n), all row-major contiguous
  void (*mul_acc)(cplx* c, const cplx* a, const cplx* b, int m, int k, int n);
  // y += alpha * x
  void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t len);
  // x *= alpha
  void (*scale)(cplx* x, cplx alpha, std::size_t len);
  // max over i of |x[i] - y[i]|^2
  double (*max_sqdiff)(const cplx* x, const cplx* y, std::size_t len);
  // max over i of |x[i]|^2
  double (*max_sqabs)(const cplx* x, std::size_t len);
  const char* name;
};

// Active variant. Resolution order: explicit select(), env RELK_SIMD
// ("scalar", "avx2", "neon", "auto"), best supported variant.
const Kernels& active();

// All variants compiled in and supported on this machine.
std::vector<const Kernels*> available();

// Force a variant by name ("auto" restores runtime detection).
// Throws std::invalid_argument for unknown/unsupported names.
void select(const std::string& name);

}  // namespace relk::kern
