#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "relk/errors.hpp"

namespace relk {

using cplx = std::complex<double>;

// Absolute entrywise tolerance used by membership checks.
struct Tolerance {
  double eps = 1e-9;
};

// Looser bound for postconditions of composite constructions.
inline constexpr double kCompositeTol = 1e-7;

// Dense row-major complex matrix. Products run through the runtime-selected
// array kernels.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);

  static CMatrix identity(int n);
  static CMatrix zeros(int rows, int cols);
  static CMatrix diag(const std::vector<cplx>& d);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t size() const { return a_.size(); }

  cplx& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const cplx& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator*(cplx s) const;
  CMatrix operator-() const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  CMatrix adjoint() const;

  cplx trace() const;
  // max over entries of |entry|
  double max_abs() const;
  bool all_finite() const;

  CMatrix block(int i0, int j0, int r, int c) const;
  void paste(int i0, int j0, const CMatrix& src);

  static double max_abs_diff(const CMatrix& a, const CMatrix& b);
  static CMatrix direct_sum(const CMatrix& a, const CMatrix& b);
  // a tensor identity(n): cell (i,j) becomes a[i][j] * 1_n
  static CMatrix kron_identity(const CMatrix& a, int n);

  bool approx_equal(const CMatrix& o, double eps) const {
    return max_abs_diff(*this, o) <= eps;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix operator*(cplx s, const CMatrix& m);

// Determinant via LU with partial pivoting.
cplx det(const CMatrix& m);

// Solve a x = b for x (b may have several columns). Throws
// SingularOnSupportError when a has no usable pivot.
CMatrix solve(const CMatrix& a, const CMatrix& b);

// Membership flags at tolerance eps (absolute, entrywise).
struct Classification {
  bool idempotent = false;        // |m^2 - m| <= eps
  bool self_adjoint = false;      // |m - m*| <= eps
  bool projection = false;        // idempotent and self-adjoint
  bool partial_isometry = false;  // |m m* m - m| <= eps
  bool unitary = false;           // |m*m - 1| <= eps and |m m* - 1| <= eps
};

Classification classify(const CMatrix& m, double eps = 1e-9);

}  // namespace relk
