#include "relk/cmatrix.hpp"

#include <cmath>

#include "relk/kernels.hpp"

namespace relk {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  a_.assign(std::size_t(rows) * cols, cplx(0.0, 0.0));
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::zeros(int rows, int cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diag(const std::vector<cplx>& d) {
  CMatrix m(int(d.size()), int(d.size()));
  for (int i = 0; i < int(d.size()); ++i) m.at(i, i) = d[i];
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const int r = int(rows.size());
  const int c = r ? int(rows.begin()->size()) : 0;
  CMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (int(row.size()) != c) throw DimensionError("ragged initializer");
    int j = 0;
    for (cplx v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix r = *this;
  r += o;
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix r = *this;
  r -= o;
  return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("add: shape mismatch");
  kern::active().axpy(a_.data(), cplx(1.0, 0.0), o.a_.data(), a_.size());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sub: shape mismatch");
  kern::active().axpy(a_.data(), cplx(-1.0, 0.0), o.a_.data(), a_.size());
  return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("mul: inner dimension mismatch");
  CMatrix r(rows_, o.cols_);
  kern::active().mul_acc(r.a_.data(), a_.data(), o.a_.data(), rows_, cols_, o.cols_);
  return r;
}

CMatrix CMatrix::operator*(cplx s) const {
  CMatrix r = *this;
  r *= s;
  return r;
}

CMatrix& CMatrix::operator*=(cplx s) {
  kern::active().scale(a_.data(), s, a_.size());
  return *this;
}

CMatrix CMatrix::operator-() const { return *this * cplx(-1.0, 0.0); }

CMatrix operator*(cplx s, const CMatrix& m) { return m * s; }

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

double CMatrix::max_abs() const {
  return std::sqrt(kern::active().max_sqabs(a_.data(), a_.size()));
}

bool CMatrix::all_finite() const {
  for (const cplx& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

CMatrix CMatrix::block(int i0, int j0, int r, int c) const {
  if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
    throw DimensionError("block: out of range");
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
  return m;
}

void CMatrix::paste(int i0, int j0, const CMatrix& src) {
  if (i0 < 0 || j0 < 0 || i0 + src.rows_ > rows_ || j0 + src.cols_ > cols_)
    throw DimensionError("paste: out of range");
  for (int i = 0; i < src.rows_; ++i)
    for (int j = 0; j < src.cols_; ++j) at(i0 + i, j0 + j) = src.at(i, j);
}

double CMatrix::max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionError("max_abs_diff: shape mismatch");
  return std::sqrt(kern::active().max_sqdiff(a.a_.data(), b.a_.data(), a.a_.size()));
}

CMatrix CMatrix::direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  m.paste(0, 0, a);
  m.paste(a.rows_, a.cols_, b);
  return m;
}

CMatrix CMatrix::kron_identity(const CMatrix& a, int n) {
  CMatrix m(a.rows_ * n, a.cols_ * n);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      const cplx v = a.at(i, j);
      if (v == cplx(0.0, 0.0)) continue;
      for (int d = 0; d < n; ++d) m.at(i * n + d, j * n + d) = v;
    }
  return m;
}

namespace {

// LU with partial pivoting, in place; returns pivot row permutation sign,
// or 0 if a pivot column is numerically empty.
int lu_decompose(CMatrix& a, std::vector<int>& perm) {
  const int n = a.rows();
  perm.resize(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    const cplx d = a.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = a.at(i, k) / d;
      a.at(i, k) = f;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return sign;
}

}  // namespace

cplx det(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("det: not square");
  CMatrix a = m;
  std::vector<int> perm;
  const int sign = lu_decompose(a, perm);
  if (sign == 0) return 0.0;
  cplx d = double(sign);
  for (int i = 0; i < a.rows(); ++i) d *= a.at(i, i);
  return d;
}

CMatrix solve(const CMatrix& a0, const CMatrix& b) {
  if (!a0.is_square()) throw DimensionError("solve: matrix not square");
  if (a0.rows() != b.rows()) throw DimensionError("solve: rhs row mismatch");
  CMatrix a = a0;
  std::vector<int> perm;
  if (lu_decompose(a, perm) == 0)
    throw SingularOnSupportError("solve: singular matrix");
  const int n = a.rows(), m = b.cols();
  CMatrix x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) x.at(i, j) = b.at(perm[i], j);
  // forward substitution (unit lower)
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) {
      const cplx f = a.at(i, k);
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < m; ++j) x.at(i, j) -= f * x.at(k, j);
    }
  // back substitution
  for (int k = n - 1; k >= 0; --k) {
    const cplx d = a.at(k, k);
    for (int j = 0; j < m; ++j) x.at(k, j) /= d;
    for (int i = 0; i < k; ++i) {
      const cplx f = a.at(i, k);
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < m; ++j) x.at(i, j) -= f * x.at(k, j);
    }
  }
  return x;
}

Classification classify(const CMatrix& m, double eps) {
  Classification c;
  if (!m.is_square()) {
    // rectangular matrices can still be partial isometries
    const CMatrix vsv = m * m.adjoint() * m;
    c.partial_isometry = CMatrix::max_abs_diff(vsv, m) <= eps;
    return c;
  }
  const CMatrix sq = m * m;
  const CMatrix adj = m.adjoint();
  c.idempotent = CMatrix::max_abs_diff(sq, m) <= eps;
  c.self_adjoint = CMatrix::max_abs_diff(m, adj) <= eps;
  c.projection = c.idempotent && c.self_adjoint;
  const CMatrix vsv = m * adj * m;
  c.partial_isometry = CMatrix::max_abs_diff(vsv, m) <= eps;
  const CMatrix eye = CMatrix::identity(m.rows());
  c.unitary = CMatrix::max_abs_diff(adj * m, eye) <= eps &&
              CMatrix::max_abs_diff(m * adj, eye) <= eps;
  return c;
}

}  // namespace relk
