#include "relk/intk.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace relk::intk {

namespace {

[[noreturn]] void overflow() { throw OverflowError("integer overflow in exact arithmetic"); }

i64 iabs(i64 a) {
  if (a == std::numeric_limits<i64>::min()) overflow();
  return a < 0 ? -a : a;
}

// Quotient with remainder of minimal absolute value.
i64 round_div(i64 a, i64 b) {
  if (b == -1) return checked_neg(a);
  i64 q = a / b;
  i64 r = a % b;
  // 2|r| > |b|  <=>  |r| > |b| - |r|, overflow-free
  if (r != 0 && iabs(r) > iabs(b) - iabs(r)) q = checked_add(q, ((a < 0) == (b < 0)) ? 1 : -1);
  return q;
}

}  // namespace

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) overflow();
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

i64 checked_neg(i64 a) { return checked_sub(0, a); }

IMatrix IMatrix::identity(int n) {
  IMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMatrix IMatrix::from_rows(std::initializer_list<std::initializer_list<i64>> rows) {
  int r = int(rows.size());
  int c = r == 0 ? 0 : int(rows.begin()->size());
  IMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (int(row.size()) != c) throw DimensionError("ragged integer matrix literal");
    int j = 0;
    for (i64 x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

IMatrix IMatrix::operator*(const IMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("integer matrix product shape mismatch");
  IMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      i64 aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, o.at(k, j)));
    }
  return r;
}

IMatrix IMatrix::operator-(const IMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("integer matrix shape mismatch");
  IMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = checked_sub(at(i, j), o.at(i, j));
  return r;
}

std::vector<i64> IMatrix::col(int j) const {
  std::vector<i64> r(rows_);
  for (int i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

std::vector<i64> IMatrix::mul_vec(const std::vector<i64>& x) const {
  if (int(x.size()) != cols_) throw DimensionError("integer matrix-vector shape mismatch");
  std::vector<i64> r(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] = checked_add(r[i], checked_mul(at(i, j), x[j]));
  return r;
}

IMatrix IMatrix::hcat(const IMatrix& o) const {
  if (rows_ != o.rows_) throw DimensionError("hcat row mismatch");
  IMatrix r(rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

i64 int_det(const IMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IMatrix a = m;
  i64 sign = 1;
  i64 prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        i64 num = checked_sub(checked_mul(a.at(k, k), a.at(i, j)),
                              checked_mul(a.at(i, k), a.at(k, j)));
        a.at(i, j) = num / prev;  // exact by Bareiss identity
      }
    prev = a.at(k, k);
  }
  return checked_mul(sign, a.at(n - 1, n - 1));
}

namespace {

struct SnfWork {
  IMatrix d, u, uinv, v, vinv;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
    for (int r = 0; r < uinv.rows(); ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
  }
  // row_i -= q * row_j
  void row_axpy(int i, int j, i64 q) {
    if (q == 0) return;
    for (int c = 0; c < d.cols(); ++c)
      d.at(i, c) = checked_sub(d.at(i, c), checked_mul(q, d.at(j, c)));
    for (int c = 0; c < u.cols(); ++c)
      u.at(i, c) = checked_sub(u.at(i, c), checked_mul(q, u.at(j, c)));
    for (int r = 0; r < uinv.rows(); ++r)
      uinv.at(r, j) = checked_add(uinv.at(r, j), checked_mul(q, uinv.at(r, i)));
  }
  void row_negate(int i) {
    for (int c = 0; c < d.cols(); ++c) d.at(i, c) = checked_neg(d.at(i, c));
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) = checked_neg(u.at(i, c));
    for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = checked_neg(uinv.at(r, i));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
    for (int c = 0; c < vinv.cols(); ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
  }
  // col_i -= q * col_j
  void col_axpy(int i, int j, i64 q) {
    if (q == 0) return;
    for (int r = 0; r < d.rows(); ++r)
      d.at(r, i) = checked_sub(d.at(r, i), checked_mul(q, d.at(r, j)));
    for (int r = 0; r < v.rows(); ++r)
      v.at(r, i) = checked_sub(v.at(r, i), checked_mul(q, v.at(r, j)));
    for (int c = 0; c < vinv.cols(); ++c)
      vinv.at(j, c) = checked_add(vinv.at(j, c), checked_mul(q, vinv.at(i, c)));
  }
};

}  // namespace

SNF smith_normal_form(const IMatrix& m) {
  SnfWork w;
  w.d = m;
  w.u = IMatrix::identity(m.rows());
  w.uinv = IMatrix::identity(m.rows());
  w.v = IMatrix::identity(m.cols());
  w.vinv = IMatrix::identity(m.cols());

  int lim = std::min(m.rows(), m.cols());
  int rank = 0;
  for (int k = 0; k < lim; ++k) {
    long guard = 0;
    bool empty = false;
    for (;;) {
      if (++guard > 100000) throw ConvergenceError("smith normal form did not settle");
      // smallest nonzero entry of the trailing block becomes the pivot
      int pi = -1, pj = -1;
      i64 best = 0;
      for (int i = k; i < m.rows(); ++i)
        for (int j = k; j < m.cols(); ++j) {
          i64 a = w.d.at(i, j);
          if (a == 0) continue;
          if (pi < 0 || iabs(a) < best) {
            pi = i;
            pj = j;
            best = iabs(a);
          }
        }
      if (pi < 0) {
        empty = true;
        break;
      }
      w.row_swap(k, pi);
      w.col_swap(k, pj);

      bool dirty = false;
      for (int i = k + 1; i < m.rows(); ++i) {
        if (w.d.at(i, k) == 0) continue;
        w.row_axpy(i, k, round_div(w.d.at(i, k), w.d.at(k, k)));
        if (w.d.at(i, k) != 0) dirty = true;
      }
      if (dirty) continue;
      for (int j = k + 1; j < m.cols(); ++j) {
        if (w.d.at(k, j) == 0) continue;
        w.col_axpy(j, k, round_div(w.d.at(k, j), w.d.at(k, k)));
        if (w.d.at(k, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // enforce the divisibility chain: fold an offending row into row k
      int bad = -1;
      for (int i = k + 1; i < m.rows() && bad < 0; ++i)
        for (int j = k + 1; j < m.cols(); ++j)
          if (w.d.at(i, j) % w.d.at(k, k) != 0) {
            bad = i;
            break;
          }
      if (bad >= 0) {
        w.row_axpy(k, bad, -1);
        continue;
      }
      break;
    }
    if (empty) break;
    rank = k + 1;
  }
  for (int i = 0; i < rank; ++i)
    if (w.d.at(i, i) < 0) w.row_negate(i);

  SNF out;
  out.u = w.u;
  out.uinv = w.uinv;
  out.v = w.v;
  out.vinv = w.vinv;
  out.d = w.d;
  out.rank = rank;
  for (int i = 0; i < rank; ++i) out.invariant_factors.push_back(w.d.at(i, i));

  // invariant: transforms are unimodular and reproduce d exactly
  if (iabs(int_det(out.u)) != 1 || iabs(int_det(out.v)) != 1)
    throw ValidationError("smith transform not unimodular");
  if (!(out.u * m * out.v == out.d) || !(out.u * out.uinv == IMatrix::identity(m.rows())) ||
      !(out.v * out.vinv == IMatrix::identity(m.cols())))
    throw ValidationError("smith transform identity failed");
  for (std::size_t i = 0; i + 1 < out.invariant_factors.size(); ++i)
    if (out.invariant_factors[i + 1] % out.invariant_factors[i] != 0)
      throw ValidationError("smith divisibility chain failed");
  return out;
}

bool solve_int(const IMatrix& m, const std::vector<i64>& b, std::vector<i64>* out) {
  if (int(b.size()) != m.rows()) throw DimensionError("solve_int shape mismatch");
  SNF s = smith_normal_form(m);
  std::vector<i64> c = s.u.mul_vec(b);
  std::vector<i64> y(m.cols(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.d.at(i, i) != 0) return false;
      y[i] = c[i] / s.d.at(i, i);
    } else if (c[i] != 0) {
      return false;
    }
  }
  if (out) *out = s.v.mul_vec(y);
  return true;
}

IMatrix int_kernel(const IMatrix& m) {
  SNF s = smith_normal_form(m);
  int k = m.cols() - s.rank;
  IMatrix basis(m.cols(), k);
  for (int j = 0; j < k; ++j) {
    // orient each basis vector: first nonzero entry positive
    i64 lead = 0;
    for (int i = 0; i < m.cols() && lead == 0; ++i)
      lead = s.v.at(i, s.rank + j);
    i64 sign = lead < 0 ? -1 : 1;
    for (int i = 0; i < m.cols(); ++i)
      basis.at(i, j) = sign * s.v.at(i, s.rank + j);
  }
  return basis;
}

GroupPresentation make_presentation(int generators, IMatrix relations,
                                    std::vector<std::string> tags) {
  if (relations.rows() != generators)
    throw DimensionError("relation column length must match generator count");
  GroupPresentation g;
  g.generators = generators;
  g.relations = relations;
  g.tags = std::move(tags);

  SNF s = smith_normal_form(relations);
  g.free_rank = generators - s.rank;

  std::vector<int> torsion_rows;
  for (int i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) torsion_rows.push_back(i);

  g.canon = IMatrix(int(torsion_rows.size()) + g.free_rank, generators);
  int r = 0;
  for (int i : torsion_rows) {
    for (int j = 0; j < generators; ++j) g.canon.at(r, j) = s.u.at(i, j);
    g.torsion.push_back(s.d.at(i, i));
    g.canon_mod.push_back(s.d.at(i, i));
    ++r;
  }
  for (int i = s.rank; i < generators; ++i) {
    i64 lead = 0;
    for (int j = 0; j < generators && lead == 0; ++j) lead = s.u.at(i, j);
    i64 sgn = lead < 0 ? -1 : 1;
    for (int j = 0; j < generators; ++j) g.canon.at(r, j) = checked_mul(sgn, s.u.at(i, j));
    g.canon_mod.push_back(0);
    ++r;
  }
  return g;
}

std::string format_group(const GroupPresentation& g) {
  std::vector<std::string> parts;
  if (g.free_rank == 1) parts.push_back("Z");
  if (g.free_rank > 1) parts.push_back("Z^" + std::to_string(g.free_rank));
  for (i64 d : g.torsion) parts.push_back("Z/" + std::to_string(d));
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " (+) " + parts[i];
  return out;
}

std::vector<i64> canonical_class(const GroupPresentation& g, const std::vector<i64>& x) {
  if (int(x.size()) != g.generators) throw DimensionError("class vector length mismatch");
  std::vector<i64> y = g.canon.mul_vec(x);
  for (std::size_t i = 0; i < y.size(); ++i) {
    i64 d = g.canon_mod[i];
    if (d > 0) y[i] = ((y[i] % d) + d) % d;
  }
  return y;
}

bool is_zero_class(const GroupPresentation& g, const std::vector<i64>& x) {
  auto y = canonical_class(g, x);
  return std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; });
}

bool same_class(const GroupPresentation& g, const std::vector<i64>& x,
                const std::vector<i64>& y) {
  if (x.size() != y.size()) throw DimensionError("class vector length mismatch");
  std::vector<i64> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = checked_sub(x[i], y[i]);
  return is_zero_class(g, diff);
}

GroupMap make_map(GroupPresentation source, GroupPresentation target, IMatrix matrix,
                  std::string label) {
  if (matrix.rows() != target.generators || matrix.cols() != source.generators)
    throw DimensionError("group map matrix shape mismatch");
  for (int j = 0; j < source.relations.cols(); ++j) {
    std::vector<i64> img = matrix.mul_vec(source.relations.col(j));
    if (!is_zero_class(target, img))
      throw ValidationError("group map does not respect source relations");
  }
  return GroupMap{std::move(source), std::move(target), std::move(matrix), std::move(label)};
}

Subgroup kernel(const GroupMap& f) {
  int gs = f.source.generators;
  // x with f(x) in span(target relations): first-block parts of ker [M | Rt]
  IMatrix stacked = f.matrix.hcat(f.target.relations);
  IMatrix full = int_kernel(stacked);
  IMatrix xpart(gs, full.cols());
  for (int i = 0; i < gs; ++i)
    for (int j = 0; j < full.cols(); ++j) xpart.at(i, j) = full.at(i, j);

  // basis of the column lattice of xpart: xpart * v = uinv * d
  SNF s = smith_normal_form(xpart);
  int k = s.rank;
  IMatrix basis(gs, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < gs; ++i) basis.at(i, j) = checked_mul(s.uinv.at(i, j), s.d.at(j, j));

  // source relations rewritten in the basis
  IMatrix rel(k, f.source.relations.cols());
  for (int j = 0; j < f.source.relations.cols(); ++j) {
    std::vector<i64> c;
    if (!solve_int(basis, f.source.relations.col(j), &c))
      throw ValidationError("source relation escaped the kernel lattice");
    for (int i = 0; i < k; ++i) rel.at(i, j) = c[i];
  }
  return Subgroup{make_presentation(k, rel), basis};
}

GroupPresentation cokernel(const GroupMap& f) {
  return make_presentation(f.target.generators, f.target.relations.hcat(f.matrix),
                           f.target.tags);
}

std::vector<ExactnessReport> check_exact(const std::vector<GroupMap>& maps, bool cyclic) {
  std::vector<ExactnessReport> out;
  if (maps.size() < 2) return out;
  std::size_t n = maps.size();
  std::size_t nodes = cyclic ? n : n - 1;
  for (std::size_t t = 0; t < nodes; ++t) {
    const GroupMap& f = maps[t];
    const GroupMap& g = maps[(t + 1) % n];
    if (f.target.generators != g.source.generators ||
        !(f.target.relations == g.source.relations))
      throw DimensionError("chain maps do not compose at node " + std::to_string(t));

    ExactnessReport rep;
    rep.node = g.label.empty() ? ("node " + std::to_string(t + 1)) : ("source of " + g.label);

    rep.composite_zero = true;
    IMatrix comp = g.matrix * f.matrix;
    for (int j = 0; j < comp.cols(); ++j)
      if (!is_zero_class(g.target, comp.col(j))) {
        rep.composite_zero = false;
        rep.detail = "composite nonzero on source generator " + std::to_string(j);
        break;
      }

    rep.kernel_covered = true;
    Subgroup ker = kernel(g);
    IMatrix reach = f.matrix.hcat(f.target.relations);
    for (int j = 0; j < ker.lifts.cols(); ++j)
      if (!solve_int(reach, ker.lifts.col(j), nullptr)) {
        rep.kernel_covered = false;
        if (!rep.detail.empty()) rep.detail += "; ";
        rep.detail += "kernel generator " + std::to_string(j) + " not in image";
        break;
      }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace relk::intk
