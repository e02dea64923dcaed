#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "relk/errors.hpp"

// Exact integer layer: Smith normal form with transform matrices, finitely
// generated abelian groups as (generators, relation columns) presentations,
// kernels/cokernels of maps between them, and im = ker verification.
// All arithmetic is checked 64-bit; overflow throws OverflowError.

namespace relk::intk {

using i64 = long long;

i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 checked_neg(i64 a);

class IMatrix {
 public:
  IMatrix() = default;
  IMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    a_.assign(std::size_t(rows) * cols, 0);
  }
  static IMatrix identity(int n);
  static IMatrix from_rows(std::initializer_list<std::initializer_list<i64>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  i64& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const i64& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  IMatrix operator*(const IMatrix& o) const;
  IMatrix operator-(const IMatrix& o) const;
  bool operator==(const IMatrix& o) const = default;

  std::vector<i64> col(int j) const;
  std::vector<i64> mul_vec(const std::vector<i64>& x) const;
  IMatrix hcat(const IMatrix& o) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<i64> a_;
};

// Exact integer determinant (Bareiss fraction-free elimination).
i64 int_det(const IMatrix& m);

// u * input * v = d, with d diagonal, nonnegative, and d_i | d_{i+1}.
// Pivot selection: smallest nonzero absolute value; row operations are
// attempted before column operations. uinv/vinv are maintained alongside,
// and unimodularity of u and v is verified (|det| = 1).
struct SNF {
  IMatrix u, uinv;
  IMatrix v, vinv;
  IMatrix d;
  int rank = 0;
  std::vector<i64> invariant_factors;  // positive, divisibility chain, length == rank
};

SNF smith_normal_form(const IMatrix& m);

// Integer solution x of m x = b, if one exists.
bool solve_int(const IMatrix& m, const std::vector<i64>& b, std::vector<i64>* out = nullptr);

// Basis of {x : m x = 0} as columns.
IMatrix int_kernel(const IMatrix& m);

// Z^generators / column span(relations).
struct GroupPresentation {
  int generators = 0;
  IMatrix relations;  // generators x r
  std::vector<std::string> tags;

  // derived invariants (filled by make_presentation)
  std::vector<i64> torsion;  // invariant factors > 1
  int free_rank = 0;
  IMatrix canon;              // functional rows: torsion rows then free rows
  std::vector<i64> canon_mod;  // matching moduli (0 = free)

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
};

GroupPresentation make_presentation(int generators, IMatrix relations,
                                    std::vector<std::string> tags = {});

// "0", "Z", "Z^2", "Z/2", "Z^2 (+) Z/4", ...
std::string format_group(const GroupPresentation& g);

// Class of x in canonical coordinates: torsion entries reduced into
// [0, d); free entries signed. Length = torsion.size() + free_rank.
std::vector<i64> canonical_class(const GroupPresentation& g, const std::vector<i64>& x);

bool is_zero_class(const GroupPresentation& g, const std::vector<i64>& x);
bool same_class(const GroupPresentation& g, const std::vector<i64>& x,
                const std::vector<i64>& y);

struct GroupMap {
  GroupPresentation source;
  GroupPresentation target;
  IMatrix matrix;  // target.generators x source.generators
  std::string label;
};

// Verifies well-definedness: each source relation must map into the span of
// target relations.
GroupMap make_map(GroupPresentation source, GroupPresentation target, IMatrix matrix,
                  std::string label = {});

// Subgroup of the source given by generators with coordinate lifts.
struct Subgroup {
  GroupPresentation group;
  IMatrix lifts;  // source.generators x group.generators
};

// Kernel of the induced map on quotients.
Subgroup kernel(const GroupMap& f);

// Cokernel: target generators with extra relations from the image.
GroupPresentation cokernel(const GroupMap& f);

struct ExactnessReport {
  std::string node;
  bool composite_zero = false;  // im(f) subset ker(g)
  bool kernel_covered = false;  // ker(g) subset im(f)
  bool exact() const { return composite_zero && kernel_covered; }
  std::string detail;
};

// Exactness at every interior node of the chain; when cyclic, the chain
// wraps and every node is interior.
std::vector<ExactnessReport> check_exact(const std::vector<GroupMap>& maps, bool cyclic);

}  // namespace relk::intk
