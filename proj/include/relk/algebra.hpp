#pragma once

// Finite-dimensional C*-algebras (direct sums of matrix blocks), algebras of
// sampled functions over an interval or the unit disk with values in such a
// block algebra, elements of their unitizations at matrix level n, and
// *-homomorphisms between them.
//
// An element of M_n(X~) is stored as a scalar part (an n x n complex matrix,
// constant across the domain) plus, for every sample node and every block, a
// body matrix of size (n * block) x (n * block) laid out level-major: level
// cell (i, j) of block b occupies rows [i*nb, (i+1)*nb). The represented
// value at a node is kron(scalar, 1_nb) + body. All verification happens on
// these node values; interpolation is a convenience for callers only.

#include <optional>
#include <string>
#include <vector>

#include "relk/cmatrix.hpp"
#include "relk/intk.hpp"

namespace relk {

enum class Domain { point, interval, polar };

enum class Boundary { none, endpoints_equal, vanish_ends, vanish_boundary };

struct FDAlgebra {
  std::vector<int> blocks;  // matrix sizes, each >= 1; empty = zero algebra
  std::string label;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool is_zero() const { return blocks.empty(); }
};

// Validating constructor for a nonzero block algebra.
FDAlgebra make_fd(std::vector<int> blocks, std::string label = "");
FDAlgebra zero_fd();
// Blocks of a followed by blocks of b.
FDAlgebra fd_direct_sum(const FDAlgebra& a, const FDAlgebra& b,
                        std::string label = "");

struct Algebra {
  FDAlgebra base;
  Domain domain = Domain::point;
  Boundary boundary = Boundary::none;
  int grid = 1;  // sample nodes per axis; 1 for point domain
  std::string label;

  int node_count() const;
  bool is_point() const { return domain == Domain::point; }
  bool is_zero() const { return base.is_zero(); }
  // Structural equality: blocks, domain, boundary, grid. Labels ignored.
  bool same_shape(const Algebra& o) const;
  // Node coordinates. Interval: s = i/(grid-1). Polar: node (ir, it) sits at
  // radius ir/(grid-1), angle 2*pi*it/(grid-1), flat index ir*grid + it.
  double interval_s(int i) const;
  int polar_index(int ir, int it) const { return ir * grid + it; }
  cplx polar_point(int ir, int it) const;
};

Algebra point_algebra(FDAlgebra base, std::string label = "");
Algebra zero_algebra();
Algebra interval_algebra(FDAlgebra base, Boundary bc, int grid,
                         std::string label = "");
Algebra polar_algebra(FDAlgebra base, Boundary bc, int grid,
                      std::string label = "");

struct Element {
  Algebra alg;
  int level = 0;
  CMatrix scalar;                          // level x level
  std::vector<std::vector<CMatrix>> body;  // [node][block]

  static Element zero(const Algebra& a, int level);
  // Scalar s (level = s.rows()) over a, zero body.
  static Element scalar_element(const Algebra& a, const CMatrix& s);
  static Element unit(const Algebra& a, int level);

  // Represented value of block b at a node: kron(scalar, 1_nb) + body.
  CMatrix full(int node, int b) const;

  Element adjoint() const;
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator-() const;
  Element scale(cplx c) const;
  double max_abs() const;
  bool approx_equal(const Element& o, double eps) const;
};

// Throws AlgebraMismatchError unless same shape and level.
double element_diff(const Element& a, const Element& b);

Element direct_sum(const Element& a, const Element& b);
// Append zero levels up to the requested level.
Element pad_to(const Element& x, int level);
// (s kron 1) * x and x * (s kron 1) for a level-scale scalar matrix s.
Element scalar_mul_left(const CMatrix& s, const Element& x);
Element scalar_mul_right(const Element& x, const CMatrix& s);
// u x u* for a level-scale scalar matrix u.
Element scalar_conj(const CMatrix& u, const Element& x);

// Assemble a level-doubled element from up to four level-cells (null = zero).
// All present cells must share algebra and level.
Element level_block_2x2(const Element* x00, const Element* x01,
                        const Element* x10, const Element* x11);

// AND of scalar and every node/block value classification.
Classification classify_element(const Element& x, double eps = 1e-9);

// Structural and boundary-condition violations, empty when valid.
// Checks: dimensions, finiteness, boundary conditions on the body,
// polar grid coherence (angle wrap, constant center).
std::vector<std::string> validate_element(const Element& x,
                                          double eps = 1e-9);

// Largest operator-norm jump between neighbouring sample nodes (0 for point
// domains). Large values mean the grid is too coarse to trust.
double smooth_step_norm(const Element& x);

// Blockwise spectral helpers on represented values; scalar part follows.
Element element_inverse(const Element& x);
Element element_inv_sqrt_psd(const Element& x, const Element& support);
// Idempotent e to the range projection r with er = r, re = e:
// r = e e* (1 + (e - e*)(e* - e))^{-1}.
Element element_rho(const Element& e);
// exp(2 pi i t p) for a projection p, closed form 1 + (e^{2 pi i t} - 1) p.
Element element_proj_exp(const Element& p, double t);
// exp(2 pi i t h) for self-adjoint h.
Element element_exp_2pi(const Element& h, double t);
// exp(i pi t (1 - u) / 2) for a self-adjoint unitary u; equals u at t = 1.
Element element_sau_path(const Element& u, double t);
// Self-adjoint logarithm: exp(i log) reproduces the unitary blockwise.
Element element_unitary_log(const Element& u);

enum class HomKind {
  block,            // finite-dimensional block action, applied per node
  zero,             // kills the body, keeps the scalar part
  endpoint_eval,    // C([0,1], F) -> F + F, f -> (f(0), f(1))
  restrict_boundary,  // disk functions -> boundary circle functions
  include_bc,       // forget a boundary condition, same samples
  compose           // stages applied left to right
};

struct BlockAction {
  std::vector<int> copies;  // one count per source block
  CMatrix u;                // realizing unitary, target-block size
};

struct Hom {
  HomKind kind = HomKind::zero;
  Algebra source, target;
  std::vector<BlockAction> actions;  // block kind: one per target block
  std::vector<Hom> stages;           // compose kind
  std::string label;

  bool is_zero() const { return kind == HomKind::zero; }
};

// copies[i][j] = copies of source block j inside target block i. Unitaries
// default to identities. Source and target must share domain shape.
Hom block_hom(const Algebra& src, const Algebra& tgt,
              const std::vector<std::vector<int>>& copies,
              std::vector<CMatrix> unitaries = {}, std::string label = "");
Hom identity_hom(const Algebra& a);
Hom zero_hom(const Algebra& src, const Algebra& tgt, std::string label = "");
Hom endpoint_eval_hom(const Algebra& src, std::string label = "");
Hom restrict_boundary_hom(const Algebra& src, std::string label = "");
Hom include_bc_hom(const Algebra& src, const Algebra& tgt,
                   std::string label = "");
Hom compose_homs(const Hom& second, const Hom& first, std::string label = "");

// Unital extension: scalar part passes through unchanged.
Element apply(const Hom& h, const Element& x);
std::vector<Element> apply_path(const Hom& h, const std::vector<Element>& p);

std::vector<std::string> validate_hom(const Hom& h);
// Multiplicativity and adjoint defects of the applied map on given operands.
double hom_mult_defect(const Hom& h, const Element& x, const Element& y);

// Matrix of the induced map on K0 classes of constant projections, one
// column per source block. Defined for block, zero, endpoint_eval and
// compositions thereof; RegimeError otherwise.
intk::IMatrix k0_matrix(const Hom& h);

// Short exact row 0 -> ideal -> total -> quotient -> 0 with its maps and the
// lifting strategy through pi used by the boundary-map machinery.
enum class LiftStyle {
  insert_blocks,     // block-subset ideal: insert quotient coordinates
  interpolate_ends,  // interval total, endpoint quotient: linear in s
  radial_taper,      // disk total, boundary quotient: scale body by r
  identity           // zero ideal: pi is an isomorphism
};

struct Row {
  Algebra ideal, total, quotient;
  Hom iota, pi;
  LiftStyle lift = LiftStyle::identity;
  std::vector<int> ideal_blocks;  // insert_blocks only
};

Row fd_row(const FDAlgebra& total, const std::vector<int>& ideal_blocks,
           std::string label = "");
Row interval_row(const FDAlgebra& base, int grid, std::string label = "");
Row polar_row(const FDAlgebra& base, int grid, std::string label = "");
Row zero_ideal_row(const Algebra& b, std::string label = "");

// Self-adjoint (resp. arbitrary) preimage through row.pi with the same
// scalar part.
Element sa_lift(const Row& row, const Element& q);
Element element_lift(const Row& row, const Element& q);
// Reinterpret an element of the total algebra as one of the ideal,
// measuring how badly it fails to lie there (defect may be null).
Element corestrict(const Row& row, const Element& x, double* defect);

struct Ladder {
  Row a, b;  // top and bottom rows
  Hom psi, phi, gamma;
  std::string label;
};

// Structural checks plus commuting-square checks on probe elements.
std::vector<std::string> validate_ladder(const Ladder& l, double eps = 1e-9);

// Map a total-algebra element x of the top row through phi and corestrict
// the quotient-trivial part; helpers shared by the boundary maps.

// A pair (a, f) with a over the source, f a path over the target, f(1) close
// to phi(a) and f(0) scalar; the data of an element of the mapping cone.
struct ConeElement {
  Element a;
  std::vector<Element> f;
};

// Validates endpoint conditions; throws EndpointMismatchError.
ConeElement cone_element(const Element& a, std::vector<Element> f,
                         const Hom& h, double eps = 1e-7);

}  // namespace relk
