#pragma once

#include <vector>

#include "relk/cmatrix.hpp"

namespace relk {

// e^{2 pi i t} with t reduced mod 1 first, so integer t gives exactly 1.
cplx cis_2pi(double t);

struct HermEig {
  std::vector<double> evals;  // descending
  CMatrix vectors;            // columns; m = V diag(evals) V*
};

// Cyclic Jacobi for Hermitian matrices. Throws NotHermitianError when
// |m - m*| > eps, ConvergenceError after the sweep budget. Postcondition:
// reconstruction within 1e-8 * max(1, |m|).
HermEig herm_eig(const CMatrix& m, double eps = 1e-9);

struct UnitaryEig {
  std::vector<cplx> evals;  // on the unit circle
  CMatrix vectors;
};

// Spectral decomposition of a unitary: diagonalize (u+u*)/2, then split
// degenerate cosine clusters with (u-u*)/2i.
UnitaryEig unitary_eig(const CMatrix& u, double eps = 1e-9);

// Hermitian h with exp(i h) = u, eigenphases in (-pi, pi].
CMatrix unitary_log(const CMatrix& u, double eps = 1e-9);

// Geodesic from u0 to u1 through unitaries: u0 * exp(i t log(u0* u1)),
// sampled at `steps` nodes including both ends.
std::vector<CMatrix> unitary_geodesic(const CMatrix& u0, const CMatrix& u1, int steps,
                                      double eps = 1e-9);

// exp(2 pi i t m) for Hermitian m. Projections use the closed form
// 1 + (e^{2 pi i t} - 1) m, so loops based at integers close exactly.
CMatrix herm_exp_2pi(const CMatrix& m, double t, double eps = 1e-9);

// exp(i pi t (1-u)/2) for a self-adjoint unitary u; at t=0 the identity, at
// t=1 equal to u. (1-u)/2 is a projection, so the closed form applies.
CMatrix sau_path_point(const CMatrix& u, double t, double eps = 1e-9);

// Moore-Penrose style inverse square root on the support of a PSD matrix.
// `support`: the projection expected to carry m. Eigenvalues below eps must
// have eigenvectors orthogonal to the support, else SingularOnSupportError.
// Postcondition: s*m*s ~ support within kCompositeTol.
CMatrix inv_sqrt_psd(const CMatrix& m, const CMatrix& support, double eps = 1e-9);

// Inverse of b as a morphism src -> dst (b = dst b src), i.e. the element
// with b_inv b = src and b b_inv = dst.
CMatrix corner_inverse(const CMatrix& b, const CMatrix& src, const CMatrix& dst,
                       double eps = 1e-9);

// (b b*)^{-1/2} b: the partial isometry part of an invertible morphism
// src -> dst. Postconditions: v*v ~ src, v v* ~ dst within kCompositeTol.
CMatrix polar_partial_isometry(const CMatrix& b, const CMatrix& src, const CMatrix& dst,
                               double eps = 1e-9);

// The canonical projection of an idempotent e:
//   rho(e) = e e* (1 + (e - e*)(e* - e))^{-1}
// satisfies rho e = e, e rho = rho. Throws NotIdempotentError.
CMatrix rho_projection(const CMatrix& e, double eps = 1e-9);

// Integer rank of an idempotent via its trace; GridError if the trace is
// further than 0.01 from an integer.
int idempotent_rank(const CMatrix& e, double eps = 1e-9);

}  // namespace relk
