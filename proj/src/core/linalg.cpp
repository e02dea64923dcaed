#include "relk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relk {

namespace {
constexpr double kPi = std::numbers::pi;
}

cplx cis_2pi(double t) {
  const double f = t - std::floor(t);
  if (f == 0.0) return cplx(1.0, 0.0);
  const double a = 2.0 * kPi * f;
  return cplx(std::cos(a), std::sin(a));
}

HermEig herm_eig(const CMatrix& m, double eps) {
  if (!m.is_square()) throw DimensionError("herm_eig: not square");
  if (CMatrix::max_abs_diff(m, m.adjoint()) > eps)
    throw NotHermitianError("herm_eig: matrix is not Hermitian within tolerance");
  const int n = m.rows();
  CMatrix a = m;
  // symmetrize exactly so roundoff in the input cannot bias rotations
  for (int i = 0; i < n; ++i) {
    a.at(i, i) = cplx(a.at(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = avg;
      a.at(j, i) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(1.0, a.max_abs());
  const double target = 1e-14 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a.at(i, j)));
    if (off <= target) break;
    if (sweep == 99) throw ConvergenceError("herm_eig: Jacobi sweeps exhausted");

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a.at(p, q);
        const double mag = std::abs(apq);
        if (mag <= target * 1e-2) continue;
        // phase e^{i phi} of the off-diagonal entry, then a real Jacobi
        // rotation on diag(1, e^{-i phi}) conjugated coordinates
        const cplx phase = apq / mag;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // column rotation J: col_p' = c*col_p - s*conj(phase)*col_q,
        //                    col_q' = s*phase*col_p + c*col_q
        // (J[p][p]=c, J[p][q]=s*phase... expressed entrywise below)
        const cplx jpq = s * phase;
        for (int i = 0; i < n; ++i) {
          const cplx aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = c * aip - std::conj(jpq) * aiq;
          a.at(i, q) = jpq * aip + c * aiq;
          const cplx vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = c * vip - std::conj(jpq) * viq;
          v.at(i, q) = jpq * vip + c * viq;
        }
        for (int i = 0; i < n; ++i) {
          const cplx api = a.at(p, i), aqi = a.at(q, i);
          a.at(p, i) = c * api - jpq * aqi;
          a.at(q, i) = std::conj(jpq) * api + c * aqi;
        }
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
        a.at(q, q) = cplx(a.at(q, q).real(), 0.0);
      }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a.at(x, x).real() > a.at(y, y).real(); });

  HermEig out;
  out.evals.resize(n);
  out.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.evals[j] = a.at(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
  }

  CMatrix rec(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        rec.at(i, k) += out.vectors.at(i, j) * out.evals[j] * std::conj(out.vectors.at(k, j));
  if (CMatrix::max_abs_diff(m, rec) > 1e-8 * scale)
    throw ConvergenceError("herm_eig: reconstruction residual too large");
  return out;
}

UnitaryEig unitary_eig(const CMatrix& u, double eps) {
  if (!u.is_square()) throw DimensionError("unitary_eig: not square");
  const int n = u.rows();
  const CMatrix eye = CMatrix::identity(n);
  const CMatrix ua = u.adjoint();
  if (CMatrix::max_abs_diff(ua * u, eye) > eps || CMatrix::max_abs_diff(u * ua, eye) > eps)
    throw ValidationError("unitary_eig: matrix is not unitary within tolerance");

  const CMatrix cosp = 0.5 * (u + ua);
  HermEig ce = herm_eig(cosp, 1e-7);
  CMatrix v = ce.vectors;

  // split clusters of equal cosine with the sine part
  const CMatrix sinp = cplx(0.0, -0.5) * (u - ua);
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && std::abs(ce.evals[j] - ce.evals[i]) <= 1e-7) ++j;
    const int w = j - i;
    if (w > 1) {
      CMatrix vc(n, w);
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < w; ++k) vc.at(r, k) = v.at(r, i + k);
      const CMatrix b = vc.adjoint() * sinp * vc;
      HermEig be = herm_eig(b, 1e-7);
      const CMatrix vref = vc * be.vectors;
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < w; ++k) v.at(r, i + k) = vref.at(r, k);
    }
    i = j;
  }

  UnitaryEig out;
  out.vectors = v;
  out.evals.resize(n);
  for (int j2 = 0; j2 < n; ++j2) {
    cplx lam = 0.0;
    for (int r = 0; r < n; ++r) {
      cplx uvr = 0.0;
      for (int k = 0; k < n; ++k) uvr += u.at(r, k) * v.at(k, j2);
      lam += std::conj(v.at(r, j2)) * uvr;
    }
    const double m = std::abs(lam);
    out.evals[j2] = m > 0.0 ? lam / m : cplx(1.0, 0.0);
  }

  CMatrix rec(n, n);
  for (int j2 = 0; j2 < n; ++j2)
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k)
        rec.at(r, k) += v.at(r, j2) * out.evals[j2] * std::conj(v.at(k, j2));
  if (CMatrix::max_abs_diff(u, rec) > 1e-7 * std::max(1.0, u.max_abs()))
    throw ConvergenceError("unitary_eig: reconstruction residual too large");
  return out;
}

CMatrix unitary_log(const CMatrix& u, double eps) {
  UnitaryEig ue = unitary_eig(u, eps);
  const int n = u.rows();
  CMatrix h(n, n);
  for (int j = 0; j < n; ++j) {
    double theta = std::atan2(ue.evals[j].imag(), ue.evals[j].real());
    if (theta <= -kPi + 1e-15) theta = kPi;  // principal branch (-pi, pi]
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k)
        h.at(r, k) += ue.vectors.at(r, j) * theta * std::conj(ue.vectors.at(k, j));
  }
  // exact Hermitian symmetrization
  for (int r = 0; r < n; ++r) {
    h.at(r, r) = cplx(h.at(r, r).real(), 0.0);
    for (int k = r + 1; k < n; ++k) {
      const cplx avg = 0.5 * (h.at(r, k) + std::conj(h.at(k, r)));
      h.at(r, k) = avg;
      h.at(k, r) = std::conj(avg);
    }
  }
  return h;
}

std::vector<CMatrix> unitary_geodesic(const CMatrix& u0, const CMatrix& u1, int steps,
                                      double eps) {
  if (steps < 2) throw DimensionError("unitary_geodesic: need at least 2 nodes");
  const CMatrix rel = u0.adjoint() * u1;
  const CMatrix h = unitary_log(rel, eps);
  HermEig he = herm_eig(h, 1e-7);
  const int n = u0.rows();
  std::vector<CMatrix> out;
  out.reserve(steps);
  for (int sidx = 0; sidx < steps; ++sidx) {
    const double t = double(sidx) / double(steps - 1);
    if (sidx == 0) {
      out.push_back(u0);
      continue;
    }
    if (sidx == steps - 1) {
      out.push_back(u1);
      continue;
    }
    CMatrix e(n, n);
    for (int j = 0; j < n; ++j) {
      const cplx ph(std::cos(t * he.evals[j]), std::sin(t * he.evals[j]));
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
          e.at(r, k) += he.vectors.at(r, j) * ph * std::conj(he.vectors.at(k, j));
    }
    out.push_back(u0 * e);
  }
  return out;
}

CMatrix herm_exp_2pi(const CMatrix& m, double t, double eps) {
  if (!m.is_square()) throw DimensionError("herm_exp_2pi: not square");
  if (CMatrix::max_abs_diff(m, m.adjoint()) > eps)
    throw NotHermitianError("herm_exp_2pi: matrix is not Hermitian within tolerance");
  const int n = m.rows();
  const Classification cl = classify(m, eps);
  if (cl.projection) {
    CMatrix r = CMatrix::identity(n);
    const cplx f = cis_2pi(t) - 1.0;
    if (f != cplx(0.0, 0.0)) r += f * m;
    return r;
  }
  HermEig he = herm_eig(m, eps);
  CMatrix r(n, n);
  for (int j = 0; j < n; ++j) {
    const cplx ph = cis_2pi(t * he.evals[j]);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        r.at(i, k) += he.vectors.at(i, j) * ph * std::conj(he.vectors.at(k, j));
  }
  return r;
}

CMatrix sau_path_point(const CMatrix& u, double t, double eps) {
  const Classification cl = classify(u, std::max(eps, 1e-7));
  if (!cl.self_adjoint || !cl.unitary)
    throw ValidationError("sau_path_point: input is not a self-adjoint unitary");
  const int n = u.rows();
  // (1-u)/2 is a projection; exp(i pi t P) = 1 + (e^{i pi t} - 1) P
  CMatrix p = 0.5 * (CMatrix::identity(n) - u);
  const cplx f = cis_2pi(0.5 * t) - 1.0;
  CMatrix r = CMatrix::identity(n);
  if (f != cplx(0.0, 0.0)) r += f * p;
  return r;
}

CMatrix inv_sqrt_psd(const CMatrix& m, const CMatrix& support, double eps) {
  if (CMatrix::max_abs_diff(m, m.adjoint()) > std::max(eps, 1e-7))
    throw NotHermitianError("inv_sqrt_psd: matrix is not Hermitian");
  HermEig he = herm_eig(m, std::max(eps, 1e-7));
  const int n = m.rows();
  CMatrix s(n, n);
  for (int j = 0; j < n; ++j) {
    const double lam = he.evals[j];
    if (lam <= eps) {
      // eigenvector must be orthogonal to the support
      CMatrix vec(n, 1);
      for (int i = 0; i < n; ++i) vec.at(i, 0) = he.vectors.at(i, j);
      if ((support * vec).max_abs() > std::sqrt(std::max(eps, 1e-12)))
        throw SingularOnSupportError("inv_sqrt_psd: singular direction inside support");
      continue;
    }
    const double w = 1.0 / std::sqrt(lam);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        s.at(i, k) += he.vectors.at(i, j) * w * std::conj(he.vectors.at(k, j));
  }
  if (CMatrix::max_abs_diff(s * m * s, support) > kCompositeTol)
    throw SingularOnSupportError("inv_sqrt_psd: s m s does not reproduce the support");
  return s;
}

CMatrix corner_inverse(const CMatrix& b, const CMatrix& src, const CMatrix& dst, double eps) {
  if (CMatrix::max_abs_diff(dst * b * src, b) > std::max(eps, 1e-7))
    throw ValidationError("corner_inverse: b is not a morphism src -> dst");
  const CMatrix bbs = b * b.adjoint();
  const CMatrix inv = inv_sqrt_psd(bbs, dst, eps);
  // (b b*)^{-1} on the corner = inv * inv
  const CMatrix binv = b.adjoint() * (inv * inv);
  if (CMatrix::max_abs_diff(binv * b, src) > kCompositeTol ||
      CMatrix::max_abs_diff(b * binv, dst) > kCompositeTol)
    throw SingularOnSupportError("corner_inverse: not invertible on the corner");
  return binv;
}

CMatrix polar_partial_isometry(const CMatrix& b, const CMatrix& src, const CMatrix& dst,
                               double eps) {
  if (CMatrix::max_abs_diff(dst * b * src, b) > std::max(eps, 1e-7))
    throw ValidationError("polar_partial_isometry: b is not a morphism src -> dst");
  const CMatrix v = inv_sqrt_psd(b * b.adjoint(), dst, eps) * b;
  if (CMatrix::max_abs_diff(v.adjoint() * v, src) > kCompositeTol ||
      CMatrix::max_abs_diff(v * v.adjoint(), dst) > kCompositeTol)
    throw SingularOnSupportError("polar_partial_isometry: polar part is not a partial isometry");
  return v;
}

CMatrix rho_projection(const CMatrix& e, double eps) {
  if (!e.is_square()) throw DimensionError("rho_projection: not square");
  if (CMatrix::max_abs_diff(e * e, e) > std::max(eps, 1e-7))
    throw NotIdempotentError("rho_projection: input is not idempotent");
  const CMatrix es = e.adjoint();
  const int n = e.rows();
  // 1 + (e - e*)(e* - e) is >= 1, hence invertible
  const CMatrix den = CMatrix::identity(n) + (e - es) * (es - e);
  const CMatrix num = e * es;
  // rho = num * den^{-1}: solve den^T x^T = num^T, i.e. use solve on the left
  const CMatrix rho = solve(den.adjoint(), num.adjoint()).adjoint();
  if (CMatrix::max_abs_diff(rho * e, e) > kCompositeTol ||
      CMatrix::max_abs_diff(e * rho, rho) > kCompositeTol ||
      CMatrix::max_abs_diff(rho * rho, rho) > kCompositeTol ||
      CMatrix::max_abs_diff(rho, rho.adjoint()) > kCompositeTol)
    throw ValidationError("rho_projection: postconditions failed");
  return rho;
}

int idempotent_rank(const CMatrix& e, double eps) {
  if (CMatrix::max_abs_diff(e * e, e) > std::max(eps, 1e-7))
    throw NotIdempotentError("idempotent_rank: input is not idempotent");
  const double tr = e.trace().real();
  const long long r = std::llround(tr);
  if (std::abs(tr - double(r)) > 0.01)
    throw GridError("idempotent_rank: trace is not close to an integer");
  return int(r);
}

}  // namespace relk
