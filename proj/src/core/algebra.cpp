#include "relk/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "relk/errors.hpp"
#include "relk/linalg.hpp"

namespace relk {

namespace {

// 1_n tensor u: n diagonal copies of u.
CMatrix kron_left(int n, const CMatrix& u) {
  CMatrix out = CMatrix::zeros(n * u.rows(), n * u.cols());
  for (int k = 0; k < n; ++k) out.paste(k * u.rows(), k * u.cols(), u);
  return out;
}

double op_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  HermEig e = herm_eig(m.adjoint() * m);
  double top = e.evals.empty() ? 0.0 : std::max(e.evals.front(), 0.0);
  return std::sqrt(top);
}

void require_same_shape(const Element& a, const Element& b,
                        const char* what) {
  if (!a.alg.same_shape(b.alg) || a.level != b.level) {
    throw AlgebraMismatchError(std::string(what) +
                               ": operands live over different algebras");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace

FDAlgebra make_fd(std::vector<int> blocks, std::string label) {
  if (blocks.empty()) {
    throw ValidationError("block algebra needs at least one block");
  }
  for (int b : blocks) {
    if (b < 1) throw ValidationError("block sizes must be positive");
  }
  return FDAlgebra{std::move(blocks), std::move(label)};
}

FDAlgebra zero_fd() { return FDAlgebra{{}, "0"}; }

FDAlgebra fd_direct_sum(const FDAlgebra& a, const FDAlgebra& b,
                        std::string label) {
  FDAlgebra out;
  out.blocks = a.blocks;
  out.blocks.insert(out.blocks.end(), b.blocks.begin(), b.blocks.end());
  out.label = std::move(label);
  return out;
}

int Algebra::node_count() const {
  switch (domain) {
    case Domain::point:
      return 1;
    case Domain::interval:
      return grid;
    case Domain::polar:
      return grid * grid;
  }
  return 1;
}

bool Algebra::same_shape(const Algebra& o) const {
  return base.blocks == o.base.blocks && domain == o.domain &&
         boundary == o.boundary && grid == o.grid;
}

double Algebra::interval_s(int i) const {
  return grid > 1 ? double(i) / double(grid - 1) : 0.0;
}

cplx Algebra::polar_point(int ir, int it) const {
  double r = interval_s(ir);
  return r * cis_2pi(interval_s(it));
}

Algebra point_algebra(FDAlgebra base, std::string label) {
  Algebra a;
  a.base = std::move(base);
  a.label = label.empty() ? a.base.label : std::move(label);
  return a;
}

Algebra zero_algebra() {
  Algebra a;
  a.base = zero_fd();
  a.label = "0";
  return a;
}

namespace {
Algebra sampled_algebra(FDAlgebra base, Domain d, Boundary bc, int grid,
                        std::string label) {
  if (grid < 3) throw GridError("sampled algebra needs at least 3 nodes");
  if (base.is_zero()) {
    throw ValidationError("sampled algebra over the zero algebra is not "
                          "represented; use the zero algebra itself");
  }
  Algebra a;
  a.base = std::move(base);
  a.domain = d;
  a.boundary = bc;
  a.grid = grid;
  a.label = std::move(label);
  return a;
}
}  // namespace

Algebra interval_algebra(FDAlgebra base, Boundary bc, int grid,
                         std::string label) {
  if (bc == Boundary::vanish_boundary) {
    throw ValidationError("vanish_boundary applies to the polar domain");
  }
  return sampled_algebra(std::move(base), Domain::interval, bc, grid,
                         std::move(label));
}

Algebra polar_algebra(FDAlgebra base, Boundary bc, int grid,
                      std::string label) {
  if (bc == Boundary::endpoints_equal || bc == Boundary::vanish_ends) {
    throw ValidationError("interval boundary condition on a polar domain");
  }
  return sampled_algebra(std::move(base), Domain::polar, bc, grid,
                         std::move(label));
}

Element Element::zero(const Algebra& a, int level) {
  Element x;
  x.alg = a;
  x.level = level;
  x.scalar = CMatrix::zeros(level, level);
  x.body.resize(a.node_count());
  for (auto& node : x.body) {
    node.reserve(a.base.block_count());
    for (int b : a.base.blocks) {
      node.push_back(CMatrix::zeros(level * b, level * b));
    }
  }
  return x;
}

Element Element::scalar_element(const Algebra& a, const CMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("scalar part must be square");
  Element x = zero(a, s.rows());
  x.scalar = s;
  return x;
}

Element Element::unit(const Algebra& a, int level) {
  return scalar_element(a, CMatrix::identity(level));
}

CMatrix Element::full(int node, int b) const {
  int nb = alg.base.blocks.at(b);
  return CMatrix::kron_identity(scalar, nb) + body.at(node).at(b);
}

Element Element::adjoint() const {
  Element out = *this;
  out.scalar = scalar.adjoint();
  for (auto& node : out.body) {
    for (auto& m : node) m = m.adjoint();
  }
  return out;
}

Element Element::operator+(const Element& o) const {
  require_same_shape(*this, o, "add");
  Element out = *this;
  out.scalar = scalar + o.scalar;
  for (size_t i = 0; i < body.size(); ++i) {
    for (size_t b = 0; b < body[i].size(); ++b) {
      out.body[i][b] = body[i][b] + o.body[i][b];
    }
  }
  return out;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const { return scale(cplx(-1.0, 0.0)); }

Element Element::scale(cplx c) const {
  Element out = *this;
  out.scalar = scalar * c;
  for (auto& node : out.body) {
    for (auto& m : node) m = m * c;
  }
  return out;
}

Element Element::operator*(const Element& o) const {
  require_same_shape(*this, o, "mul");
  Element out = *this;
  out.scalar = scalar * o.scalar;
  for (size_t i = 0; i < body.size(); ++i) {
    for (size_t b = 0; b < body[i].size(); ++b) {
      int nb = alg.base.blocks[b];
      CMatrix f = full(int(i), int(b)) * o.full(int(i), int(b));
      out.body[i][b] = f - CMatrix::kron_identity(out.scalar, nb);
    }
  }
  return out;
}

double Element::max_abs() const {
  double m = scalar.max_abs();
  for (const auto& node : body) {
    for (const auto& blk : node) m = std::max(m, blk.max_abs());
  }
  return m;
}

bool Element::approx_equal(const Element& o, double eps) const {
  if (!alg.same_shape(o.alg) || level != o.level) return false;
  return element_diff(*this, o) <= eps;
}

double element_diff(const Element& a, const Element& b) {
  require_same_shape(a, b, "diff");
  double m = CMatrix::max_abs_diff(a.scalar, b.scalar);
  for (size_t i = 0; i < a.body.size(); ++i) {
    for (size_t j = 0; j < a.body[i].size(); ++j) {
      m = std::max(m, CMatrix::max_abs_diff(a.body[i][j], b.body[i][j]));
    }
  }
  return m;
}

Element direct_sum(const Element& a, const Element& b) {
  if (!a.alg.same_shape(b.alg)) {
    throw AlgebraMismatchError("direct_sum: different algebras");
  }
  Element out;
  out.alg = a.alg;
  out.level = a.level + b.level;
  out.scalar = CMatrix::direct_sum(a.scalar, b.scalar);
  out.body.resize(a.body.size());
  for (size_t i = 0; i < a.body.size(); ++i) {
    out.body[i].reserve(a.body[i].size());
    for (size_t j = 0; j < a.body[i].size(); ++j) {
      out.body[i].push_back(CMatrix::direct_sum(a.body[i][j], b.body[i][j]));
    }
  }
  return out;
}

Element pad_to(const Element& x, int level) {
  if (level < x.level) throw DimensionError("pad_to: cannot shrink level");
  if (level == x.level) return x;
  return direct_sum(x, Element::zero(x.alg, level - x.level));
}

Element scalar_mul_left(const CMatrix& s, const Element& x) {
  if (s.rows() != x.level || s.cols() != x.level) {
    throw DimensionError("scalar_mul_left: size mismatch");
  }
  Element out = x;
  out.scalar = s * x.scalar;
  for (size_t i = 0; i < x.body.size(); ++i) {
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      int nb = x.alg.base.blocks[b];
      out.body[i][b] = CMatrix::kron_identity(s, nb) * x.body[i][b];
    }
  }
  return out;
}

Element scalar_mul_right(const Element& x, const CMatrix& s) {
  if (s.rows() != x.level || s.cols() != x.level) {
    throw DimensionError("scalar_mul_right: size mismatch");
  }
  Element out = x;
  out.scalar = x.scalar * s;
  for (size_t i = 0; i < x.body.size(); ++i) {
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      int nb = x.alg.base.blocks[b];
      out.body[i][b] = x.body[i][b] * CMatrix::kron_identity(s, nb);
    }
  }
  return out;
}

Element scalar_conj(const CMatrix& u, const Element& x) {
  return scalar_mul_right(scalar_mul_left(u, x), u.adjoint());
}

Element level_block_2x2(const Element* x00, const Element* x01,
                        const Element* x10, const Element* x11) {
  const Element* cells[4] = {x00, x01, x10, x11};
  const Element* ref = nullptr;
  for (const Element* c : cells) {
    if (c == nullptr) continue;
    if (ref == nullptr) {
      ref = c;
    } else {
      require_same_shape(*ref, *c, "level_block_2x2");
    }
  }
  if (ref == nullptr) throw ValidationError("level_block_2x2: all cells null");
  int n = ref->level;
  Element out = Element::zero(ref->alg, 2 * n);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Element* cell = cells[2 * r + c];
      if (cell == nullptr) continue;
      out.scalar.paste(r * n, c * n, cell->scalar);
      for (size_t i = 0; i < out.body.size(); ++i) {
        for (size_t b = 0; b < out.body[i].size(); ++b) {
          int nb = ref->alg.base.blocks[b];
          out.body[i][b].paste(r * n * nb, c * n * nb, cell->body[i][b]);
        }
      }
    }
  }
  return out;
}

Classification classify_element(const Element& x, double eps) {
  Classification c = classify(x.scalar, eps);
  for (size_t i = 0; i < x.body.size(); ++i) {
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      Classification cb = classify(x.full(int(i), int(b)), eps);
      c.idempotent = c.idempotent && cb.idempotent;
      c.self_adjoint = c.self_adjoint && cb.self_adjoint;
      c.projection = c.projection && cb.projection;
      c.partial_isometry = c.partial_isometry && cb.partial_isometry;
      c.unitary = c.unitary && cb.unitary;
    }
  }
  return c;
}

std::vector<std::string> validate_element(const Element& x, double eps) {
  std::vector<std::string> out;
  const Algebra& a = x.alg;
  if (x.level < 0) {
    out.push_back("negative level");
    return out;
  }
  if (x.scalar.rows() != x.level || x.scalar.cols() != x.level) {
    out.push_back("scalar part is not level x level");
    return out;
  }
  if (int(x.body.size()) != a.node_count()) {
    out.push_back("body has wrong node count");
    return out;
  }
  for (size_t i = 0; i < x.body.size(); ++i) {
    if (int(x.body[i].size()) != a.base.block_count()) {
      out.push_back("body node has wrong block count");
      return out;
    }
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      int want = x.level * a.base.blocks[b];
      if (x.body[i][b].rows() != want || x.body[i][b].cols() != want) {
        out.push_back("body matrix has wrong size");
        return out;
      }
      if (!x.body[i][b].all_finite()) {
        out.push_back("body contains non-finite entries");
        return out;
      }
    }
  }
  if (!x.scalar.all_finite()) out.push_back("scalar contains non-finite entries");

  auto node_norm = [&](int node) {
    double m = 0.0;
    for (size_t b = 0; b < x.body[node].size(); ++b) {
      m = std::max(m, x.body[node][b].max_abs());
    }
    return m;
  };
  auto node_diff = [&](int n1, int n2) {
    double m = 0.0;
    for (size_t b = 0; b < x.body[n1].size(); ++b) {
      m = std::max(m, CMatrix::max_abs_diff(x.body[n1][b], x.body[n2][b]));
    }
    return m;
  };

  int g = a.grid;
  if (a.domain == Domain::interval) {
    if (a.boundary == Boundary::vanish_ends) {
      double d = std::max(node_norm(0), node_norm(g - 1));
      if (d > eps) out.push_back("body does not vanish at the ends (defect " + fmt(d) + ")");
    } else if (a.boundary == Boundary::endpoints_equal) {
      double d = node_diff(0, g - 1);
      if (d > eps) out.push_back("endpoint values differ (defect " + fmt(d) + ")");
    }
  } else if (a.domain == Domain::polar) {
    double wrap = 0.0, center = 0.0;
    for (int ir = 0; ir < g; ++ir) {
      wrap = std::max(wrap, node_diff(a.polar_index(ir, 0), a.polar_index(ir, g - 1)));
    }
    for (int it = 1; it < g; ++it) {
      center = std::max(center, node_diff(a.polar_index(0, 0), a.polar_index(0, it)));
    }
    if (wrap > eps) out.push_back("angular wrap mismatch (defect " + fmt(wrap) + ")");
    if (center > eps) out.push_back("center value depends on the angle (defect " + fmt(center) + ")");
    if (a.boundary == Boundary::vanish_boundary) {
      double ring = 0.0;
      for (int it = 0; it < g; ++it) {
        ring = std::max(ring, node_norm(a.polar_index(g - 1, it)));
      }
      if (ring > eps) out.push_back("body does not vanish on the boundary circle (defect " + fmt(ring) + ")");
    }
  }
  return out;
}

double smooth_step_norm(const Element& x) {
  const Algebra& a = x.alg;
  if (a.domain == Domain::point) return 0.0;
  double m = 0.0;
  auto step = [&](int n1, int n2) {
    for (size_t b = 0; b < x.body[n1].size(); ++b) {
      m = std::max(m, op_norm(x.body[n1][b] - x.body[n2][b]));
    }
  };
  int g = a.grid;
  if (a.domain == Domain::interval) {
    for (int i = 0; i + 1 < g; ++i) step(i, i + 1);
  } else {
    for (int ir = 0; ir < g; ++ir) {
      for (int it = 0; it < g; ++it) {
        if (ir + 1 < g) step(a.polar_index(ir, it), a.polar_index(ir + 1, it));
        if (it + 1 < g) step(a.polar_index(ir, it), a.polar_index(ir, it + 1));
      }
    }
  }
  return m;
}

namespace {

// Apply f to the scalar part and every represented block value, then split
// the results back into scalar + body form.
template <typename F>
Element blockwise(const Element& x, F&& f) {
  Element out = x;
  out.scalar = f(x.scalar);
  for (size_t i = 0; i < x.body.size(); ++i) {
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      int nb = x.alg.base.blocks[b];
      out.body[i][b] =
          f(x.full(int(i), int(b))) - CMatrix::kron_identity(out.scalar, nb);
    }
  }
  return out;
}

}  // namespace

Element element_inverse(const Element& x) {
  return blockwise(x, [](const CMatrix& m) {
    return solve(m, CMatrix::identity(m.rows()));
  });
}

Element element_inv_sqrt_psd(const Element& x, const Element& support) {
  require_same_shape(x, support, "element_inv_sqrt_psd");
  Element out = x;
  out.scalar = inv_sqrt_psd(x.scalar, support.scalar);
  for (size_t i = 0; i < x.body.size(); ++i) {
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      int nb = x.alg.base.blocks[b];
      out.body[i][b] =
          inv_sqrt_psd(x.full(int(i), int(b)), support.full(int(i), int(b))) -
          CMatrix::kron_identity(out.scalar, nb);
    }
  }
  return out;
}

Element element_rho(const Element& e) {
  Element es = e.adjoint();
  Element t = (e - es) * (es - e);
  Element inv = element_inverse(Element::unit(e.alg, e.level) + t);
  return e * es * inv;
}

Element element_proj_exp(const Element& p, double t) {
  cplx z = cis_2pi(t) - cplx(1.0, 0.0);
  Element out = p;
  out.scalar = CMatrix::identity(p.level) + p.scalar * z;
  for (auto& node : out.body) {
    for (auto& m : node) m = m * z;
  }
  return out;
}

Element element_exp_2pi(const Element& h, double t) {
  return blockwise(h, [&](const CMatrix& m) { return herm_exp_2pi(m, t); });
}

Element element_sau_path(const Element& u, double t) {
  return blockwise(u, [&](const CMatrix& m) { return sau_path_point(m, t); });
}

Element element_unitary_log(const Element& u) {
  Element out = u;
  out.scalar = unitary_log(u.scalar);
  for (size_t i = 0; i < u.body.size(); ++i) {
    for (size_t b = 0; b < u.body[i].size(); ++b) {
      int nb = u.alg.base.blocks[b];
      out.body[i][b] = unitary_log(u.full(int(i), int(b))) -
                       CMatrix::kron_identity(out.scalar, nb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

Hom block_hom(const Algebra& src, const Algebra& tgt,
              const std::vector<std::vector<int>>& copies,
              std::vector<CMatrix> unitaries, std::string label) {
  if (src.domain != tgt.domain || src.boundary != tgt.boundary ||
      src.grid != tgt.grid) {
    throw AlgebraMismatchError("block_hom: source and target domains differ");
  }
  int k = src.base.block_count();
  int l = tgt.base.block_count();
  if (int(copies.size()) != l) {
    throw DimensionError("block_hom: one copies row per target block");
  }
  Hom h;
  h.kind = HomKind::block;
  h.source = src;
  h.target = tgt;
  h.label = std::move(label);
  for (int i = 0; i < l; ++i) {
    if (int(copies[i].size()) != k) {
      throw DimensionError("block_hom: one copies entry per source block");
    }
    int used = 0;
    for (int j = 0; j < k; ++j) {
      if (copies[i][j] < 0) throw ValidationError("block_hom: negative copies");
      used += copies[i][j] * src.base.blocks[j];
    }
    int m = tgt.base.blocks[i];
    if (used > m) throw DimensionError("block_hom: target block too small");
    BlockAction act;
    act.copies = copies[i];
    if (i < int(unitaries.size()) && unitaries[i].rows() > 0) {
      act.u = unitaries[i];
      if (act.u.rows() != m || act.u.cols() != m) {
        throw DimensionError("block_hom: realizing unitary has wrong size");
      }
      if (!classify(act.u).unitary) {
        throw ValidationError("block_hom: realizing matrix is not unitary");
      }
    } else {
      act.u = CMatrix::identity(m);
    }
    h.actions.push_back(std::move(act));
  }
  return h;
}

Hom identity_hom(const Algebra& a) {
  int k = a.base.block_count();
  std::vector<std::vector<int>> copies(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i) copies[i][i] = 1;
  Hom h = block_hom(a, a, copies, {}, "id");
  return h;
}

Hom zero_hom(const Algebra& src, const Algebra& tgt, std::string label) {
  Hom h;
  h.kind = HomKind::zero;
  h.source = src;
  h.target = tgt;
  h.label = label.empty() ? "0" : std::move(label);
  return h;
}

Hom endpoint_eval_hom(const Algebra& src, std::string label) {
  if (src.domain != Domain::interval || src.boundary != Boundary::none) {
    throw AlgebraMismatchError(
        "endpoint_eval: source must be interval functions without boundary "
        "conditions");
  }
  Hom h;
  h.kind = HomKind::endpoint_eval;
  h.source = src;
  h.target = point_algebra(fd_direct_sum(src.base, src.base,
                                         src.base.label + "+" + src.base.label));
  h.label = label.empty() ? "ev" : std::move(label);
  return h;
}

Hom restrict_boundary_hom(const Algebra& src, std::string label) {
  if (src.domain != Domain::polar || src.boundary != Boundary::none) {
    throw AlgebraMismatchError(
        "restrict_boundary: source must be disk functions without boundary "
        "conditions");
  }
  Hom h;
  h.kind = HomKind::restrict_boundary;
  h.source = src;
  h.target = interval_algebra(src.base, Boundary::endpoints_equal, src.grid,
                              src.base.label + " on the circle");
  h.label = label.empty() ? "res" : std::move(label);
  return h;
}

Hom include_bc_hom(const Algebra& src, const Algebra& tgt, std::string label) {
  bool ok = src.base.blocks == tgt.base.blocks && src.domain == tgt.domain &&
            src.grid == tgt.grid &&
            (tgt.boundary == Boundary::none || tgt.boundary == src.boundary);
  if (!ok) {
    throw AlgebraMismatchError(
        "include_bc: target must be the same sampled algebra with a weaker "
        "boundary condition");
  }
  Hom h;
  h.kind = HomKind::include_bc;
  h.source = src;
  h.target = tgt;
  h.label = label.empty() ? "inc" : std::move(label);
  return h;
}

Hom compose_homs(const Hom& second, const Hom& first, std::string label) {
  if (!first.target.same_shape(second.source)) {
    throw AlgebraMismatchError("compose_homs: stages do not chain");
  }
  Hom h;
  h.kind = HomKind::compose;
  h.source = first.source;
  h.target = second.target;
  h.stages = {first, second};
  h.label = label.empty() ? second.label + "." + first.label : std::move(label);
  return h;
}

namespace {

Element apply_block(const Hom& h, const Element& x) {
  int n = x.level;
  Element out = Element::zero(h.target, n);
  out.scalar = x.scalar;
  int nodes = h.target.node_count();
  for (int node = 0; node < nodes; ++node) {
    for (int i = 0; i < h.target.base.block_count(); ++i) {
      const BlockAction& act = h.actions[i];
      int m = h.target.base.blocks[i];
      CMatrix arranged = CMatrix::zeros(n * m, n * m);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          int off = 0;
          for (int j = 0; j < h.source.base.block_count(); ++j) {
            int nj = h.source.base.blocks[j];
            for (int copy = 0; copy < act.copies[j]; ++copy) {
              CMatrix cell = x.full(node, j).block(r * nj, c * nj, nj, nj);
              arranged.paste(r * m + off, c * m + off, cell);
              off += nj;
            }
          }
          for (int d = off; d < m; ++d) {
            arranged.at(r * m + d, c * m + d) = x.scalar.at(r, c);
          }
        }
      }
      CMatrix u = kron_left(n, act.u);
      CMatrix f = u * arranged * u.adjoint();
      out.body[node][i] = f - CMatrix::kron_identity(out.scalar, m);
    }
  }
  return out;
}

}  // namespace

Element apply(const Hom& h, const Element& x) {
  if (!x.alg.same_shape(h.source)) {
    throw AlgebraMismatchError("apply: element is not over the source algebra");
  }
  switch (h.kind) {
    case HomKind::zero:
      return Element::scalar_element(h.target, x.scalar);
    case HomKind::block:
      return apply_block(h, x);
    case HomKind::endpoint_eval: {
      Element out = Element::zero(h.target, x.level);
      out.scalar = x.scalar;
      int k = h.source.base.block_count();
      int last = h.source.grid - 1;
      for (int b = 0; b < k; ++b) {
        out.body[0][b] = x.body[0][b];
        out.body[0][k + b] = x.body[last][b];
      }
      return out;
    }
    case HomKind::restrict_boundary: {
      Element out = Element::zero(h.target, x.level);
      out.scalar = x.scalar;
      int g = h.source.grid;
      for (int it = 0; it < g; ++it) {
        out.body[it] = x.body[h.source.polar_index(g - 1, it)];
      }
      return out;
    }
    case HomKind::include_bc: {
      Element out = x;
      out.alg = h.target;
      return out;
    }
    case HomKind::compose: {
      Element cur = x;
      for (const Hom& stage : h.stages) cur = apply(stage, cur);
      return cur;
    }
  }
  throw Error("apply: unknown homomorphism kind");
}

std::vector<Element> apply_path(const Hom& h, const std::vector<Element>& p) {
  std::vector<Element> out;
  out.reserve(p.size());
  for (const Element& x : p) out.push_back(apply(h, x));
  return out;
}

std::vector<std::string> validate_hom(const Hom& h) {
  std::vector<std::string> out;
  switch (h.kind) {
    case HomKind::block: {
      if (int(h.actions.size()) != h.target.base.block_count()) {
        out.push_back("one action per target block required");
      }
      break;
    }
    case HomKind::compose: {
      if (h.stages.size() < 2) out.push_back("composite needs two stages");
      for (size_t i = 0; i + 1 < h.stages.size(); ++i) {
        if (!h.stages[i].target.same_shape(h.stages[i + 1].source)) {
          out.push_back("composite stages do not chain");
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

double hom_mult_defect(const Hom& h, const Element& x, const Element& y) {
  double d = element_diff(apply(h, x * y), apply(h, x) * apply(h, y));
  d = std::max(d, element_diff(apply(h, x.adjoint()), apply(h, x).adjoint()));
  d = std::max(d, element_diff(apply(h, x + y), apply(h, x) + apply(h, y)));
  return d;
}

namespace {

// K0 rank of the constant-projection lattice, when that is all of K0.
int k0_rank(const Algebra& a) {
  if (a.is_zero()) return 0;
  bool flat = a.domain == Domain::point ||
              (a.boundary == Boundary::none &&
               (a.domain == Domain::interval || a.domain == Domain::polar));
  if (!flat) {
    throw RegimeError(
        "k0_matrix: K0 of this algebra is not generated by constant "
        "projections");
  }
  return a.base.block_count();
}

}  // namespace

intk::IMatrix k0_matrix(const Hom& h) {
  int rows = k0_rank(h.target);
  int cols = k0_rank(h.source);
  intk::IMatrix m(rows, cols);
  switch (h.kind) {
    case HomKind::zero:
      return m;
    case HomKind::block: {
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m.at(i, j) = h.actions[i].copies[j];
      }
      return m;
    }
    case HomKind::endpoint_eval: {
      for (int j = 0; j < cols; ++j) {
        m.at(j, j) = 1;
        m.at(cols + j, j) = 1;
      }
      return m;
    }
    case HomKind::compose: {
      intk::IMatrix acc = intk::IMatrix::identity(cols);
      for (const Hom& stage : h.stages) acc = k0_matrix(stage) * acc;
      return acc;
    }
    default:
      throw RegimeError("k0_matrix: no induced-map matrix for this kind");
  }
}

// ---------------------------------------------------------------------------
// Rows and ladders

Row fd_row(const FDAlgebra& total, const std::vector<int>& ideal_blocks,
           std::string label) {
  std::set<int> seen;
  for (int b : ideal_blocks) {
    if (b < 0 || b >= total.block_count()) {
      throw ValidationError("fd_row: ideal block index out of range");
    }
    if (!seen.insert(b).second) {
      throw ValidationError("fd_row: repeated ideal block");
    }
  }
  std::vector<int> ideal_sizes, quot_sizes, quot_blocks;
  for (int b : ideal_blocks) ideal_sizes.push_back(total.blocks[b]);
  for (int b = 0; b < total.block_count(); ++b) {
    if (!seen.count(b)) {
      quot_sizes.push_back(total.blocks[b]);
      quot_blocks.push_back(b);
    }
  }
  Row row;
  row.lift = LiftStyle::insert_blocks;
  row.ideal_blocks = ideal_blocks;
  row.total = point_algebra(total, label.empty() ? total.label : label);
  row.ideal = ideal_sizes.empty()
                  ? zero_algebra()
                  : point_algebra(FDAlgebra{ideal_sizes, label + " ideal"});
  row.quotient = quot_sizes.empty()
                     ? zero_algebra()
                     : point_algebra(FDAlgebra{quot_sizes, label + " quotient"});

  if (ideal_sizes.empty()) {
    row.iota = zero_hom(row.ideal, row.total);
  } else {
    std::vector<std::vector<int>> ci(total.block_count(),
                                     std::vector<int>(ideal_sizes.size(), 0));
    for (size_t j = 0; j < ideal_blocks.size(); ++j) ci[ideal_blocks[j]][j] = 1;
    row.iota = block_hom(row.ideal, row.total, ci, {}, "iota");
  }
  if (quot_sizes.empty()) {
    row.pi = zero_hom(row.total, row.quotient);
  } else {
    std::vector<std::vector<int>> cp(quot_sizes.size(),
                                     std::vector<int>(total.block_count(), 0));
    for (size_t i = 0; i < quot_blocks.size(); ++i) cp[i][quot_blocks[i]] = 1;
    row.pi = block_hom(row.total, row.quotient, cp, {}, "pi");
  }
  return row;
}

Row interval_row(const FDAlgebra& base, int grid, std::string label) {
  Row row;
  row.lift = LiftStyle::interpolate_ends;
  row.total = interval_algebra(base, Boundary::none, grid,
                               label.empty() ? "C([0,1]," + base.label + ")" : label);
  row.ideal = interval_algebra(base, Boundary::vanish_ends, grid,
                               "S" + base.label);
  row.iota = include_bc_hom(row.ideal, row.total);
  row.pi = endpoint_eval_hom(row.total);
  row.quotient = row.pi.target;
  return row;
}

Row polar_row(const FDAlgebra& base, int grid, std::string label) {
  Row row;
  row.lift = LiftStyle::radial_taper;
  row.total = polar_algebra(base, Boundary::none, grid,
                            label.empty() ? "disk " + base.label : label);
  row.ideal = polar_algebra(base, Boundary::vanish_boundary, grid,
                            base.label + " vanishing on the boundary");
  row.iota = include_bc_hom(row.ideal, row.total);
  row.pi = restrict_boundary_hom(row.total);
  row.quotient = row.pi.target;
  return row;
}

Row zero_ideal_row(const Algebra& b, std::string label) {
  Row row;
  row.lift = LiftStyle::identity;
  row.ideal = zero_algebra();
  row.total = b;
  row.quotient = b;
  row.iota = zero_hom(row.ideal, row.total);
  row.pi = identity_hom(b);
  (void)label;
  return row;
}

Element sa_lift(const Row& row, const Element& q) {
  if (!q.alg.same_shape(row.quotient)) {
    throw AlgebraMismatchError("lift: element is not over the quotient");
  }
  switch (row.lift) {
    case LiftStyle::identity: {
      Element out = q;
      out.alg = row.total;
      return out;
    }
    case LiftStyle::insert_blocks: {
      Element out = Element::zero(row.total, q.level);
      out.scalar = q.scalar;
      std::set<int> ideal(row.ideal_blocks.begin(), row.ideal_blocks.end());
      int qb = 0;
      for (int b = 0; b < row.total.base.block_count(); ++b) {
        if (ideal.count(b)) continue;
        out.body[0][b] = q.body[0][qb++];
      }
      return out;
    }
    case LiftStyle::interpolate_ends: {
      Element out = Element::zero(row.total, q.level);
      out.scalar = q.scalar;
      int k = row.total.base.block_count();
      int g = row.total.grid;
      for (int i = 0; i < g; ++i) {
        double s = row.total.interval_s(i);
        for (int b = 0; b < k; ++b) {
          out.body[i][b] =
              q.body[0][b] * cplx(1.0 - s, 0.0) + q.body[0][k + b] * cplx(s, 0.0);
        }
      }
      return out;
    }
    case LiftStyle::radial_taper: {
      Element out = Element::zero(row.total, q.level);
      out.scalar = q.scalar;
      int g = row.total.grid;
      for (int ir = 0; ir < g; ++ir) {
        double r = row.total.interval_s(ir);
        for (int it = 0; it < g; ++it) {
          int node = row.total.polar_index(ir, it);
          for (size_t b = 0; b < out.body[node].size(); ++b) {
            out.body[node][b] = q.body[it][b] * cplx(r, 0.0);
          }
        }
      }
      return out;
    }
  }
  throw Error("lift: unknown style");
}

Element element_lift(const Row& row, const Element& q) { return sa_lift(row, q); }

Element corestrict(const Row& row, const Element& x, double* defect) {
  if (!x.alg.same_shape(row.total)) {
    throw AlgebraMismatchError("corestrict: element is not over the total algebra");
  }
  double d = 0.0;
  Element out;
  switch (row.lift) {
    case LiftStyle::identity: {
      // Zero ideal: the element must be scalar.
      for (const auto& node : x.body) {
        for (const auto& m : node) d = std::max(d, m.max_abs());
      }
      out = Element::scalar_element(row.ideal, x.scalar);
      break;
    }
    case LiftStyle::insert_blocks: {
      std::set<int> ideal(row.ideal_blocks.begin(), row.ideal_blocks.end());
      out = Element::zero(row.ideal, x.level);
      out.scalar = x.scalar;
      int ib = 0;
      for (int b = 0; b < row.total.base.block_count(); ++b) {
        if (ideal.count(b)) {
          out.body[0][ib++] = x.body[0][b];
        } else {
          d = std::max(d, x.body[0][b].max_abs());
        }
      }
      break;
    }
    case LiftStyle::interpolate_ends: {
      out = x;
      out.alg = row.ideal;
      int g = row.total.grid;
      for (int node : {0, g - 1}) {
        for (auto& m : out.body[node]) {
          d = std::max(d, m.max_abs());
          m = CMatrix::zeros(m.rows(), m.cols());
        }
      }
      break;
    }
    case LiftStyle::radial_taper: {
      out = x;
      out.alg = row.ideal;
      int g = row.total.grid;
      for (int it = 0; it < g; ++it) {
        int node = row.total.polar_index(g - 1, it);
        for (auto& m : out.body[node]) {
          d = std::max(d, m.max_abs());
          m = CMatrix::zeros(m.rows(), m.cols());
        }
      }
      break;
    }
  }
  if (defect != nullptr) *defect = d;
  return out;
}

namespace {

// Deterministic self-adjoint probe with nonzero entries in every block.
Element probe_element(const Algebra& a, int level, int seed) {
  Element x = Element::zero(a, level);
  double t = 0.37 * (seed + 1);
  for (size_t i = 0; i < x.body.size(); ++i) {
    for (size_t b = 0; b < x.body[i].size(); ++b) {
      CMatrix& m = x.body[i][b];
      for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
          t = t + 1.0;
          m.at(r, c) = cplx(std::cos(t * (r + 1) + 0.1 * i),
                            std::sin(t * (c + 2) - 0.05 * double(i)));
        }
      }
      m = (m + m.adjoint()) * cplx(0.5, 0.0);
    }
  }
  // Respect the boundary conditions so probes are honest ideal elements.
  auto zero_node = [&](int node) {
    for (auto& m : x.body[node]) m = CMatrix::zeros(m.rows(), m.cols());
  };
  if (a.domain == Domain::interval && a.boundary == Boundary::vanish_ends) {
    zero_node(0);
    zero_node(a.grid - 1);
  }
  if (a.domain == Domain::interval && a.boundary == Boundary::endpoints_equal) {
    x.body[a.grid - 1] = x.body[0];
  }
  if (a.domain == Domain::polar) {
    for (int ir = 0; ir < a.grid; ++ir) {
      x.body[a.polar_index(ir, a.grid - 1)] = x.body[a.polar_index(ir, 0)];
    }
    for (int it = 1; it < a.grid; ++it) {
      x.body[a.polar_index(0, it)] = x.body[a.polar_index(0, 0)];
    }
    if (a.boundary == Boundary::vanish_boundary) {
      for (int it = 0; it < a.grid; ++it) zero_node(a.polar_index(a.grid - 1, it));
    }
  }
  return x;
}

}  // namespace

std::vector<std::string> validate_ladder(const Ladder& l, double eps) {
  std::vector<std::string> out;
  if (!l.psi.source.same_shape(l.a.ideal) || !l.psi.target.same_shape(l.b.ideal)) {
    out.push_back("psi does not connect the ideals");
  }
  if (!l.phi.source.same_shape(l.a.total) || !l.phi.target.same_shape(l.b.total)) {
    out.push_back("phi does not connect the total algebras");
  }
  if (!l.gamma.source.same_shape(l.a.quotient) ||
      !l.gamma.target.same_shape(l.b.quotient)) {
    out.push_back("gamma does not connect the quotients");
  }
  if (!out.empty()) return out;

  for (int seed = 0; seed < 3; ++seed) {
    if (!l.a.ideal.is_zero()) {
      Element x = probe_element(l.a.ideal, 2, seed);
      double d = element_diff(apply(l.phi, apply(l.a.iota, x)),
                              apply(l.b.iota, apply(l.psi, x)));
      if (d > eps) {
        out.push_back("ideal square does not commute (defect " + fmt(d) + ")");
        break;
      }
    }
  }
  for (int seed = 0; seed < 3; ++seed) {
    Element y = probe_element(l.a.total, 2, seed + 7);
    double d = element_diff(apply(l.b.pi, apply(l.phi, y)),
                            apply(l.gamma, apply(l.a.pi, y)));
    if (d > eps) {
      out.push_back("quotient square does not commute (defect " + fmt(d) + ")");
      break;
    }
  }
  return out;
}

ConeElement cone_element(const Element& a, std::vector<Element> f,
                         const Hom& h, double eps) {
  if (f.empty()) throw ValidationError("cone element needs a nonempty path");
  if (!a.alg.same_shape(h.source)) {
    throw AlgebraMismatchError("cone element: a is not over the source");
  }
  for (const Element& node : f) {
    if (!node.alg.same_shape(h.target) || node.level != a.level) {
      throw AlgebraMismatchError("cone element: path is not over the target");
    }
  }
  double d = element_diff(f.back(), apply(h, a));
  if (d > eps) {
    throw EndpointMismatchError("cone element: f(1) differs from the image of a by " +
                                fmt(d));
  }
  return ConeElement{a, std::move(f)};
}

}  // namespace relk
