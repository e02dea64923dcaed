#include "relk/problem.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "relk/errors.hpp"

namespace relk {

namespace {

using njson = nlohmann::json;

// ---- canonical emission -------------------------------------------------
// Sorted keys throughout, floats at 17 significant digits, entities compact
// on one line each. parse(serialize(p)) followed by serialize is the
// identity on bytes.

std::string fmt_f(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string enc_matrix(const CMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      cplx z = m.at(i, j);
      out += '[';
      out += fmt_f(z.real());
      out += ',';
      out += fmt_f(z.imag());
      out += ']';
    }
    out += ']';
  }
  out += ']';
  return out;
}

std::string enc_int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
  return out;
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::point: return "point";
    case Domain::interval: return "interval";
    case Domain::polar: return "polar";
  }
  return "point";
}

const char* boundary_name(Boundary b) {
  switch (b) {
    case Boundary::none: return "none";
    case Boundary::endpoints_equal: return "endpoints_equal";
    case Boundary::vanish_ends: return "vanish_ends";
    case Boundary::vanish_boundary: return "vanish_boundary";
  }
  return "none";
}

std::string enc_algebra(const Algebra& a) {
  std::string out = "{\"blocks\":" + enc_int_list(a.base.blocks);
  out += ",\"boundary\":" + quote(boundary_name(a.boundary));
  out += ",\"domain\":" + quote(domain_name(a.domain));
  out += ",\"grid\":" + std::to_string(a.grid) + "}";
  return out;
}

// Elements carry the name of their algebra; the caller supplies the lookup.
using AlgebraNamer = std::function<std::string(const Algebra&)>;

std::string enc_element(const Element& e, const AlgebraNamer& namer) {
  std::string out = "{\"algebra\":" + quote(namer(e.alg));
  out += ",\"body\":[";
  for (std::size_t n = 0; n < e.body.size(); ++n) {
    if (n) out += ',';
    out += '[';
    for (std::size_t b = 0; b < e.body[n].size(); ++b) {
      if (b) out += ',';
      out += enc_matrix(e.body[n][b]);
    }
    out += ']';
  }
  out += "],\"level\":" + std::to_string(e.level);
  out += ",\"scalar\":" + enc_matrix(e.scalar) + "}";
  return out;
}

std::string enc_element_list(const std::vector<Element>& v,
                             const AlgebraNamer& namer) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += enc_element(v[i], namer);
  }
  out += ']';
  return out;
}

bool is_identity(const CMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != cplx(i == j ? 1.0 : 0.0, 0.0)) return false;
  return true;
}

std::string enc_hom(const Hom& h, const AlgebraNamer& namer) {
  switch (h.kind) {
    case HomKind::block: {
      std::string out = "{\"copies\":[";
      for (std::size_t i = 0; i < h.actions.size(); ++i) {
        if (i) out += ',';
        out += enc_int_list(h.actions[i].copies);
      }
      out += "],\"kind\":\"block\",\"source\":" + quote(namer(h.source));
      out += ",\"target\":" + quote(namer(h.target));
      bool trivial = true;
      for (const auto& act : h.actions) trivial = trivial && is_identity(act.u);
      if (!trivial) {
        out += ",\"unitaries\":[";
        for (std::size_t i = 0; i < h.actions.size(); ++i) {
          if (i) out += ',';
          out += enc_matrix(h.actions[i].u);
        }
        out += ']';
      }
      out += '}';
      return out;
    }
    case HomKind::zero:
      return "{\"kind\":\"zero\",\"source\":" + quote(namer(h.source)) +
             ",\"target\":" + quote(namer(h.target)) + "}";
    case HomKind::endpoint_eval:
      return "{\"kind\":\"endpoint_eval\",\"source\":" +
             quote(namer(h.source)) + "}";
    case HomKind::restrict_boundary:
      return "{\"kind\":\"restrict_boundary\",\"source\":" +
             quote(namer(h.source)) + "}";
    case HomKind::include_bc:
      return "{\"kind\":\"include_bc\",\"source\":" + quote(namer(h.source)) +
             ",\"target\":" + quote(namer(h.target)) + "}";
    case HomKind::compose: {
      std::string out = "{\"kind\":\"compose\",\"stages\":[";
      for (std::size_t i = 0; i < h.stages.size(); ++i) {
        if (i) out += ',';
        out += enc_hom(h.stages[i], namer);
      }
      out += "]}";
      return out;
    }
  }
  throw Error("unknown homomorphism kind");
}

std::string enc_row(const Row& r, const AlgebraNamer& namer) {
  switch (r.lift) {
    case LiftStyle::insert_blocks:
      return "{\"ideal_blocks\":" + enc_int_list(r.ideal_blocks) +
             ",\"kind\":\"blocks\",\"total\":" + quote(namer(r.total)) + "}";
    case LiftStyle::interpolate_ends:
      return "{\"blocks\":" + enc_int_list(r.total.base.blocks) +
             ",\"grid\":" + std::to_string(r.total.grid) +
             ",\"kind\":\"interval\"}";
    case LiftStyle::radial_taper:
      return "{\"blocks\":" + enc_int_list(r.total.base.blocks) +
             ",\"grid\":" + std::to_string(r.total.grid) +
             ",\"kind\":\"polar\"}";
    case LiftStyle::identity:
      return "{\"algebra\":" + quote(namer(r.total)) +
             ",\"kind\":\"zero_ideal\"}";
  }
  throw Error("unknown row kind");
}

// Names of the ladder homomorphisms are recovered by shape-and-kind match
// against the named homomorphisms; the converter guarantees they exist.
using HomNamer = std::function<std::string(const Hom&)>;

std::string enc_ladder(const Ladder& l, const AlgebraNamer& namer,
                       const HomNamer& hom_namer) {
  std::string out = "{\"bottom\":" + enc_row(l.b, namer);
  out += ",\"gamma\":" + quote(hom_namer(l.gamma));
  out += ",\"label\":" + quote(l.label);
  out += ",\"phi\":" + quote(hom_namer(l.phi));
  out += ",\"psi\":" + quote(hom_namer(l.psi));
  out += ",\"top\":" + enc_row(l.a, namer) + "}";
  return out;
}

std::string enc_k0(const K0Triple& t, const AlgebraNamer& namer,
                   const HomNamer& hom_namer) {
  return "{\"degree\":0,\"hom\":" + quote(hom_namer(t.hom)) +
         ",\"p\":" + enc_element(t.p, namer) +
         ",\"q\":" + enc_element(t.q, namer) +
         ",\"v\":" + enc_element(t.v, namer) + "}";
}

std::string enc_k1(const K1Triple& t, const AlgebraNamer& namer,
                   const HomNamer& hom_namer) {
  return "{\"degree\":1,\"g\":" + enc_element_list(t.g, namer) +
         ",\"hom\":" + quote(hom_namer(t.hom)) +
         ",\"negated\":" + (t.negated ? std::string("true") : "false") +
         ",\"p\":" + enc_element(t.p, namer) +
         ",\"u\":" + enc_element(t.u, namer) + "}";
}

void emit_section(std::string& out, const char* name,
                  const std::map<std::string, std::string>& entries,
                  bool last = false) {
  out += "  \"";
  out += name;
  out += "\": {";
  bool first = true;
  for (const auto& [k, v] : entries) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    " + quote(k) + ": " + v;
  }
  if (!first) out += "\n  ";
  out += '}';
  out += last ? "\n" : ",\n";
}

std::string serialize_impl(const ProblemFile& p, const std::string* results) {
  AlgebraNamer namer = [&p](const Algebra& a) -> std::string {
    for (const auto& [name, alg] : p.algebras)
      if (alg.same_shape(a)) return name;
    throw ResolveError("serialize: an element's algebra is not named in the "
                       "problem");
  };
  HomNamer hom_namer = [&p, &namer](const Hom& h) -> std::string {
    for (const auto& [name, hom] : p.homs)
      if (hom.kind == h.kind && hom.source.same_shape(h.source) &&
          hom.target.same_shape(h.target))
        return name;
    // fall back to any hom with the same endpoints
    for (const auto& [name, hom] : p.homs)
      if (hom.source.same_shape(h.source) && hom.target.same_shape(h.target))
        return name;
    throw ResolveError("serialize: a referenced homomorphism is not named "
                       "in the problem (" + namer(h.source) + " -> " +
                       namer(h.target) + ")");
  };

  std::map<std::string, std::string> algebras, homs, ladders, triples, lifts,
      certificates, elements;
  for (const auto& [name, a] : p.algebras) algebras[name] = enc_algebra(a);
  for (const auto& [name, h] : p.homs) homs[name] = enc_hom(h, namer);
  for (const auto& [name, l] : p.ladders)
    ladders[name] = enc_ladder(l, namer, hom_namer);
  for (const auto& [name, t] : p.k0_triples)
    triples[name] = enc_k0(t, namer, hom_namer);
  for (const auto& [name, t] : p.k1_triples)
    triples[name] = enc_k1(t, namer, hom_namer);
  for (const auto& [name, lf] : p.lifts)
    lifts[name] = "{\"h\":" + enc_element_list(lf.h, namer) +
                  ",\"w\":" + enc_element(lf.w, namer) + "}";
  for (const auto& [name, c] : p.certificates)
    certificates[name] = enc_element_list(c, namer);
  for (const auto& [name, e] : p.elements)
    elements[name] = enc_element(e, namer);

  std::string out = "{\n";
  emit_section(out, "algebras", algebras);
  emit_section(out, "certificates", certificates);
  emit_section(out, "elements", elements);
  out += "  \"format\": " + std::to_string(p.format) + ",\n";
  emit_section(out, "homomorphisms", homs);
  emit_section(out, "ladders", ladders);
  emit_section(out, "lifts", lifts);
  if (results) out += "  \"results\": " + *results + ",\n";
  out += "  \"settings\": {\"grid\": " + std::to_string(p.settings.grid) +
         ", \"tolerance\": " + fmt_f(p.settings.tolerance) + "},\n";
  emit_section(out, "triples", triples, true);
  out += "}\n";
  return out;
}

// ---- parsing --------------------------------------------------------------

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ResolveError("problem file, " + where + ": " + what);
}

int get_int(const njson& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(where, std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

std::string get_str(const njson& j, const char* key,
                    const std::string& where) {
  if (!j.contains(key) || !j[key].is_string())
    fail(where, std::string("missing string field '") + key + "'");
  return j[key].get<std::string>();
}

std::vector<int> get_int_list(const njson& j, const char* key,
                              const std::string& where) {
  if (!j.contains(key) || !j[key].is_array())
    fail(where, std::string("missing list field '") + key + "'");
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) fail(where, "non-integer entry in a list");
    out.push_back(v.get<int>());
  }
  return out;
}

CMatrix parse_matrix(const njson& j, const std::string& where) {
  if (!j.is_array()) fail(where, "a matrix must be an array of rows");
  int rows = int(j.size());
  int cols = rows ? int(j[0].size()) : 0;
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || int(row.size()) != cols)
      fail(where, "matrix rows must all have the same length");
    for (int k = 0; k < cols; ++k) {
      const auto& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        fail(where, "matrix entries must be [re,im] number pairs");
      m.at(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Algebra parse_algebra(const njson& j, const std::string& name) {
  std::string where = "algebra '" + name + "'";
  if (!j.is_object()) fail(where, "must be an object");
  std::vector<int> blocks = get_int_list(j, "blocks", where);
  std::string dom = j.contains("domain") ? get_str(j, "domain", where)
                                         : std::string("point");
  std::string bc = j.contains("boundary") ? get_str(j, "boundary", where)
                                          : std::string("none");
  int grid = j.contains("grid") ? get_int(j, "grid", where) : 1;
  if (blocks.empty()) {
    if (dom != "point") fail(where, "the zero algebra lives over a point");
    return zero_algebra();
  }
  FDAlgebra base = make_fd(blocks, name);
  Boundary b;
  if (bc == "none") b = Boundary::none;
  else if (bc == "endpoints_equal") b = Boundary::endpoints_equal;
  else if (bc == "vanish_ends") b = Boundary::vanish_ends;
  else if (bc == "vanish_boundary") b = Boundary::vanish_boundary;
  else { fail(where, "unknown boundary '" + bc + "'"); }
  if (dom == "point") {
    if (b != Boundary::none) fail(where, "a point algebra has no boundary");
    return point_algebra(base, name);
  }
  if (dom == "interval") return interval_algebra(base, b, grid, name);
  if (dom == "polar") return polar_algebra(base, b, grid, name);
  fail(where, "unknown domain '" + dom + "'");
}

Element parse_element(const njson& j, const ProblemFile& p,
                      const std::string& where) {
  if (!j.is_object()) fail(where, "an element must be an object");
  const Algebra& alg = find_algebra(p, get_str(j, "algebra", where));
  int level = get_int(j, "level", where);
  if (level < 1) fail(where, "element level must be positive");
  Element e = Element::zero(alg, level);
  if (j.contains("scalar")) {
    CMatrix s = parse_matrix(j["scalar"], where + " scalar");
    if (s.rows() != level || s.cols() != level)
      fail(where, "scalar part must be level x level");
    e.scalar = s;
  }
  if (j.contains("body")) {
    const auto& body = j["body"];
    if (!body.is_array() || int(body.size()) != alg.node_count())
      fail(where, "body must hold one entry per sample node (" +
                      std::to_string(alg.node_count()) + ")");
    for (int n = 0; n < alg.node_count(); ++n) {
      const auto& node = body[n];
      if (!node.is_array() ||
          int(node.size()) != alg.base.block_count())
        fail(where, "body nodes must hold one matrix per block");
      for (int b = 0; b < alg.base.block_count(); ++b) {
        CMatrix m = parse_matrix(node[b], where + " body");
        int want = level * alg.base.blocks[b];
        if (m.rows() != want || m.cols() != want)
          fail(where, "body matrix of block " + std::to_string(b) +
                          " must be " + std::to_string(want) + " x " +
                          std::to_string(want));
        e.body[n][b] = m;
      }
    }
  }
  return e;
}

Hom parse_hom(const njson& j, const ProblemFile& p, const std::string& name);

Hom parse_hom_body(const njson& j, const ProblemFile& p,
                   const std::string& name, const std::string& where) {
  std::string kind = get_str(j, "kind", where);
  if (kind == "block") {
    const Algebra& src = find_algebra(p, get_str(j, "source", where));
    const Algebra& tgt = find_algebra(p, get_str(j, "target", where));
    if (!j.contains("copies") || !j["copies"].is_array())
      fail(where, "a block homomorphism needs a 'copies' table");
    std::vector<std::vector<int>> copies;
    for (std::size_t i = 0; i < j["copies"].size(); ++i) {
      njson row = j["copies"][i];
      std::vector<int> r;
      for (const auto& v : row) r.push_back(v.get<int>());
      copies.push_back(std::move(r));
    }
    std::vector<CMatrix> us;
    if (j.contains("unitaries")) {
      for (const auto& u : j["unitaries"])
        us.push_back(parse_matrix(u, where + " unitaries"));
    }
    return block_hom(src, tgt, copies, us, name);
  }
  if (kind == "zero") {
    return zero_hom(find_algebra(p, get_str(j, "source", where)),
                    find_algebra(p, get_str(j, "target", where)), name);
  }
  if (kind == "endpoint_eval") {
    return endpoint_eval_hom(find_algebra(p, get_str(j, "source", where)),
                             name);
  }
  if (kind == "restrict_boundary") {
    return restrict_boundary_hom(
        find_algebra(p, get_str(j, "source", where)), name);
  }
  if (kind == "include_bc") {
    return include_bc_hom(find_algebra(p, get_str(j, "source", where)),
                          find_algebra(p, get_str(j, "target", where)), name);
  }
  if (kind == "compose") {
    if (!j.contains("stages") || !j["stages"].is_array() ||
        j["stages"].size() < 2)
      fail(where, "a composition needs at least two stages");
    Hom cur = parse_hom(j["stages"][0], p, name + ".0");
    for (std::size_t i = 1; i < j["stages"].size(); ++i) {
      Hom next = parse_hom(j["stages"][i], p, name + "." + std::to_string(i));
      cur = compose_homs(next, cur, name);
    }
    return cur;
  }
  fail(where, "unknown homomorphism kind '" + kind + "'");
}

Hom parse_hom(const njson& j, const ProblemFile& p, const std::string& name) {
  std::string where = "homomorphism '" + name + "'";
  if (!j.is_object()) fail(where, "must be an object");
  try {
    return parse_hom_body(j, p, name, where);
  } catch (const ResolveError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Row parse_row(const njson& j, const ProblemFile& p, const std::string& where) {
  if (!j.is_object()) fail(where, "a row must be an object");
  std::string kind = get_str(j, "kind", where);
  try {
    if (kind == "blocks") {
      const Algebra& total = find_algebra(p, get_str(j, "total", where));
      if (!total.is_point()) fail(where, "a block row needs a point algebra");
      return fd_row(total.base, get_int_list(j, "ideal_blocks", where));
    }
    if (kind == "interval")
      return interval_row(make_fd(get_int_list(j, "blocks", where)),
                          get_int(j, "grid", where));
    if (kind == "polar")
      return polar_row(make_fd(get_int_list(j, "blocks", where)),
                       get_int(j, "grid", where));
    if (kind == "zero_ideal")
      return zero_ideal_row(find_algebra(p, get_str(j, "algebra", where)));
  } catch (const ResolveError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "unknown row kind '" + kind + "'");
}

Ladder parse_ladder(const njson& j, const ProblemFile& p,
                    const std::string& name) {
  std::string where = "ladder '" + name + "'";
  if (!j.is_object()) fail(where, "must be an object");
  Ladder l;
  if (!j.contains("top") || !j.contains("bottom"))
    fail(where, "needs 'top' and 'bottom' rows");
  l.a = parse_row(j["top"], p, where + " top");
  l.b = parse_row(j["bottom"], p, where + " bottom");
  l.psi = find_hom(p, get_str(j, "psi", where));
  l.phi = find_hom(p, get_str(j, "phi", where));
  l.gamma = find_hom(p, get_str(j, "gamma", where));
  l.label = j.contains("label") ? get_str(j, "label", where) : name;
  auto check = [&](const Hom& h, const Algebra& s, const Algebra& t,
                   const char* leg, const char* from, const char* to) {
    if (!h.source.same_shape(s) || !h.target.same_shape(t))
      fail(where, std::string(leg) + " must map the " + from + " to the " +
                      to);
  };
  check(l.psi, l.a.ideal, l.b.ideal, "psi", "top ideal", "bottom ideal");
  check(l.phi, l.a.total, l.b.total, "phi", "top total", "bottom total");
  check(l.gamma, l.a.quotient, l.b.quotient, "gamma", "top quotient",
        "bottom quotient");
  return l;
}

}  // namespace

const Algebra& find_algebra(const ProblemFile& p, const std::string& name) {
  for (const auto& [n, a] : p.algebras)
    if (n == name) return a;
  throw ResolveError("unknown algebra '" + name + "'");
}

const Hom& find_hom(const ProblemFile& p, const std::string& name) {
  for (const auto& [n, h] : p.homs)
    if (n == name) return h;
  throw ResolveError("unknown homomorphism '" + name + "'");
}

const Ladder& find_ladder(const ProblemFile& p, const std::string& name) {
  for (const auto& [n, l] : p.ladders)
    if (n == name) return l;
  throw ResolveError("unknown ladder '" + name + "'");
}

const Element& find_element(const ProblemFile& p, const std::string& name) {
  for (const auto& [n, e] : p.elements)
    if (n == name) return e;
  throw ResolveError("unknown element '" + name + "'");
}

const IndexLifts& find_lifts(const ProblemFile& p, const std::string& name) {
  for (const auto& [n, l] : p.lifts)
    if (n == name) return l;
  throw ResolveError("unknown lift '" + name + "'");
}

const std::vector<Element>& find_certificate(const ProblemFile& p,
                                             const std::string& name) {
  for (const auto& [n, c] : p.certificates)
    if (n == name) return c;
  throw ResolveError("unknown certificate '" + name + "'");
}

TripleRef find_triple(const ProblemFile& p, const std::string& name) {
  TripleRef r;
  for (const auto& [n, t] : p.k0_triples)
    if (n == name) {
      r.k0 = &t;
      return r;
    }
  for (const auto& [n, t] : p.k1_triples)
    if (n == name) {
      r.k1 = &t;
      return r;
    }
  throw ResolveError("unknown triple '" + name + "'");
}

ProblemFile parse_problem(const std::string& text) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw ResolveError(std::string("problem file is not valid JSON: ") +
                       e.what());
  }
  if (!j.is_object()) throw ResolveError("problem file must be an object");
  ProblemFile p;
  if (j.contains("format")) {
    if (!j["format"].is_number_integer() || j["format"].get<int>() != 1)
      throw ResolveError("unsupported problem format (expected 1)");
  }
  if (j.contains("settings")) {
    const auto& s = j["settings"];
    if (s.contains("grid")) p.settings.grid = s["grid"].get<int>();
    if (s.contains("tolerance"))
      p.settings.tolerance = s["tolerance"].get<double>();
    if (p.settings.grid < 2 && p.settings.grid != 1)
      throw ResolveError("settings: grid must be 1 or at least 2");
    if (!(p.settings.tolerance > 0))
      throw ResolveError("settings: tolerance must be positive");
  }
  if (j.contains("algebras"))
    for (const auto& [name, body] : j["algebras"].items())
      p.algebras.emplace_back(name, parse_algebra(body, name));
  if (j.contains("homomorphisms"))
    for (const auto& [name, body] : j["homomorphisms"].items())
      p.homs.emplace_back(name, parse_hom(body, p, name));
  if (j.contains("ladders"))
    for (const auto& [name, body] : j["ladders"].items())
      p.ladders.emplace_back(name, parse_ladder(body, p, name));
  if (j.contains("elements"))
    for (const auto& [name, body] : j["elements"].items())
      p.elements.emplace_back(name,
                              parse_element(body, p, "element '" + name + "'"));
  if (j.contains("triples")) {
    for (const auto& [name, body] : j["triples"].items()) {
      std::string where = "triple '" + name + "'";
      if (!body.is_object()) fail(where, "must be an object");
      int degree = get_int(body, "degree", where);
      const Hom& hom = find_hom(p, get_str(body, "hom", where));
      auto over = [&](const char* key, const Algebra& alg) {
        if (!body.contains(key))
          fail(where, std::string("missing element '") + key + "'");
        Element e = parse_element(body[key], p,
                                  where + " " + std::string(1, key[0]));
        if (!e.alg.same_shape(alg))
          fail(where, std::string("element '") + key +
                          "' lives over the wrong algebra");
        return e;
      };
      if (degree == 0) {
        K0Triple t{over("p", hom.source), over("q", hom.source),
                   over("v", hom.target), hom};
        p.k0_triples.emplace_back(name, std::move(t));
      } else if (degree == 1) {
        K1Triple t{over("p", hom.source), over("u", hom.source), {}, hom,
                   body.contains("negated") && body["negated"].get<bool>()};
        if (!body.contains("g") || !body["g"].is_array())
          fail(where, "missing path 'g'");
        for (const auto& node : body["g"]) {
          Element e = parse_element(node, p, where + " g");
          if (!e.alg.same_shape(hom.target))
            fail(where, "path nodes live over the wrong algebra");
          t.g.push_back(std::move(e));
        }
        p.k1_triples.emplace_back(name, std::move(t));
      } else {
        fail(where, "degree must be 0 or 1");
      }
    }
  }
  if (j.contains("lifts")) {
    for (const auto& [name, body] : j["lifts"].items()) {
      std::string where = "lift '" + name + "'";
      if (!body.is_object() || !body.contains("w") || !body.contains("h") ||
          !body["h"].is_array())
        fail(where, "needs a unitary 'w' and a path 'h'");
      IndexLifts lf;
      lf.w = parse_element(body["w"], p, where + " w");
      for (const auto& node : body["h"])
        lf.h.push_back(parse_element(node, p, where + " h"));
      p.lifts.emplace_back(name, std::move(lf));
    }
  }
  if (j.contains("certificates")) {
    for (const auto& [name, body] : j["certificates"].items()) {
      std::string where = "certificate '" + name + "'";
      if (!body.is_array()) fail(where, "must be an array of elements");
      std::vector<Element> c;
      for (const auto& node : body)
        c.push_back(parse_element(node, p, where));
      p.certificates.emplace_back(name, std::move(c));
    }
  }
  return p;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResolveError("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string serialize_problem(const ProblemFile& p) {
  return serialize_impl(p, nullptr);
}

std::string serialize_problem_with_results(const ProblemFile& p,
                                           const std::string& results_body) {
  return serialize_impl(p, &results_body);
}

ProblemFile problem_from_fixture(const Fixture& f) {
  ProblemFile p;
  p.settings.grid = f.grid;
  p.algebras = f.algebras;
  p.homs = f.homs;
  p.ladders = f.ladders;
  p.k0_triples = f.k0_triples;
  p.k1_triples = f.k1_triples;
  if (f.index_lifts) p.lifts.emplace_back("displayed", *f.index_lifts);
  p.elements = f.expected_elements;

  // Name every algebra the content refers to; synthesized names cover what
  // the catalog entry left anonymous (typically the zero algebra).
  auto ensure = [&p](const Algebra& a) {
    for (const auto& [n, alg] : p.algebras)
      if (alg.same_shape(a)) return;
    std::string base = a.is_zero() ? "zero" : "alg";
    std::string name = base;
    int k = 0;
    auto taken = [&p](const std::string& n) {
      for (const auto& [existing, alg] : p.algebras)
        if (existing == n) return true;
      return false;
    };
    while (taken(name)) name = base + std::to_string(++k);
    p.algebras.emplace_back(name, a);
  };
  std::function<void(const Hom&)> ensure_hom_algs = [&](const Hom& h) {
    ensure(h.source);
    ensure(h.target);
    for (const Hom& s : h.stages) ensure_hom_algs(s);
  };
  for (const auto& [n, h] : p.homs) ensure_hom_algs(h);
  for (const auto& [n, l] : p.ladders) {
    ensure(l.a.ideal);
    ensure(l.a.total);
    ensure(l.a.quotient);
    ensure(l.b.ideal);
    ensure(l.b.total);
    ensure(l.b.quotient);
  }
  return p;
}

}  // namespace relk
