#include "relk/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "relk/engine.hpp"

namespace relk {

namespace {

namespace fs = std::filesystem;

std::string fmt_g(double v, const char* spec = "%.3g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_real(double v) {
  std::string s = fmt_g(v, "%.4g");
  return s == "-0" ? "0" : s;
}

std::string fmt_c(cplx z) {
  if (std::abs(z.imag()) < 5e-13) return fmt_real(z.real());
  std::string s = fmt_real(z.real());
  s += z.imag() < 0 ? " - " : " + ";
  s += fmt_real(std::abs(z.imag()));
  s += "i";
  return s;
}

std::string fmt_matrix(const CMatrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += fmt_c(m.at(i, j));
    }
  }
  s += "]";
  return s;
}

std::string fmt_imatrix(const intk::IMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "[]";
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += std::to_string(m.at(i, j));
    }
  }
  s += "]";
  return s;
}

std::string describe_algebra(const Algebra& a) {
  if (a.is_zero()) return "0";
  std::string blocks;
  for (std::size_t i = 0; i < a.base.blocks.size(); ++i) {
    if (i) blocks += " (+) ";
    blocks += "M" + std::to_string(a.base.blocks[i]);
  }
  switch (a.domain) {
    case Domain::point: return blocks;
    case Domain::interval: return "C([0,1], " + blocks + ")";
    case Domain::polar: return "C(D, " + blocks + ")";
  }
  return blocks;
}

// One line per element: shape, scalar part, represented node-0 value.
void print_element(std::ostream& out, const std::string& name,
                   const Element& e, const char* ind) {
  out << ind << name << ": level " << e.level << " over "
      << describe_algebra(e.alg);
  if (!e.alg.is_point())
    out << " (" << e.alg.node_count() << " nodes, node 0 shown)";
  out << "\n" << ind << "  scalar " << fmt_matrix(e.scalar);
  for (int b = 0; b < e.alg.base.block_count(); ++b)
    out << "  block " << b << " " << fmt_matrix(e.full(0, b));
  out << "\n";
}

void print_k0_triple(std::ostream& out, const K0Triple& t, const char* ind) {
  print_element(out, "p", t.p, ind);
  print_element(out, "q", t.q, ind);
  print_element(out, "v", t.v, ind);
}

void print_k1_triple(std::ostream& out, const K1Triple& t, const char* ind) {
  print_element(out, "p", t.p, ind);
  print_element(out, "u", t.u, ind);
  out << ind << "g: path of " << t.g.size() << " nodes\n";
  if (!t.g.empty()) {
    print_element(out, "g[0]", t.g.front(), ind);
    print_element(out, "g[end]", t.g.back(), ind);
  }
  if (t.negated)
    out << ind << "(represents minus the class of its own cycle)\n";
}

std::string fmt_class(const intk::GroupPresentation& g,
                      const std::vector<intk::i64>& cls) {
  std::vector<intk::i64> c = intk::canonical_class(g, cls);
  if (c.empty()) return "0";
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(c[i]);
  }
  s += ")";
  return s;
}

// ---- machine results: tiny canonical JSON builders ----------------------

std::string jq(const std::string& s) {
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

std::string jnum(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// keys pre-sorted by std::map; values already encoded
std::string jobj(const std::map<std::string, std::string>& kv) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) out += ",";
    first = false;
    out += jq(k) + ":" + v;
  }
  out += "}";
  return out;
}

std::string jarr(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  out += "]";
  return out;
}

std::string jclass(const std::vector<intk::i64>& v) {
  std::vector<std::string> xs;
  for (intk::i64 x : v) xs.push_back(std::to_string(x));
  return jarr(xs);
}

std::string jstrings(const std::vector<std::string>& v) {
  std::vector<std::string> xs;
  for (const auto& s : v) xs.push_back(jq(s));
  return jarr(xs);
}

std::string jexact(const std::vector<intk::ExactnessReport>& ex) {
  std::vector<std::string> xs;
  for (const auto& e : ex)
    xs.push_back(jobj({{"node", jq(e.node)},
                       {"ok", e.exact() ? "true" : "false"}}));
  return jarr(xs);
}

int eff_grid(const ProblemFile& p, const CliOptions& o) {
  return o.grid.value_or(p.settings.grid);
}

double eff_tol(const ProblemFile& p, const CliOptions& o) {
  return o.tolerance.value_or(p.settings.tolerance);
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ResolveError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CertificateError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const LiftError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::string unique_name(const ProblemFile& p, const std::string& base) {
  auto taken = [&p](const std::string& n) {
    for (const auto& [k, t] : p.k0_triples)
      if (k == n) return true;
    for (const auto& [k, t] : p.k1_triples)
      if (k == n) return true;
    return false;
  };
  std::string name = base;
  int i = 0;
  while (taken(name)) name = base + "_" + std::to_string(++i);
  return name;
}

}  // namespace

ProblemFile resolve_problem(const std::string& arg) {
  if (fs::exists(arg)) return load_problem_file(arg);
  if (const char* dir = std::getenv("RELK_FIXTURE_DIR")) {
    fs::path cand = fs::path(dir) / (arg + ".json");
    if (fs::exists(cand)) return load_problem_file(cand.string());
  }
  try {
    const Fixture& f = fixture(arg);
    if (!f.computable)
      throw ResolveError("'" + arg +
                         "' is a reference entry without machine data; see "
                         "'relk fixtures'");
    return problem_from_fixture(f);
  } catch (const ResolveError&) {
    throw ResolveError("cannot resolve problem '" + arg +
                       "': not a file, not under RELK_FIXTURE_DIR, and not a "
                       "bundled fixture");
  }
}

int cmd_kgroups(const ProblemFile& p, const std::string& algebra,
                const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const Algebra& a = find_algebra(p, algebra);
    auto [k0, k1] = k_groups_alg(a);
    if (o.machine) {
      std::string body = jobj({{"algebra", jq(algebra)},
                               {"command", jq("kgroups")},
                               {"k0", jq(intk::format_group(k0))},
                               {"k0_tags", jstrings(k0.tags)},
                               {"k1", jq(intk::format_group(k1))},
                               {"k1_tags", jstrings(k1.tags)}});
      out << serialize_problem_with_results(p, body);
      return 0;
    }
    out << "algebra " << algebra << ": " << describe_algebra(a) << "\n";
    out << "K0(" << algebra << ") = " << intk::format_group(k0) << "\n";
    for (const auto& tag : k0.tags) out << "  generator: " << tag << "\n";
    out << "K1(" << algebra << ") = " << intk::format_group(k1) << "\n";
    for (const auto& tag : k1.tags) out << "  generator: " << tag << "\n";
    return 0;
  });
}

int cmd_relative(const ProblemFile& p, const std::string& hom,
                 const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const Hom& h = find_hom(p, hom);
    int grid = eff_grid(p, o);
    RelativeGroups g = relative_groups(h, grid);

    bool six_ok = false;
    bool six_available = true;
    std::string six_note;
    std::vector<intk::ExactnessReport> exact;
    try {
      SixTermReport r = six_term_hom(h, grid);
      six_ok = r.ok;
      exact = r.exact;
    } catch (const RegimeError& e) {
      six_available = false;
      six_note = e.what();
    }

    if (o.machine) {
      std::map<std::string, std::string> body{
          {"command", jq("relative")},
          {"grid", std::to_string(grid)},
          {"hom", jq(hom)},
          {"k0", jq(intk::format_group(g.k0))},
          {"k0_realized", g.k0_realized ? "true" : "false"},
          {"k1", jq(intk::format_group(g.k1))},
          {"k1_realized", g.k1_realized ? "true" : "false"},
          {"six_term_available", six_available ? "true" : "false"}};
      if (six_available) {
        body["six_term_ok"] = six_ok ? "true" : "false";
        body["exact"] = jexact(exact);
      }
      out << serialize_problem_with_results(p, jobj(body));
      return 0;
    }

    out << "relative K-groups of " << hom << ": "
        << describe_algebra(h.source) << " -> " << describe_algebra(h.target)
        << " (grid " << grid << ")\n";
    out << "K0(" << hom << ") = " << intk::format_group(g.k0) << "\n";
    if (!g.k0.is_trivial()) {
      for (std::size_t i = 0; i < g.k0_gens.size(); ++i) {
        out << "  generator " << i + 1 << ":\n";
        print_k0_triple(out, g.k0_gens[i], "    ");
      }
      if (!g.k0_realized)
        out << "  (generator cycles not realized for this shape)\n";
    }
    out << "K1(" << hom << ") = " << intk::format_group(g.k1) << "\n";
    if (!g.k1.is_trivial()) {
      for (std::size_t i = 0; i < g.k1_gens.size(); ++i) {
        out << "  generator " << i + 1 << ":\n";
        print_k1_triple(out, g.k1_gens[i], "    ");
      }
      if (!g.k1_realized)
        out << "  (generator cycles not realized for this shape)\n";
    }
    if (six_available) {
      if (six_ok) {
        out << "six-term sequence around " << hom
            << ": exact at all six nodes\n";
      } else {
        out << "six-term sequence around " << hom << ": exactness FAILED\n";
        for (const auto& e : exact)
          if (!e.exact()) out << "  at " << e.node << ": " << e.detail << "\n";
        return 1;
      }
    } else {
      out << "six-term sequence around " << hom
          << ": not checked (" << six_note << ")\n";
    }
    return 0;
  });
}

int cmd_sixterm(const ProblemFile& p, const std::string& ladder,
                const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const Ladder& l = find_ladder(p, ladder);
    int grid = eff_grid(p, o);
    SixTermReport r = six_term_ladder(l, grid);

    if (o.machine) {
      std::vector<std::string> groups;
      for (const auto& g : r.groups) groups.push_back(jq(intk::format_group(g)));
      std::string body = jobj({{"command", jq("sixterm")},
                               {"exact", jexact(r.exact)},
                               {"grid", std::to_string(grid)},
                               {"groups", jarr(groups)},
                               {"ladder", jq(ladder)},
                               {"nodes", jstrings(r.nodes)},
                               {"ok", r.ok ? "true" : "false"}});
      out << serialize_problem_with_results(p, body);
      return r.ok ? 0 : 1;
    }

    out << "six-term sequence of ladder " << ladder << " (grid " << grid
        << ")\n";
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      out << "  " << r.nodes[i] << " = " << intk::format_group(r.groups[i])
          << "\n";
    out << "maps:\n";
    for (std::size_t i = 0; i < r.maps.size(); ++i) {
      const auto& m = r.maps[i];
      out << "  " << r.nodes[i] << " -> " << r.nodes[(i + 1) % r.nodes.size()]
          << ": " << fmt_imatrix(m.matrix) << "\n";
    }
    out << "exactness:\n";
    for (const auto& e : r.exact) {
      out << "  at " << e.node << ": " << (e.exact() ? "exact" : "FAILED");
      if (!e.exact() && !e.detail.empty()) out << " (" << e.detail << ")";
      out << "\n";
    }
    for (const auto& line : r.log) {
      // groups and exactness verdicts are already printed above
      if (line.rfind("K0(", 0) == 0 || line.rfind("K1(", 0) == 0 ||
          line.rfind("exactness at", 0) == 0)
        continue;
      out << "  note: " << line << "\n";
    }
    out << (r.ok ? "exact at all six nodes\n" : "exactness FAILED\n");
    return r.ok ? 0 : 1;
  });
}

int cmd_boundary(const ProblemFile& p, const std::string& ladder,
                 const std::string& map, const std::string& triple,
                 const std::string& lifts_name, const std::string& expect_name,
                 const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const Ladder& l = find_ladder(p, ladder);
    TripleRef tr = find_triple(p, triple);
    int grid = eff_grid(p, o);
    std::string psi_name = l.psi.label.empty() ? "psi" : l.psi.label;

    if (map != "exp" && map != "index")
      throw ResolveError("unknown boundary map '" + map +
                         "' (expected 'index' or 'exp')");

    std::map<std::string, std::string> body{{"command", jq("boundary")},
                                            {"grid", std::to_string(grid)},
                                            {"ladder", jq(ladder)},
                                            {"map", jq(map)},
                                            {"triple", jq(triple)}};
    ProblemFile annotated = p;
    int rc = 0;

    if (map == "exp") {
      if (!tr.k0)
        throw ResolveError("the exponential boundary consumes a degree-0 "
                           "triple; '" + triple + "' has degree 1");
      if (!expect_name.empty())
        throw ResolveError("--expect applies to the index boundary only");
      if (!lifts_name.empty())
        throw ResolveError("--lifts applies to the index boundary only");
      const K0Triple& t = *tr.k0;
      if (!o.machine)
        out << "exponential boundary of triple " << triple << " through ladder "
            << ladder << "\n";
      NormalizedK0 norm = normalize_k0(RawK0Triple{t.p, t.q, t.v, t.hom});
      K1BoundaryResult res = exp_map(norm.triple, l, grid);
      if (!o.machine) {
        for (const auto& line : norm.log) out << "  normalize: " << line << "\n";
        for (const auto& line : res.log) out << "  " << line << "\n";
        out << "  corestriction defect = " << fmt_g(res.ideal_defect) << "\n";
        print_k1_triple(out, res.triple, "  ");
      }
      body["ideal_defect"] = jnum(res.ideal_defect);
      std::string outname = unique_name(annotated, "boundary_output");
      annotated.k1_triples.emplace_back(outname, res.triple);
      body["output_triple"] = jq(outname);
      try {
        RelativeGroups rg = relative_groups(l.psi, grid);
        std::vector<intk::i64> cls = class_of_k1(res.triple, rg);
        std::string shown = fmt_class(rg.k1, cls);
        if (!o.machine)
          out << "class = " << shown << " in K1(" << psi_name << ") = "
              << intk::format_group(rg.k1) << "\n";
        body["class"] = jclass(intk::canonical_class(rg.k1, cls));
        body["group"] = jq(intk::format_group(rg.k1));
      } catch (const RegimeError& e) {
        if (!o.machine)
          out << "class not computable in this regime: " << e.what() << "\n";
        body["class"] = "null";
      }
    } else {
      if (!tr.k1)
        throw ResolveError("the index boundary consumes a degree-1 triple; '" +
                           triple + "' has degree 0");
      const K1Triple& t = *tr.k1;
      if (!o.machine)
        out << "index boundary of triple " << triple << " through ladder "
            << ladder << "\n";
      K0BoundaryResult res = lifts_name.empty()
                                 ? index_map(t, l)
                                 : index_map(t, l, find_lifts(p, lifts_name));
      if (!o.machine) {
        for (const auto& line : res.log) out << "  " << line << "\n";
        out << "  corestriction defect = " << fmt_g(res.ideal_defect) << "\n";
        print_k0_triple(out, res.triple, "  ");
      }
      body["ideal_defect"] = jnum(res.ideal_defect);
      std::string outname = unique_name(annotated, "boundary_output");
      annotated.k0_triples.emplace_back(outname, res.triple);
      body["output_triple"] = jq(outname);
      if (!expect_name.empty()) {
        const Element& want = find_element(p, expect_name);
        if (!want.alg.same_shape(res.triple.p.alg) ||
            want.level != res.triple.p.level)
          throw ResolveError("expected element '" + expect_name +
                             "' has a different shape than the boundary "
                             "output projection");
        double defect = element_diff(res.triple.p, want);
        double tol = o.tolerance.value_or(1e-6);
        body["expect_defect"] = jnum(defect);
        body["expect_ok"] = defect <= tol ? "true" : "false";
        if (defect <= tol) {
          if (!o.machine)
            out << "output matches expected element '" << expect_name
                << "': max defect " << fmt_g(defect) << " (tolerance "
                << fmt_g(tol) << ")\n";
        } else {
          if (!o.machine)
            out << "output DIFFERS from expected element '" << expect_name
                << "': max defect " << fmt_g(defect) << " (tolerance "
                << fmt_g(tol) << ")\n";
          rc = 1;
        }
      }
      try {
        RelativeGroups rg = relative_groups(l.psi, grid);
        std::vector<intk::i64> cls = class_of_k0(res.triple, rg);
        std::string shown = fmt_class(rg.k0, cls);
        if (!o.machine)
          out << "class = " << shown << " in K0(" << psi_name << ") = "
              << intk::format_group(rg.k0) << "\n";
        body["class"] = jclass(intk::canonical_class(rg.k0, cls));
        body["group"] = jq(intk::format_group(rg.k0));
      } catch (const RegimeError& e) {
        if (!o.machine)
          out << "class not computable in this regime: " << e.what() << "\n";
        body["class"] = "null";
      } catch (const ResolveError& e) {
        if (!o.machine)
          out << "class not computable in this regime: " << e.what() << "\n";
        body["class"] = "null";
      }
    }
    if (o.machine) out << serialize_problem_with_results(annotated, jobj(body));
    return rc;
  });
}

int cmd_verify(const ProblemFile& p, const std::string& triple,
               const std::string& certificate, const CliOptions& o,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    TripleRef tr = find_triple(p, triple);
    double tol = eff_tol(p, o);
    double cert_tol = std::max(tol, 1e-7);
    int steps = o.grid.value_or(33);

    std::vector<std::string> issues =
        tr.k0 ? validate_k0(*tr.k0, tol) : validate_k1(*tr.k1, tol);
    std::vector<std::string> cert_issues;
    bool cert_checked = false;
    std::string cert_class;
    int rc = issues.empty() ? 0 : 1;

    if (!o.machine) {
      out << "triple " << triple << " (degree " << (tr.k0 ? 0 : 1) << ")\n";
      if (issues.empty()) {
        out << "  all invariants hold (tolerance " << fmt_g(tol) << ")\n";
      } else {
        for (const auto& line : issues) out << "  FAIL: " << line << "\n";
      }
    }

    if (!certificate.empty() && rc == 0) {
      cert_checked = true;
      if (certificate == "rotation") {
        if (tr.k0) {
          NegationWitness w = negate_witness(*tr.k0, steps);
          for (auto& s : verify_iso(w.summed, w.rotated, w.iso, cert_tol))
            cert_issues.push_back("iso: " + s);
          for (auto& s : verify_elementary_k0(w.rotated, w.path, cert_tol))
            cert_issues.push_back("path: " + s);
        } else {
          K1Triple doubled = add_k1(*tr.k1, negate_k1(*tr.k1));
          HomotopyCertificateK1 cert_h = whitehead_certificate(*tr.k1, steps);
          for (auto& s : verify_elementary_k1(doubled, cert_h, cert_tol))
            cert_issues.push_back("homotopy: " + s);
        }
        if (!o.machine) {
          if (cert_issues.empty()) {
            out << "  rotation witness verified: the sum with the negation "
                   "is elementary\n";
          } else {
            for (const auto& line : cert_issues)
              out << "  certificate FAIL: " << line << "\n";
          }
        }
        if (!cert_issues.empty()) rc = 1;
      } else {
        const std::vector<Element>& cert = find_certificate(p, certificate);
        if (tr.k0) {
          for (auto& s : verify_elementary_k0(*tr.k0, cert, cert_tol))
            cert_issues.push_back(s);
          if (!o.machine) {
            if (cert_issues.empty()) {
              out << "  certificate '" << certificate
                  << "' verified: the triple is elementary\n";
            } else {
              for (const auto& line : cert_issues)
                out << "  certificate FAIL: " << line << "\n";
            }
          }
          if (!cert_issues.empty()) rc = 4;
        } else {
          RelativeGroups rg = relative_groups(tr.k1->hom, eff_grid(p, o));
          // certificates connect the identity to a full unitary, so check
          // against the normalized form of the cycle (class is preserved)
          NormalizedK1 nk = normalize_k1(
              RawK1Triple{tr.k1->p, tr.k1->u, tr.k1->g, tr.k1->hom});
          K1Triple nt = nk.triple;
          nt.negated = tr.k1->negated;
          try {
            std::vector<intk::i64> cls = class_of_k1(nt, rg, cert);
            cert_class = fmt_class(rg.k1, cls);
            if (!o.machine)
              out << "  certificate '" << certificate
                  << "' verified: class = " << cert_class << " in K1 = "
                  << intk::format_group(rg.k1) << "\n";
          } catch (const CertificateError& e) {
            cert_issues.push_back(e.what());
            if (!o.machine)
              out << "  certificate FAIL: " << e.what() << "\n";
            rc = 4;
          }
        }
      }
    }

    if (o.machine) {
      std::map<std::string, std::string> body{
          {"command", jq("verify")},
          {"issues", jstrings(issues)},
          {"ok", rc == 0 ? "true" : "false"},
          {"tolerance", jnum(tol)},
          {"triple", jq(triple)}};
      if (cert_checked) {
        body["certificate"] = jq(certificate);
        body["certificate_issues"] = jstrings(cert_issues);
        if (!cert_class.empty()) body["certificate_class"] = jq(cert_class);
      }
      out << serialize_problem_with_results(p, jobj(body));
    }
    return rc;
  });
}

int cmd_fixtures(const std::string& emit_dir, const CliOptions& o,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    if (o.machine) {
      std::vector<std::string> rows;
      for (const Fixture& f : fixtures())
        rows.push_back(jobj({{"computable", f.computable ? "true" : "false"},
                             {"k0", jq(f.expected_k0)},
                             {"k1", jq(f.expected_k1)},
                             {"name", jq(f.name)},
                             {"title", jq(f.title)}}));
      ProblemFile empty;
      out << serialize_problem_with_results(
          empty,
          jobj({{"command", jq("fixtures")}, {"entries", jarr(rows)}}));
      if (emit_dir.empty()) return 0;
    }
    if (!o.machine) {
      out << "bundled problems:\n";
      for (const Fixture& f : fixtures()) {
        out << "  " << f.name;
        for (std::size_t i = f.name.size(); i < 12; ++i) out << ' ';
        if (f.computable && !f.expected_k0.empty()) {
          out << "K0 = " << f.expected_k0 << ", K1 = " << f.expected_k1
              << "  " << f.title << "\n";
        } else if (f.computable) {
          out << "(boundary data)  " << f.title << "\n";
        } else {
          out << "(reference only)  " << f.title << "\n";
          for (const auto& n : f.notes) out << "      " << n << "\n";
        }
      }
    }
    if (!emit_dir.empty()) {
      fs::create_directories(emit_dir);
      for (const Fixture& f : fixtures()) {
        if (!f.computable) continue;
        fs::path path = fs::path(emit_dir) / (f.name + ".json");
        std::ofstream os(path, std::ios::binary);
        if (!os) throw ResolveError("cannot write '" + path.string() + "'");
        os << serialize_problem(problem_from_fixture(f));
        if (!o.machine) out << "wrote " << path.string() << "\n";
      }
    }
    return 0;
  });
}

}  // namespace relk
