#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "relk/commands.hpp"
#include "relk/engine.hpp"

using namespace relk;

namespace {

ProblemFile bundled(const std::string& name) {
  return problem_from_fixture(fixture(name));
}

struct Run {
  int rc;
  std::string out;
  std::string err;
};

template <typename F>
Run run(F&& f) {
  std::ostringstream out, err;
  int rc = f(out, err);
  return {rc, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("canonical serialization round-trips byte for byte") {
  for (const char* name : {"ex2_5_i", "ex2_5_ii", "ex2_6", "ex2_7", "ex2_9"}) {
    ProblemFile p = bundled(name);
    std::string s1 = serialize_problem(p);
    ProblemFile p2 = parse_problem(s1);
    std::string s2 = serialize_problem(p2);
    CHECK_MESSAGE(s1 == s2, name);
    // and a third pass for fixed-point confidence
    CHECK(serialize_problem(parse_problem(s2)) == s2);
  }
}

TEST_CASE("a handcrafted problem exercises every section") {
  ProblemFile p;
  p.settings.grid = 9;
  p.settings.tolerance = 1e-8;

  Algebra pair = point_algebra(make_fd({1, 2}), "pair");
  Algebra big = point_algebra(make_fd({3}), "big");
  Algebra arc = interval_algebra(make_fd({1}), Boundary::none, 9, "arc");
  Algebra sarc = interval_algebra(make_fd({1}), Boundary::vanish_ends, 9);
  Algebra ends2 = point_algebra(make_fd({1, 1}));
  p.algebras.emplace_back("pair", pair);
  p.algebras.emplace_back("big", big);
  p.algebras.emplace_back("arc", arc);
  p.algebras.emplace_back("sarc", sarc);
  p.algebras.emplace_back("ends2", ends2);
  p.algebras.emplace_back("none", zero_algebra());

  // a block map with a nontrivial realizing unitary
  CMatrix u = CMatrix::zeros(3, 3);
  u.at(0, 2) = 1;
  u.at(1, 0) = 1;
  u.at(2, 1) = 1;
  Hom emb = block_hom(pair, big, {{1, 1}}, {u}, "emb");
  Hom kill = zero_hom(pair, zero_algebra(), "kill");
  Hom ev = endpoint_eval_hom(arc, "ev");
  Hom around = compose_homs(zero_hom(big, pair), emb, "around");
  p.homs.emplace_back("emb", emb);
  p.homs.emplace_back("kill", kill);
  p.homs.emplace_back("ev", ev);
  p.homs.emplace_back("around", around);

  Ladder l;
  l.a = interval_row(make_fd({1}), 9);
  l.b = zero_ideal_row(ends2);
  l.psi = zero_hom(l.a.ideal, l.b.ideal, "psi");
  l.phi = compose_homs(identity_hom(l.b.total), l.a.pi, "phi");
  l.gamma = identity_hom(l.a.quotient);
  l.label = "probe";
  p.homs.emplace_back("psi", l.psi);
  p.homs.emplace_back("phi", l.phi);
  p.homs.emplace_back("gamma", l.gamma);
  p.ladders.emplace_back("probe", l);

  Element pr = Element::zero(pair, 1);
  pr.body[0][0].at(0, 0) = 1;
  Element v = apply(emb, pr);
  p.k0_triples.emplace_back("cross", K0Triple{pr, pr, v, emb});

  Element unit1 = Element::unit(pair, 1);
  std::vector<Element> g;
  for (int i = 0; i < 9; ++i) g.push_back(Element::unit(zero_algebra(), 1));
  p.k1_triples.emplace_back("nullcycle",
                            K1Triple{unit1, unit1, g, kill, false});

  IndexLifts lf;
  lf.w = Element::unit(arc, 2);
  lf.h = {Element::unit(ends2, 1), Element::unit(ends2, 1)};
  p.lifts.emplace_back("flat", lf);
  p.certificates.emplace_back(
      "idpath", std::vector<Element>{Element::unit(pair, 1),
                                     Element::unit(pair, 1)});
  p.elements.emplace_back("probe_proj", pr);

  std::string s1 = serialize_problem(p);
  ProblemFile p2 = parse_problem(s1);
  CHECK(serialize_problem(p2) == s1);

  CHECK(find_algebra(p2, "arc").grid == 9);
  CHECK(find_hom(p2, "around").kind == HomKind::compose);
  CHECK(find_hom(p2, "emb").actions.size() == 1);
  CHECK(find_ladder(p2, "probe").label == "probe");
  CHECK(find_triple(p2, "cross").k0 != nullptr);
  CHECK(find_triple(p2, "nullcycle").k1 != nullptr);
  CHECK(find_lifts(p2, "flat").h.size() == 2);
  CHECK(find_certificate(p2, "idpath").size() == 2);
  CHECK(find_element(p2, "probe_proj").level == 1);
  CHECK(p2.settings.tolerance == 1e-8);

  // the parsed copy carries working data, not just shapes
  CHECK(validate_k0(*find_triple(p2, "cross").k0).empty());
  CHECK(element_diff(find_element(p2, "probe_proj"), pr) == 0.0);
}

TEST_CASE("parsing rejects malformed input with named context") {
  CHECK_THROWS_AS((void)parse_problem("{ not json"), ResolveError);
  CHECK_THROWS_AS((void)parse_problem("[1,2]"), ResolveError);
  CHECK_THROWS_AS((void)parse_problem("{\"format\": 7}"), ResolveError);

  auto message_of = [](const std::string& text) {
    try {
      (void)parse_problem(text);
    } catch (const ResolveError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  std::string msg = message_of(
      "{\"homomorphisms\":{\"f\":{\"kind\":\"zero\",\"source\":\"ghost\","
      "\"target\":\"ghost\"}}}");
  CHECK(contains(msg, "ghost"));
  msg = message_of(
      "{\"algebras\":{\"A\":{\"blocks\":[1]}},"
      "\"elements\":{\"x\":{\"algebra\":\"A\",\"level\":1,"
      "\"scalar\":[[[0,0],[0,0]]]}}}");
  CHECK(contains(msg, "level x level"));

  ProblemFile p = bundled("ex2_6");
  CHECK_THROWS_AS((void)find_algebra(p, "nope"), ResolveError);
  CHECK_THROWS_AS((void)find_triple(p, "nope"), ResolveError);
  CHECK_THROWS_AS((void)find_certificate(p, "nope"), ResolveError);
}

TEST_CASE("problem arguments resolve through files, the fixture directory, and the catalog") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "relk_resolve_test";
  fs::create_directories(dir);
  fs::path file = dir / "local_pair.json";
  {
    std::ofstream os(file, std::ios::binary);
    os << serialize_problem(bundled("ex2_6"));
  }

  ProblemFile by_path = resolve_problem(file.string());
  CHECK(find_triple(by_path, "generator").k0 != nullptr);

  setenv("RELK_FIXTURE_DIR", dir.string().c_str(), 1);
  ProblemFile by_env = resolve_problem("local_pair");
  CHECK(find_triple(by_env, "generator").k0 != nullptr);
  unsetenv("RELK_FIXTURE_DIR");

  ProblemFile by_name = resolve_problem("ex2_7");
  CHECK(find_triple(by_name, "generator").k1 != nullptr);

  CHECK_THROWS_AS((void)resolve_problem("no_such_thing"), ResolveError);
  // reference-only catalog entries carry no machine data
  CHECK_THROWS_AS((void)resolve_problem("ex2_5_iii"), ResolveError);
  fs::remove_all(dir);
}

TEST_CASE("kgroups and relative commands report groups and exit codes") {
  CliOptions o;
  ProblemFile p7 = bundled("ex2_7");
  Run r = run([&](auto& out, auto& err) {
    return cmd_kgroups(p7, "B", o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "K0(B) = Z^2"));
  CHECK(contains(r.out, "K1(B) = 0"));

  r = run([&](auto& out, auto& err) {
    return cmd_kgroups(p7, "nope", o, out, err);
  });
  CHECK(r.rc == 2);
  CHECK(contains(r.err, "nope"));

  CliOptions small;
  small.grid = 33;
  ProblemFile p6 = bundled("ex2_6");
  r = run([&](auto& out, auto& err) {
    return cmd_relative(p6, "phi", small, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "K0(phi) = Z"));
  CHECK(contains(r.out, "K1(phi) = 0"));
  CHECK(contains(r.out, "exact at all six nodes"));

  // circle-valued functions sit outside the rank/winding regimes
  ProblemFile p8 = bundled("ex2_8");
  r = run([&](auto& out, auto& err) {
    return cmd_relative(p8, "gamma", small, out, err);
  });
  CHECK(r.rc == 3);
  CHECK(contains(r.err, "regime"));
}

TEST_CASE("sixterm and boundary commands reproduce the frozen ladder results") {
  CliOptions o;
  ProblemFile p9 = bundled("ex2_9");
  Run r = run([&](auto& out, auto& err) {
    return cmd_sixterm(p9, "L", o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "K1(phi) = Z/2"));
  CHECK(contains(r.out, "exact at all six nodes"));

  r = run([&](auto& out, auto& err) {
    return cmd_boundary(p9, "L", "exp", "generator", "", "", o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "class = -2 in K1(psi) = Z"));

  ProblemFile p8 = bundled("ex2_8");
  r = run([&](auto& out, auto& err) {
    return cmd_boundary(p8, "L", "index", "generator", "displayed",
                        "boundary_projection", o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "output matches expected element"));
  CHECK(contains(r.out, "class not computable in this regime"));

  // degree mismatch is a resolution error
  r = run([&](auto& out, auto& err) {
    return cmd_boundary(p9, "L", "index", "generator", "", "", o, out, err);
  });
  CHECK(r.rc == 2);

  // corrupted lifts are rejected with the lift exit code
  ProblemFile bad = bundled("ex2_8");
  bad.lifts[0].second.w.body[0][0].at(0, 0) += 0.25;
  r = run([&](auto& out, auto& err) {
    return cmd_boundary(bad, "L", "index", "generator", "displayed", "", o,
                        out, err);
  });
  CHECK(r.rc == 4);
}

TEST_CASE("verify command checks invariants and certificates") {
  CliOptions o;
  ProblemFile p6 = bundled("ex2_6");
  Run r = run([&](auto& out, auto& err) {
    return cmd_verify(p6, "generator", "", o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "all invariants hold"));

  r = run([&](auto& out, auto& err) {
    return cmd_verify(p6, "generator", "rotation", o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "rotation witness verified"));

  ProblemFile bad = bundled("ex2_6");
  bad.k0_triples[0].second.v.body[0][0].at(0, 0) += 0.5;
  r = run([&](auto& out, auto& err) {
    return cmd_verify(bad, "generator", "", o, out, err);
  });
  CHECK(r.rc == 1);
  CHECK(contains(r.out, "FAIL"));

  // a stored connecting certificate for the degree-1 class
  ProblemFile p7 = bundled("ex2_7");
  const K1Triple& gen = *find_triple(p7, "generator").k1;
  p7.certificates.emplace_back(
      "still", std::vector<Element>{Element::unit(gen.u.alg, gen.u.level),
                                    Element::unit(gen.u.alg, gen.u.level)});
  CliOptions small;
  small.grid = 33;
  r = run([&](auto& out, auto& err) {
    return cmd_verify(p7, "generator", "still", small, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "class = 1"));

  std::vector<Element> wrong{Element::unit(gen.u.alg, gen.u.level),
                             Element::unit(gen.u.alg, gen.u.level).scale(-1)};
  p7.certificates.emplace_back("wrong_end", wrong);
  r = run([&](auto& out, auto& err) {
    return cmd_verify(p7, "generator", "wrong_end", small, out, err);
  });
  CHECK(r.rc == 4);
  CHECK(contains(r.out, "certificate FAIL"));
}

TEST_CASE("machine output appends results to the canonical schema") {
  CliOptions m;
  m.machine = true;
  m.grid = 65;
  ProblemFile p9 = bundled("ex2_9");
  Run r = run([&](auto& out, auto& err) {
    return cmd_boundary(p9, "L", "exp", "generator", "", "", m, out, err);
  });
  CHECK(r.rc == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["format"] == 1);
  CHECK(doc["results"]["command"] == "boundary");
  CHECK(doc["results"]["class"] == nlohmann::json::array({-2}));
  CHECK(doc["results"]["group"] == "Z");
  std::string outname = doc["results"]["output_triple"];
  CHECK(doc["triples"].contains(outname));
  // the annotated document is still a loadable problem
  ProblemFile back = parse_problem(r.out);
  CHECK(find_triple(back, outname).k1 != nullptr);

  Run rk = run([&](auto& out, auto& err) {
    return cmd_kgroups(p9, "M2", m, out, err);
  });
  CHECK(rk.rc == 0);
  nlohmann::json kdoc = nlohmann::json::parse(rk.out);
  CHECK(kdoc["results"]["k0"] == "Z");
  CHECK(kdoc["results"]["k1"] == "0");

  Run rs = run([&](auto& out, auto& err) {
    return cmd_sixterm(p9, "L", m, out, err);
  });
  CHECK(rs.rc == 0);
  nlohmann::json sdoc = nlohmann::json::parse(rs.out);
  CHECK(sdoc["results"]["ok"] == true);
  CHECK(sdoc["results"]["groups"].size() == 6);

  Run rf = run([&](auto& out, auto& err) {
    return cmd_fixtures("", m, out, err);
  });
  CHECK(rf.rc == 0);
  nlohmann::json fdoc = nlohmann::json::parse(rf.out);
  CHECK(fdoc["results"]["entries"].size() == 8);
}

TEST_CASE("fixtures command lists the catalog and exports problems") {
  CliOptions o;
  Run r = run([&](auto& out, auto& err) { return cmd_fixtures("", o, out, err); });
  CHECK(r.rc == 0);
  for (const auto& name : fixture_names()) CHECK(contains(r.out, name));
  CHECK(contains(r.out, "reference only"));

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "relk_emit_test";
  fs::remove_all(dir);
  r = run([&](auto& out, auto& err) {
    return cmd_fixtures(dir.string(), o, out, err);
  });
  CHECK(r.rc == 0);
  CHECK(fs::exists(dir / "ex2_6.json"));
  CHECK(fs::exists(dir / "ex2_9.json"));
  ProblemFile back = load_problem_file((dir / "ex2_9.json").string());
  CHECK(find_ladder(back, "L").label == "evaluation ladder");
  fs::remove_all(dir);
}
