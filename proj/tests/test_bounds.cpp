#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <map>

#include "uas/bounds.hpp"
#include "uas/complexity.hpp"
#include "uas/errors.hpp"
#include "uas/json_io.hpp"
#include "uas/lp.hpp"

using namespace uas;

namespace {

Subset mask(std::initializer_list<int> indices) {
  Subset s = 0;
  for (int i : indices) s |= subset_bit(i);
  return s;
}

}  // namespace

TEST_CASE("qualification table matches direct queries") {
  AccessStructure u3 = universal_normalized(3);
  std::vector<bool> qual = qualification_table(u3);
  for (std::uint64_t a = 0; a < 64; ++a) CHECK(qual[a] == u3.is_qualified(a));
}

TEST_CASE("entropy LP optimum for two minimal sets is one") {
  AccessStructure u2 = universal_normalized(2);
  LPModel model = entropy_lp(u2);
  LPSolution sol = solve_exact(model);
  CHECK(sol.optimum == rat(1));
  validate_lp_solution(model, sol);
}

TEST_CASE("entropy LP optimum for three minimal sets is 3/2, reduced and unreduced") {
  AccessStructure u3 = universal_normalized(3);
  LPModel model = entropy_lp(u3);
  LPSolution sol = solve_exact(model);
  CHECK(sol.optimum == rat(3, 2));

  LPModel reduced = symmetry_reduce(model, u3);
  CHECK(reduced.reduced);
  CHECK(reduced.var_count() < model.var_count());
  CHECK(reduced.rows.size() < model.rows.size());
  LPSolution rsol = solve_exact(reduced);
  CHECK(rsol.optimum == sol.optimum);
  validate_lp_solution(reduced, rsol);
}

TEST_CASE("bare polymatroid cone has optimum zero") {
  AccessStructure u3 = universal_normalized(3);
  LPModel bare = entropy_lp(u3, /*structure_rows=*/false);
  LPSolution sol = solve_exact(bare);
  CHECK(sol.optimum == rat(0));
}

TEST_CASE("symmetry reduction with a trivial group changes nothing") {
  // not a normalized universal structure: identity group only
  AccessStructure st(3, {mask({0, 1}), mask({1, 2})});
  LPModel model = entropy_lp(st);
  LPModel same = symmetry_reduce(model, st);
  CHECK_FALSE(same.reduced);
  CHECK(same.var_count() == model.var_count());
  CHECK(same.rows.size() == model.rows.size());
}

TEST_CASE("tampered dual certificates are rejected") {
  AccessStructure u2 = universal_normalized(2);
  LPModel model = entropy_lp(u2);
  LPSolution sol = solve_exact(model);

  LPSolution bad = sol;
  bad.optimum += 1;
  bad.x[0] += 1;
  CHECK_THROWS_AS(validate_lp_solution(model, bad), ValidationError);

  LPSolution bad2 = sol;
  for (auto& y : bad2.y)
    if (sgn(y) > 0) {
      y += 1;
      break;
    }
  CHECK_THROWS_AS(validate_lp_solution(model, bad2), ValidationError);

  LPSolution bad3 = sol;
  bad3.x[1] = rat(-1);
  CHECK_THROWS_AS(validate_lp_solution(model, bad3), ValidationError);
}

TEST_CASE("LP cap on participants and variables") {
  CHECK_THROWS_AS(entropy_lp(theorem7_structure(16).structure), CapError);
  LPModel u4 = entropy_lp(universal_normalized(4));
  CHECK_THROWS_AS(solve_exact(u4), CapError);  // 16383 variables unreduced
}

TEST_CASE("export and parse round trip with external validation") {
  AccessStructure u3 = universal_normalized(3);
  LPModel model = entropy_lp(u3);
  model.name = "universal-3";
  std::string path = "/tmp/uas_test_u3.lp";
  export_lp(model, path);
  ParsedLP parsed = parse_lp_file(path);
  CHECK(parsed.minimize);
  // full rendering: one variable per subset of participants plus
  // secret, and t
  CHECK(parsed.variables.size() == (1u << 7) + 1);
  CHECK(parsed.objective.count("t") == 1);

  // assemble the exact solution into the full variable space
  LPSolution sol = solve_exact(model);
  std::map<std::string, double> values;
  values["t"] = to_double(sol.optimum);
  for (std::uint32_t a = 1; a < (1u << 6); ++a) {
    double fa = to_double(sol.x[a]);
    char name[16];
    std::snprintf(name, sizeof name, "f%x", a);
    values[name] = fa;
    std::snprintf(name, sizeof name, "f%x", a | (1u << 6));
    values[name] = fa + (model.independent[a] ? 1.0 : 0.0);
  }
  values["f40"] = 1.0;  // f({s})
  double objective = validate_external_solution(parsed, values, 1e-6);
  CHECK(objective == doctest::Approx(1.5).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("reduced models export in substituted orbit form") {
  AccessStructure u3 = universal_normalized(3);
  LPModel reduced = symmetry_reduce(entropy_lp(u3), u3);
  std::string path = "/tmp/uas_test_u3_reduced.lp";
  export_lp(reduced, path);
  ParsedLP parsed = parse_lp_file(path);
  CHECK(parsed.variables.size() == static_cast<std::size_t>(reduced.var_count()));
  CHECK(parsed.rows.size() == reduced.rows.size());
  std::remove(path.c_str());
}

TEST_CASE("export to an unwritable path fails with an I/O error") {
  LPModel model = entropy_lp(universal_normalized(2));
  CHECK_THROWS_AS(export_lp(model, "/nonexistent-dir/x.lp"), IoError);
}

TEST_CASE("certificates of the lower-bound structures validate") {
  Theorem7Result t3 = theorem7_structure(3);
  CHECK(check_certificate(t3.structure, t3.certificate) == 3);
  CHECK(certificate_bound(t3.structure, t3.certificate) == rat(3, 2));

  CHECK(certificate_bound(theorem7_structure(2).structure, theorem7_structure(2).certificate) ==
        rat(1));
  CHECK(certificate_bound(theorem7_structure(5).structure, theorem7_structure(5).certificate) ==
        rat(5, 3));
  CHECK(certificate_bound(theorem7_structure(8).structure, theorem7_structure(8).certificate) ==
        rat(2));
  CHECK(certificate_bound(theorem7_structure(64).structure,
                          theorem7_structure(64).certificate) == rat(64, 7));
}

TEST_CASE("invalid certificates name the violated condition") {
  Theorem7Result t3 = theorem7_structure(3);

  Certificate outside = t3.certificate;
  outside.c_sequence[0] = mask({2});  // b_1 is not in A0
  try {
    check_certificate(t3.structure, outside);
    FAIL("containment violation not caught");
  } catch (const InvalidCertificate& e) {
    CHECK(e.condition == InvalidCertificate::Condition::Containment);
    CHECK(e.index == 0);
  }

  // B_0 C_0 = C_0 qualified right away
  AccessStructure u2 = universal_normalized(2);
  Certificate qualified_c0;
  qualified_c0.a0 = mask({0});
  qualified_c0.b_sequence = {1};
  qualified_c0.c_sequence = {mask({0})};
  try {
    check_certificate(u2, qualified_c0);
    FAIL("independence violation not caught");
  } catch (const InvalidCertificate& e) {
    CHECK(e.condition == InvalidCertificate::Condition::Independence);
    CHECK(e.index == 0);
  }

  Certificate repeated = t3.certificate;
  repeated.b_sequence[1] = repeated.b_sequence[0];
  CHECK_THROWS_AS(check_certificate(t3.structure, repeated), InvalidCertificate);

  // a step whose B_{i+1} C_i is not qualified
  Certificate weak = t3.certificate;
  weak.c_sequence[1] = 0;
  try {
    check_certificate(t3.structure, weak);
    FAIL("qualification violation not caught");
  } catch (const InvalidCertificate& e) {
    CHECK(e.condition == InvalidCertificate::Condition::Qualification);
    CHECK(e.index == 1);
  }
}

TEST_CASE("certificates validate for every n up to 64") {
  for (int n = 2; n <= 64; ++n) {
    Theorem7Result t = theorem7_structure(n);
    CHECK(check_certificate(t.structure, t.certificate) == n);
    Rational bound = certificate_bound(t.structure, t.certificate);
    CHECK(bound == rat(n, t.k));
    CHECK(meets_log_bound(bound, n));
  }
}

TEST_CASE("log-bound comparison is exact and strict") {
  CHECK(meets_log_bound(rat(1), 2));
  CHECK(meets_log_bound(rat(64, 7), 64));
  CHECK_FALSE(meets_log_bound(rat(1, 10), 8));   // 2^79 > 8
  CHECK_FALSE(meets_log_bound(rat(1, 2), 64));    // 32 > 1 + log2(64)
  CHECK(meets_log_bound(rat(1000), 16));          // huge bound passes
}

TEST_CASE("universal lower bound reports") {
  BoundReport r2 = universal_lower_bound(2);
  CHECK(r2.best() == rat(1));
  REQUIRE(r2.lp_bound.has_value());
  CHECK(*r2.lp_bound == rat(1));
  REQUIRE(r2.certificate_bound.has_value());
  CHECK(*r2.certificate_bound <= *r2.lp_bound);

  BoundReport r3 = universal_lower_bound(3);
  CHECK(r3.best() == rat(3, 2));
  CHECK(*r3.certificate_bound == rat(3, 2));
  CHECK(*r3.lp_bound == rat(3, 2));

  BoundReport r64 = universal_lower_bound(64);
  CHECK_FALSE(r64.lp_bound.has_value());
  CHECK(r64.best() == rat(64, 7));

  std::string json = bound_report_to_json(r3);
  CHECK(json.find("\"3/2\"") != std::string::npos);
}

TEST_CASE("lower bounds never exceed the construction upper bounds") {
  HarmonicTable table(64);
  for (int n : {2, 3, 5, 8, 16, 64}) {
    BoundReport r = universal_lower_bound(n, /*use_lp=*/n <= 3);
    CHECK(r.best() <= sigma_upper(n, table).max_value);
  }
}
