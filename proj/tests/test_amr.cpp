#include <string>
#include <vector>

#include <doctest.h>

#include "amrstlc/amr.hpp"
#include "amrstlc/penman.hpp"
#include "gen.hpp"

using namespace amrstlc;

TEST_CASE("builders produce the expected node shapes") {
  AmrNode g = make_instance(
      "h", "hug-01",
      {{RoleName{"ARG0", false}, make_instance("b", "boy")},
       {RoleName{"ARG1", false}, make_var_ref("b")},
       {RoleName{"quant", false}, make_constant("2")}});
  REQUIRE(g.is_instance());
  CHECK(g.as_instance().roles.size() == 3);
  CHECK(g.as_instance().roles[1].arg.is_var_ref());
  CHECK(g.as_instance().roles[2].arg.is_constant());
  CHECK(structural_eq(g, parse(print(g))));
}

TEST_CASE("structural equality ignores spans but not order") {
  AmrNode a = parse("(a / alpha :mod 1 :time 2)");
  AmrNode b = parse("  (a / alpha :mod 1 :time 2)  ");
  AmrNode c = parse("(a / alpha :time 2 :mod 1)");
  CHECK(structural_eq(a, b));
  CHECK_FALSE(structural_eq(a, c));
  CHECK_FALSE(structural_eq(a, parse("(a / alpha :mod 1)")));
  CHECK_FALSE(structural_eq(parse("(a / alpha)"), parse("(a / beta)")));
}

TEST_CASE("quoted and bare constants with the same text differ") {
  AmrNode bare = make_instance("a", "alpha", {{RoleName{"mod", false},
                                               make_constant("x1")}});
  AmrNode quoted = make_instance("a", "alpha", {{RoleName{"mod", false},
                                                 make_constant("x1", true)}});
  CHECK_FALSE(structural_eq(bare, quoted));
}

TEST_CASE("free variables are the declared variables, pre-order") {
  AmrNode g = parse(
      "(b / believe-01 :ARG0 (b2 / boy) :ARG1 (s / sick-05 :ARG1 b2))");
  CHECK(amr_free_vars(g) == std::vector<std::string>{"b", "b2", "s"});
  CHECK(declared_vars(g) == std::vector<std::string>{"b", "b2", "s"});
  // Re-entrant mentions and constants contribute nothing.
  CHECK(amr_free_vars(make_var_ref("x")).empty());
  CHECK(amr_free_vars(make_constant("42")).empty());
}

TEST_CASE("free variables are invariant under inverse normalization") {
  AmrNode g = parse(
      "(b / believe-01 :ARG0 (b2 / boy :ARG1-of (s / sick-05)) :ARG1 s)");
  AmrNode n = normalize_inverse_roles(g);
  std::vector<std::string> before = amr_free_vars(g);
  std::vector<std::string> after = amr_free_vars(n);
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  CHECK(before == after);
}

TEST_CASE("validation accepts well-formed graphs") {
  CHECK(validate(parse("(h / hug-01 :ARG0 (b / boy) :ARG1 b)")).ok());
  CHECK(validate(parse("(b / believe-01 :ARG0 (b2 / boy :ARG1-of "
                       "(s / sick-05)) :ARG1 s)"))
            .ok());
}

TEST_CASE("validation reports duplicate instance assignments") {
  AmrNode g = make_instance(
      "a", "alpha", {{RoleName{"mod", false}, make_instance("a", "beta")}});
  ValidationReport report = validate(g);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].kind == Violation::Kind::DuplicateInstance);
  CHECK(report.violations[0].var == "a");
}

TEST_CASE("validation reports dangling variable mentions") {
  AmrNode g = make_instance("a", "alpha",
                            {{RoleName{"mod", false}, make_var_ref("zz")}});
  ValidationReport report = validate(g);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].kind == Violation::Kind::DanglingVarRef);
  CHECK(report.violations[0].var == "zz");
}

TEST_CASE("validation reports cycles modulo inverse normalization") {
  // a -> b by :ARG0, and :ARG1-of turns into b -> a: a two-cycle.
  AmrNode g = parse("(a / alpha :ARG0 (b / beta) :ARG1-of b)");
  ValidationReport report = validate(g);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].kind == Violation::Kind::Cyclic);
  // Self loops count too.
  CHECK_FALSE(validate(parse("(a / alpha :mod a)")).ok());
}

TEST_CASE("validation rejects inverted structural roles") {
  AmrNode g = parse("(a / alpha :quant-of (b / beta))");
  ValidationReport report = validate(g);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations) {
    if (v.kind == Violation::Kind::InvertedStructuralRole) {
      found = true;
      CHECK(v.var == "quant-of");
    }
  }
  CHECK(found);
}

TEST_CASE("generated graphs without inverses or self-references validate") {
  gen::Rng rng(7);
  gen::GraphConfig cfg;
  cfg.allow_inverse = false;
  cfg.allow_var_refs = false;  // refs could close cycles
  for (int i = 0; i < 100; ++i) {
    AmrNode g = gen::random_graph(rng, cfg);
    CAPTURE(print(g));
    CHECK(validate(g).ok());
  }
}
