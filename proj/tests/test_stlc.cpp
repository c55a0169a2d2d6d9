#include <string>
#include <vector>

#include <doctest.h>

#include "amrstlc/stlc.hpp"
#include "gen.hpp"

using namespace amrstlc;

namespace {

Term pred(const std::string& name, const Term& x) {
  return Term::app(Term::constant(name, pred_type_ext()), x);
}

Term evar(const std::string& name) { return Term::var(name, Type::e()); }

}  // namespace

TEST_CASE("type construction and equality") {
  CHECK(Type::e() == Type::e());
  CHECK(Type::t() != Type::s());
  Type et = Type::arrow(Type::e(), Type::t());
  CHECK(et == Type::arrow(Type::e(), Type::t()));
  CHECK(et != Type::arrow(Type::t(), Type::e()));
  CHECK(et.kind() == Type::Kind::Arrow);
  CHECK(et.from() == Type::e());
  CHECK(et.to() == Type::t());
}

TEST_CASE("arrow notation is right-associative with minimal parentheses") {
  CHECK(pretty(Type::t()) == "t");
  CHECK(pretty(pred_type_int()) == "e -> s -> t");
  CHECK(pretty(gq_type_ext()) == "(e -> t) -> (e -> t) -> t");
  CHECK(pretty(cont_type()) == "e -> (s -> t) -> s -> t");
  CHECK(pretty(prop_type()) == "s -> t");
}

TEST_CASE("signature shorthands expand correctly") {
  CHECK(pred_type_ext() == Type::arrow(Type::e(), Type::t()));
  CHECK(role_type_ext() ==
        Type::arrow(Type::e(), Type::arrow(Type::e(), Type::t())));
  CHECK(prop_type() == Type::arrow(Type::s(), Type::t()));
  CHECK(pred_type_int() == Type::arrow(Type::e(), prop_type()));
  CHECK(role_type_int() == Type::arrow(Type::e(), pred_type_int()));
  CHECK(cont_type() ==
        Type::arrow(Type::e(), Type::arrow(prop_type(), prop_type())));
}

TEST_CASE("construction enforces the typing rules") {
  Term p = Term::constant("p", pred_type_ext());
  Term c = Term::constant("c", Type::e());
  CHECK(type_of(Term::app(p, c)) == Type::t());
  CHECK_THROWS_AS(Term::app(p, Term::top()), type_error);
  CHECK_THROWS_AS(Term::app(c, c), type_error);
  CHECK_THROWS_AS(Term::conj(Term::top(), c), type_error);
  CHECK_THROWS_AS(Term::exists("x", c), type_error);
  CHECK(type_of(Term::lam("x", Type::e(), Term::top())) ==
        Type::arrow(Type::e(), Type::t()));
  CHECK(type_of(Term::exists("x", pred("q", evar("x")))) == Type::t());
}

TEST_CASE("structural equality distinguishes binder names; alpha_eq does not") {
  Term a = Term::lam("x", Type::e(), pred("p", evar("x")));
  Term b = Term::lam("y", Type::e(), pred("p", evar("y")));
  CHECK(a != b);
  CHECK(alpha_eq(a, b));
  CHECK_FALSE(alpha_eq(a, Term::lam("y", Type::e(), pred("q", evar("y")))));
  // Free variables must match by name.
  CHECK_FALSE(alpha_eq(pred("p", evar("x")), pred("p", evar("y"))));
}

TEST_CASE("free variables in first-occurrence order") {
  Term t = Term::conj(pred("p", evar("b")),
                      Term::conj(pred("q", evar("a")), pred("p", evar("b"))));
  CHECK(free_vars(t) == std::vector<std::string>{"b", "a"});
  CHECK(occurs_free("a", t));
  CHECK_FALSE(occurs_free("z", t));
  Term closed = Term::exists("b", Term::exists("a", t));
  CHECK(free_vars(closed).empty());
  // A binder shadows; its body occurrences are not free.
  Term shadow = Term::conj(pred("p", evar("x")),
                           Term::exists("x", pred("q", evar("x"))));
  CHECK(free_vars(shadow) == std::vector<std::string>{"x"});
}

TEST_CASE("fresh names take the smallest unused numeric suffix") {
  CHECK(fresh_name("w", {}) == "w");
  CHECK(fresh_name("w", {"w"}) == "w2");
  CHECK(fresh_name("w", {"w", "w2"}) == "w3");
  CHECK(fresh_name("b2", {"b2"}) == "b3");
  CHECK(fresh_name("b2", {"b2", "b3"}) == "b4");
}

TEST_CASE("substitution avoids capture") {
  // (\y . p(x))[x := y] must rename the binder, not capture.
  Term t = Term::lam("y", Type::e(), pred("p", evar("x")));
  Term r = substitute(t, "x", evar("y"));
  CHECK(alpha_eq(r, Term::lam("z", Type::e(), pred("p", evar("y")))));
  CHECK_FALSE(alpha_eq(r, Term::lam("z", Type::e(), pred("p", evar("z")))));
  // Bound occurrences are untouched.
  Term bound = Term::exists("x", pred("p", evar("x")));
  CHECK(substitute(bound, "x", evar("c")) == bound);
}

TEST_CASE("beta reduction substitutes arguments") {
  Term f = Term::lam("x", Type::e(), pred("p", evar("x")));
  Term r = beta_normalize(Term::app(f, Term::constant("c", Type::e())));
  CHECK(pretty(r) == "p(c)");
  // Nested redexes reduce to normal form.
  Term g = Term::lam(
      "q", pred_type_ext(),
      Term::app(Term::var("q", pred_type_ext()), Term::constant("c", Type::e())));
  CHECK(pretty(beta_normalize(Term::app(g, f))) == "p(c)");
}

TEST_CASE("conjunction units are eliminated") {
  Term p = pred("p", Term::constant("c", Type::e()));
  CHECK(beta_normalize(Term::conj(p, Term::top())) == p);
  CHECK(beta_normalize(Term::conj(Term::top(), p)) == p);
  CHECK(beta_normalize(Term::conj(Term::top(), Term::top())) == Term::top());
}

TEST_CASE("existentials hoist out of conjunctions") {
  Term psi = pred("p", Term::constant("c", Type::e()));
  Term phi = Term::exists("x", pred("q", evar("x")));
  CHECK(pretty(beta_normalize(Term::conj(psi, phi))) ==
        "exists x . p(c) & q(x)");
  CHECK(pretty(beta_normalize(Term::conj(phi, psi))) ==
        "exists x . q(x) & p(c)");
}

TEST_CASE("hoisting renames when the conjunct mentions the binder name") {
  Term psi = pred("p", evar("x"));  // x free
  Term phi = Term::exists("x", pred("q", evar("x")));
  Term r = beta_normalize(Term::conj(psi, phi));
  CHECK(alpha_eq(r, Term::exists("y", Term::conj(pred("p", evar("x")),
                                                 pred("q", evar("y"))))));
  CHECK(free_vars(r) == std::vector<std::string>{"x"});
}

TEST_CASE("hoisting stays inside lambda bodies") {
  Term inner = Term::conj(pred("p", Term::constant("c", Type::e())),
                          Term::exists("x", pred("q", evar("x"))));
  Term t = Term::lam("w", Type::s(), inner);
  CHECK(pretty(beta_normalize(t)) == "\\w . exists x . p(c) & q(x)");
}

TEST_CASE("equivalence tolerates commutativity, associativity, and binder order") {
  Term a = evar("a");
  Term b = evar("b");
  Term lhs = Term::exists(
      "a", Term::exists("b", Term::conj(Term::conj(pred("p", a), pred("q", b)),
                                        pred("r", a))));
  Term rhs = Term::exists(
      "b", Term::exists("a", Term::conj(pred("r", a),
                                        Term::conj(pred("q", b), pred("p", a)))));
  CHECK(equiv_mod_ac_alpha(lhs, rhs));
  CHECK_FALSE(alpha_eq(lhs, rhs));
  Term different = Term::exists(
      "a", Term::exists("b", Term::conj(Term::conj(pred("p", a), pred("q", b)),
                                        pred("r", b))));
  CHECK_FALSE(equiv_mod_ac_alpha(lhs, different));
}

TEST_CASE("equivalence beta-normalizes both sides first") {
  Term p = pred("p", Term::constant("c", Type::e()));
  Term redex = Term::app(Term::lam("x", Type::e(), pred("p", evar("x"))),
                         Term::constant("c", Type::e()));
  CHECK(equiv_mod_ac_alpha(Term::conj(p, Term::top()), redex));
}

TEST_CASE("rendering uses minimal parentheses") {
  Term x = evar("x");
  Term role = Term::app(
      Term::app(Term::constant("ARG0", role_type_ext()), x), evar("y"));
  CHECK(pretty(role) == "ARG0(x)(y)");
  Term lam_applied =
      Term::app(Term::lam("x", Type::e(), pred("p", x)), evar("y"));
  CHECK(pretty(lam_applied) == "(\\x . p(x))(y)");
  Term conj_chain = Term::conj(Term::conj(pred("p", x), pred("q", x)),
                               pred("r", x));
  CHECK(pretty(conj_chain) == "p(x) & q(x) & r(x)");
  Term exists_block =
      Term::exists("a", Term::exists("b", pred("p", evar("a"))));
  CHECK(pretty(exists_block) == "exists a b . p(a)");
  CHECK(pretty(Term::top()) == "true");
}

TEST_CASE("unicode rendering") {
  Term u = Term::exists(
      "a", Term::exists("b", Term::conj(pred("p", evar("a")), Term::top())));
  CHECK(pretty(u, {.unicode = true}) == "∃a,b . p(a) ∧ ⊤");
  CHECK(pretty(Term::lam("x", Type::e(), Term::top()), {.unicode = true}) ==
        "λx . ⊤");
}

TEST_CASE("JSON export carries kinds and types") {
  Term t = Term::exists("x", pred("p", evar("x")));
  nlohmann::ordered_json j = term_to_json(t);
  CHECK(j["kind"] == "exists");
  CHECK(j["type"] == "t");
}

TEST_CASE("subject reduction and idempotence on generated terms") {
  gen::Rng rng(424242);
  for (int i = 0; i < 500; ++i) {
    Term t = gen::random_term(rng);
    CAPTURE(i);
    CAPTURE(pretty(t));
    Term n = beta_normalize(t);
    CHECK(type_of(n) == type_of(t));
    CHECK(beta_normalize(n) == n);
  }
}
