#ifndef AMRSTLC_STLC_HPP
#define AMRSTLC_STLC_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace amrstlc {

// ---------------------------------------------------------------------------
// Simple types: e (individuals), t (truth values), s (worlds), a -> b.
// Immutable, shared; compare with operator== (structural).
// ---------------------------------------------------------------------------

class Type {
 public:
  enum class Kind { E, T, S, Arrow };

  static Type e();
  static Type t();
  static Type s();
  static Type arrow(Type from, Type to);

  Kind kind() const { return node_->kind; }
  Type from() const;  // precondition: kind() == Kind::Arrow
  Type to() const;    // precondition: kind() == Kind::Arrow

  bool operator==(const Type& other) const;
  bool operator!=(const Type& other) const { return !(*this == other); }

  // Right-associative arrow notation: "e -> s -> t", "(e -> t) -> t".
  std::string str() const;

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const Node> from, to;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Builders for the signature shapes used throughout.
Type pred_type_ext();   // e -> t
Type pred_type_int();   // e -> s -> t
Type role_type_ext();   // e -> e -> t
Type role_type_int();   // e -> e -> s -> t
Type prop_type();       // s -> t
Type cont_type();       // e -> (s -> t) -> s -> t
Type gq_type_ext();     // (e -> t) -> (e -> t) -> t
Type gq_type_int();     // (e -> (s -> t)) -> (e -> (s -> t)) -> s -> t

// ---------------------------------------------------------------------------
// Terms. Constructors enforce the typing rules; an ill-typed combination
// throws type_error at construction, so every Term is well-typed.
// ---------------------------------------------------------------------------

struct type_error : std::logic_error {
  explicit type_error(const std::string& what) : std::logic_error(what) {}
};

class Term {
 public:
  enum class Kind { Const, Var, Lam, App, And, Exists, Top };

  static Term constant(std::string name, Type type);
  static Term var(std::string name, Type type);
  static Term lam(std::string binder, Type binder_type, Term body);
  static Term app(Term fun, Term arg);      // throws type_error on mismatch
  static Term conj(Term lhs, Term rhs);     // both operands must have type t
  static Term exists(std::string binder, Term body);  // binder has type e
  static Term top();

  Kind kind() const { return node_->kind; }
  const Type& type() const { return node_->type; }

  // Accessors; each asserts the matching kind.
  const std::string& name() const;    // Const, Var
  const std::string& binder() const;  // Lam, Exists
  Type binder_type() const;           // Lam, Exists
  Term body() const;                  // Lam, Exists
  Term fun() const;                   // App
  Term arg() const;                   // App
  Term lhs() const;                   // And
  Term rhs() const;                   // And

  // Structural equality including bound-variable names.
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  struct Node {
    Kind kind;
    Type type;
    std::string name;                // Const/Var name, Lam/Exists binder
    Type binder_type;                // Lam (Exists binders are always e)
    std::shared_ptr<const Node> a;   // Lam/Exists body, App fun, And lhs
    std::shared_ptr<const Node> b;   // App arg, And rhs
    Node(Kind k, Type ty) : kind(k), type(std::move(ty)), binder_type(Type::e()) {}
  };
  static Term wrap(std::shared_ptr<const Node> node) { return Term(std::move(node)); }
  std::shared_ptr<const Node> node_;
};

// type_of is total on constructed terms (well-typedness is enforced at
// construction); exposed as a free function for symmetry with the checks.
inline Type type_of(const Term& term) { return term.type(); }

// Free variables in first-occurrence (pre-order) order.
std::vector<std::string> free_vars(const Term& term);
bool occurs_free(const std::string& name, const Term& term);

// Smallest-numeric-suffix fresh name: base, then stem2, stem3, ... where stem
// is base without its trailing digits ("w" -> "w2", "b2" -> "b3").
std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid);

// Capture-avoiding substitution of value for free occurrences of name.
Term substitute(const Term& term, const std::string& name, const Term& value);

// Beta-normalization with two simplifications applied to a joint fixpoint:
//   - conjunction units:  phi & true -> phi,  true & phi -> phi
//   - existential hoisting: (exists x . phi) & psi -> exists x . (phi & psi)
//     (capture-avoiding; likewise on the right operand)
// Hoisting keeps derived formulas in the flat exists-block form the
// storage/retrieval pipeline produces; it never crosses a Lam or App boundary.
Term beta_normalize(const Term& term);

bool alpha_eq(const Term& lhs, const Term& rhs);

// Alpha-equivalence modulo associativity/commutativity of & and reordering of
// adjacent exists binders. Both sides are beta-normalized first.
bool equiv_mod_ac_alpha(const Term& lhs, const Term& rhs);

struct PrettyOptions {
  bool unicode = false;
};

// Deterministic rendering. ASCII form:
//   \v . body      exists v1 v2 . body      f(a)(b)      a & b      true
// Lam/Exists bodies extend maximally right; parentheses are inserted exactly
// where required for re-parsing.
std::string pretty(const Term& term, const PrettyOptions& opts = {});
std::string pretty(const Type& type);

// AST export: {"kind": ..., "type": ..., children...}.
nlohmann::ordered_json term_to_json(const Term& term);

}  // namespace amrstlc

#endif  // AMRSTLC_STLC_HPP
