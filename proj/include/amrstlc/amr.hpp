#ifndef AMRSTLC_AMR_HPP
#define AMRSTLC_AMR_HPP

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace amrstlc {

// Byte range [begin, end) into the source text a node was parsed from.
// Programmatically built nodes carry the empty span {0, 0}.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// A role label with its inversion flag. ":ARG1-of" parses to {"ARG1", true};
// plain ":mod" to {"mod", false}. The structural roles "quant" and "pred"
// are never inverted (validate reports a violation if they are).
struct RoleName {
  std::string base;
  bool inverted = false;

  // Label as written in Penman notation (re-appends "-of" when inverted).
  std::string label() const { return inverted ? base + "-of" : base; }

  // Splits a role token (without the leading ':') into base and flag by
  // stripping one trailing "-of".
  static RoleName from_label(const std::string& label);

  bool operator==(const RoleName& other) const = default;
};

struct AmrNode;

// A constant argument: number, "-", "+", quoted string, or a bare token not
// declared as a variable anywhere in the graph. `text` holds the unquoted
// content; `quoted` records whether the source used double quotes.
struct Constant {
  std::string text;
  bool quoted = false;
};

// A re-entrant mention of a variable declared by an instance assignment
// elsewhere in the graph.
struct VarRef {
  std::string var;
};

struct RoleAssignment;

// An instance assignment (x / concept) with its role assignments in source
// order. Duplicate roles are permitted and preserved.
struct Instance {
  std::string var;
  std::string concept_name;
  std::vector<RoleAssignment> roles;
};

struct AmrNode {
  std::variant<Constant, VarRef, Instance> value;
  SourceSpan span;

  bool is_constant() const { return std::holds_alternative<Constant>(value); }
  bool is_var_ref() const { return std::holds_alternative<VarRef>(value); }
  bool is_instance() const { return std::holds_alternative<Instance>(value); }
  const Constant& as_constant() const { return std::get<Constant>(value); }
  const VarRef& as_var_ref() const { return std::get<VarRef>(value); }
  const Instance& as_instance() const { return std::get<Instance>(value); }
  Instance& as_instance() { return std::get<Instance>(value); }
};

struct RoleAssignment {
  RoleName role;
  AmrNode arg;
};

AmrNode make_instance(std::string var, std::string concept_name,
                      std::vector<RoleAssignment> roles = {});
AmrNode make_var_ref(std::string var);
AmrNode make_constant(std::string text, bool quoted = false);

// Structural equality ignoring source spans.
bool structural_eq(const AmrNode& lhs, const AmrNode& rhs);

// Validation. A report with no violations means the graph is well-formed:
// every variable has exactly one instance assignment, every VarRef resolves,
// the graph is acyclic once inverse roles are normalized, and no structural
// role (quant/pred) carries the inverted flag.
struct Violation {
  enum class Kind {
    DuplicateInstance,
    DanglingVarRef,
    Cyclic,
    InvertedStructuralRole,
  };
  Kind kind;
  std::string var;  // offending variable (or role label for role violations)
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const AmrNode& graph);

// Free variables of an AMR, defined structurally:
//   free(constant) = {}        free(x) = {}   (a bare re-entrant mention)
//   free((x / P)) = {x}        free((x / P :R1 A1 ... :Rn An)) = {x} u ...
// Returned in first-occurrence (pre-order) order without duplicates.
std::vector<std::string> amr_free_vars(const AmrNode& graph);

// All variables declared by instance assignments, pre-order.
std::vector<std::string> declared_vars(const AmrNode& graph);

}  // namespace amrstlc

#endif  // AMRSTLC_AMR_HPP
