#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "amrstlc/amr.hpp"
#include "amrstlc/stlc.hpp"

// Compositional translation of AMR graphs into logical forms, in two
// regimes:
//
//  * extensional — concepts become predicates of type e→t, roles become
//    relations of type e→e→t, and the graph denotes a first-order formula
//    (type t) over its instance variables;
//
//  * intensional — every formula is world-indexed (type s→t), predicates
//    are typed e→s→t, roles e→e→s→t, and the `:content` role pairs an
//    attitude event with a proposition through the modal constant
//    cont : e→(s→t)→(s→t).
//
// Both regimes expect inverse roles to have been normalized away; the
// derive_* entry points run the full pipeline (normalization, translation,
// existential closure, normalization of the resulting term).

namespace amrstlc {

// A graph that cannot be translated (for example a `:content` role whose
// argument is a bare variable reference or a constant).
class translate_error : public std::runtime_error {
 public:
  explicit translate_error(const std::string& message)
      : std::runtime_error(message) {}
};

// --- shared -----------------------------------------------------------------

// The variables an existential closure around `node`'s translation must
// bind: every variable instance-assigned inside `node`, in declaration
// order, except that the arguments of `:content` roles contribute nothing
// (their variables are closed at the content boundary itself).
std::vector<std::string> free_for_close(const AmrNode& node);

// The STLC constant a graph constant denotes (quoted constants keep their
// quotes so they cannot collide with variable names).
std::string constant_symbol(const Constant& constant);

// Raises translate_error if any `:content` role in the graph has a bare
// variable reference or constant as its argument. Runs on the graph as
// written: inverse-role normalization can relocate an instance assignment
// into a `:content` slot, which must not mask the undefinedness.
void require_content_subgraphs(const AmrNode& graph);

// --- extensional regime -----------------------------------------------------

// Predicate and role types for this regime: e→t and e→e→t.
Term translate_ext(const AmrNode& graph);

// Prefixes `term` with one existential per variable in `vars`, ordered by
// first free occurrence in `term`. Raises translate_error if some variable
// in `vars` has no free occurrence.
Term close_v1(const Term& term, const std::vector<std::string>& vars);

// normalize_inverse_roles → translate_ext → close_v1 over the graph's free
// variables → beta-normalize. The result is a closed term of type t.
Term derive_ext(const AmrNode& graph);

// --- intensional regime -----------------------------------------------------

// World-lifted conjunction λw. a(w) ∧ b(w) and existential λw. ∃x(body(w)),
// both over operands of type s→t.
Term and_w(const Term& a, const Term& b);
Term exists_w(const std::string& var, const Term& body);

// World-lifted translation; the result has type s→t. `:content A` requires
// A to be an instance-assigned subgraph and contributes
// cont(x)(close_int(translate_int(A), free_for_close(A))).
Term translate_int(const AmrNode& graph);

// close_v1's world-lifted analogue, built from exists_w.
Term close_int(const Term& term, const std::vector<std::string>& vars);

// normalize_inverse_roles → translate_int → close_int over free_for_close →
// beta-normalize → canonical world names. The result is a closed term of
// type s→t; raises translate_error if an individual variable remains free
// (a variable declared inside a `:content` subgraph but referenced outside).
Term derive_int(const AmrNode& graph);

// Renames every world binder (λ over type s) to w, w2, w3, … by nesting
// depth, skipping names already used for anything else in the term.
Term canonicalize_world_names(const Term& term);

// Any individual variables left free in a supposedly closed result.
std::vector<std::string> residual_individual_vars(const Term& term);

}  // namespace amrstlc
