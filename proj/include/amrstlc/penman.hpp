#ifndef AMRSTLC_PENMAN_HPP
#define AMRSTLC_PENMAN_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "amrstlc/amr.hpp"

namespace amrstlc {

struct parse_error : std::runtime_error {
  SourceSpan span;
  parse_error(const std::string& what, SourceSpan where)
      : std::runtime_error(what), span(where) {}
};

// Parses one graph in Penman notation:
//   node    := '(' VAR '/' CONCEPT role* ')'
//   role    := ROLE arg
//   arg     := node | VAR | CONST
//   ROLE    := ':' [A-Za-z0-9-]+
//   VAR     := [a-z][A-Za-z0-9]*
//   CONCEPT := [A-Za-z][A-Za-z0-9-]*
//   CONST   := number | '-' | '+' | quoted string | bare undeclared token
// '#' starts a comment running to end of line. A bare token counts as a
// variable mention exactly when some instance assignment in the graph
// declares it; otherwise it is a constant. Throws parse_error (with source
// span) on lexical errors, unbalanced parentheses, duplicate instance
// assignments, roles without arguments, and empty input.
AmrNode parse(const std::string& text);

// Parses a batch: graphs separated by blank lines (at parenthesis depth 0).
std::vector<AmrNode> parse_many(const std::string& text);

// Single-line rendering; parse(print(g)) reproduces g structurally.
std::string print(const AmrNode& graph);

struct normalize_error : std::runtime_error {
  std::string var;
  normalize_error(const std::string& what, std::string which)
      : std::runtime_error(what), var(std::move(which)) {}
};

// Re-expresses every inverted role :R-of from x to y as :R from y to x,
// re-rooting subgraphs via re-entrant mentions as needed. The root and the
// triple set (modulo the R(x)(y) = R-of(y)(x) identity) are preserved; no
// role in the result is inverted. Each instance assignment nests at the
// edge where a pre-order walk of the result first reaches its variable, so
// the rewrite is idempotent. Throws normalize_error when a node would
// become unreachable from the root (naming the node), or when an inverted
// role has a constant argument (constants cannot head a subgraph).
AmrNode normalize_inverse_roles(const AmrNode& graph);

// One logical triple. Instance assignments yield {relation: "instance",
// source: var, target: concept}; role assignments yield {relation: base,
// source: var, target: var-or-constant-text}.
struct Triple {
  std::string relation;
  std::string source;
  std::string target;
  bool is_instance = false;

  bool operator==(const Triple& other) const = default;
};

// The graph's logical triples, inverse roles normalized first, emitted in
// depth-first pre-order with each subgraph's triples preceding the role
// triple that links to it. Triple count = #instances + #role assignments.
std::vector<Triple> to_triples(const AmrNode& graph);

std::string triple_to_string(const Triple& triple);

}  // namespace amrstlc

#endif  // AMRSTLC_PENMAN_HPP
