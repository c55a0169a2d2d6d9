#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amrstlc/scope.hpp"
#include "amrstlc/stlc.hpp"
#include "json.hpp"

// Finite intensional models and a denotational evaluator for closed terms
// of type t or s→t. A model fixes a set of worlds, a domain of individuals,
// world-indexed predicate and role extensions, a content map assigning each
// (individual, world) pair the set of worlds compatible with that
// individual's propositional content there, and denotations for individual
// constants. cont(x)(p)(w) holds iff p holds at every world the content map
// gives for (x, w); generalized-quantifier constants are interpreted
// logically via a determiner table (universal, existential, at-least-n).

namespace amrstlc {

class eval_error : public std::runtime_error {
 public:
  explicit eval_error(const std::string& message) : std::runtime_error(message) {}
};

struct Model {
  std::vector<std::string> worlds;
  std::vector<std::string> individuals;
  // Individual-constant denotations: name → index into individuals.
  std::map<std::string, int> constants;
  // name → per-world set of individual indices.
  std::map<std::string, std::vector<std::set<int>>> predicates;
  // name → per-world set of (source, target) index pairs.
  std::map<std::string, std::vector<std::set<std::pair<int, int>>>> roles;
  // content[individual][world] → set of world indices; missing entries are
  // empty sets.
  std::vector<std::vector<std::set<int>>> content;

  int world_count() const { return static_cast<int>(worlds.size()); }
  int individual_count() const { return static_cast<int>(individuals.size()); }

  bool pred_holds(const std::string& name, int world, int individual) const;
  bool role_holds(const std::string& name, int world, int source, int target) const;
  const std::set<int>& content_at(int individual, int world) const;
};

// The constants a formula mentions, grouped by their model-theoretic role.
struct Signature {
  std::set<std::string> predicates;            // type e→t or e→s→t
  std::set<std::string> roles;                 // type e→e→t or e→e→s→t
  std::set<std::string> individual_constants;  // type e
  bool uses_cont = false;

  void merge(const Signature& other);
};

// Classifies every constant in the term; raises eval_error for a constant
// whose type fits none of the supported shapes (generalized-quantifier
// constants are interpreted builtin and need no extension).
Signature harvest_signature(const Term& term);

// Truth of a closed term of type t, or of type s→t applied to the given
// world. Extensional atoms are evaluated at that world too.
bool eval(const Model& model, int world, const Term& term,
          const DeterminerTable& determiners = DeterminerTable::defaults());

nlohmann::ordered_json model_to_json(const Model& model);

}  // namespace amrstlc
