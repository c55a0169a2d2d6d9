#include "amrstlc/entail.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

// Sizes beyond the enumeration cap are decided by grounding both formulas
// over the finite size into a boolean circuit whose atoms are the extension
// bits of the would-be model (plus one outer loop over individual-constant
// denotations), then searching for an assignment that satisfies
// premise ∧ ¬conclusion with chronological backtracking: three-valued
// evaluation of the circuit either decides the root or yields the first
// blocking atom, which is branched false-first. A satisfying assignment is
// read back as a counterexample model (unassigned atoms default to empty);
// exhausting the search proves no counterexample of that exact size exists.

namespace amrstlc {

namespace {

// ---------------------------------------------------------------------------
// Atom numbering for one exact size.

struct AtomSpace {
  int worlds = 0;
  int individuals = 0;
  std::vector<std::string> predicates;  // sorted
  std::vector<std::string> roles;       // sorted
  std::map<std::string, int> predicate_index;
  std::map<std::string, int> role_index;
  bool uses_cont = false;
  int role_base = 0;
  int cont_base = 0;
  int total = 0;

  AtomSpace(const Signature& signature, int w, int i) : worlds(w), individuals(i) {
    predicates.assign(signature.predicates.begin(), signature.predicates.end());
    roles.assign(signature.roles.begin(), signature.roles.end());
    for (std::size_t k = 0; k < predicates.size(); ++k) {
      predicate_index[predicates[k]] = static_cast<int>(k);
    }
    for (std::size_t k = 0; k < roles.size(); ++k) role_index[roles[k]] = static_cast<int>(k);
    uses_cont = signature.uses_cont;
    role_base = static_cast<int>(predicates.size()) * worlds * individuals;
    cont_base = role_base + static_cast<int>(roles.size()) * worlds * individuals * individuals;
    total = cont_base + (uses_cont ? individuals * worlds * worlds : 0);
  }

  int pred_atom(const std::string& name, int w, int d) const {
    return predicate_index.at(name) * worlds * individuals + w * individuals + d;
  }
  int role_atom(const std::string& name, int w, int a, int b) const {
    return role_base + role_index.at(name) * worlds * individuals * individuals +
           (w * individuals + a) * individuals + b;
  }
  int cont_atom(int d, int w, int member) const {
    return cont_base + (d * worlds + w) * worlds + member;
  }
};

// ---------------------------------------------------------------------------
// Boolean circuits with constant folding.

enum class NodeKind { False, True, Atom, Not, And, Or };

struct CircuitNode {
  NodeKind kind = NodeKind::False;
  int atom = -1;
  std::vector<int> children;
};

constexpr int kFalse = 0;
constexpr int kTrue = 1;

struct Circuit {
  std::vector<CircuitNode> nodes;

  Circuit() {
    nodes.push_back({NodeKind::False, -1, {}});
    nodes.push_back({NodeKind::True, -1, {}});
  }

  int add(CircuitNode node) {
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
  }

  int mk_atom(int atom) { return add({NodeKind::Atom, atom, {}}); }

  int mk_not(int child) {
    if (child == kFalse) return kTrue;
    if (child == kTrue) return kFalse;
    return add({NodeKind::Not, -1, {child}});
  }

  int mk_and(std::vector<int> children) {
    std::vector<int> kept;
    for (int child : children) {
      if (child == kFalse) return kFalse;
      if (child != kTrue) kept.push_back(child);
    }
    if (kept.empty()) return kTrue;
    if (kept.size() == 1) return kept.front();
    return add({NodeKind::And, -1, std::move(kept)});
  }

  int mk_or(std::vector<int> children) {
    std::vector<int> kept;
    for (int child : children) {
      if (child == kTrue) return kTrue;
      if (child != kFalse) kept.push_back(child);
    }
    if (kept.empty()) return kFalse;
    if (kept.size() == 1) return kept.front();
    return add({NodeKind::Or, -1, std::move(kept)});
  }
};

// ---------------------------------------------------------------------------
// Grounding normalized formulas into circuits.

using GroundEnv = std::map<std::string, int>;

struct Grounder {
  Circuit& circuit;
  const AtomSpace& atoms;
  const DeterminerTable& determiners;
  const std::map<std::string, int>& constant_assignment;

  int individual_of(const Term& term, const GroundEnv& env) const {
    if (term.kind() == Term::Kind::Var) {
      auto it = env.find(term.name());
      if (it != env.end()) return it->second;
      throw eval_error("the bounded entailment solver met the free variable '" + term.name() +
                       "'");
    }
    if (term.kind() == Term::Kind::Const && term.type() == Type::e()) {
      return constant_assignment.at(term.name());
    }
    throw eval_error("the bounded entailment solver cannot ground this entity argument");
  }

  int world_of(const Term& term, const GroundEnv& env) const {
    if (term.kind() == Term::Kind::Var) {
      auto it = env.find(term.name());
      if (it != env.end()) return it->second;
    }
    throw eval_error("the bounded entailment solver cannot ground this world argument");
  }

  // Grounds the application of an e→t or e→s→t term to one individual.
  int property(const Term& fun, int individual, int world, GroundEnv env) {
    if (fun.kind() == Term::Kind::Lam) {
      env[fun.binder()] = individual;
      return formula(fun.body(), world, env);
    }
    if (fun.kind() == Term::Kind::Const &&
        (fun.type() == pred_type_ext() || fun.type() == pred_type_int())) {
      return circuit.mk_atom(atoms.pred_atom(fun.name(), world, individual));
    }
    throw eval_error("the bounded entailment solver cannot ground this quantifier argument");
  }

  int quantifier(DetClass cls, int count, const Term& restrictor, const Term& body, int world,
                 const GroundEnv& env) {
    switch (cls) {
      case DetClass::Universal: {
        std::vector<int> conjuncts;
        for (int d = 0; d < atoms.individuals; ++d) {
          conjuncts.push_back(circuit.mk_or(
              {circuit.mk_not(property(restrictor, d, world, env)), property(body, d, world, env)}));
        }
        return circuit.mk_and(std::move(conjuncts));
      }
      case DetClass::Existential: {
        std::vector<int> disjuncts;
        for (int d = 0; d < atoms.individuals; ++d) {
          disjuncts.push_back(circuit.mk_and(
              {property(restrictor, d, world, env), property(body, d, world, env)}));
        }
        return circuit.mk_or(std::move(disjuncts));
      }
      case DetClass::AtLeast: {
        if (count > atoms.individuals) return kFalse;
        // One disjunct per size-`count` subset of the domain.
        std::vector<int> disjuncts;
        std::vector<int> chosen;
        std::vector<int> member_terms;
        std::function<void(int)> choose = [&](int from) {
          if (static_cast<int>(chosen.size()) == count) {
            std::vector<int> conjuncts;
            for (int d : chosen) {
              conjuncts.push_back(property(restrictor, d, world, env));
              conjuncts.push_back(property(body, d, world, env));
            }
            disjuncts.push_back(circuit.mk_and(std::move(conjuncts)));
            return;
          }
          for (int d = from; d < atoms.individuals; ++d) {
            chosen.push_back(d);
            choose(d + 1);
            chosen.pop_back();
          }
        };
        choose(0);
        return circuit.mk_or(std::move(disjuncts));
      }
    }
    return kFalse;
  }

  int spine(const Term& term, bool has_implicit_world, int world, const GroundEnv& env) {
    std::vector<Term> args;
    Term head = term;
    while (head.kind() == Term::Kind::App) {
      args.push_back(head.arg());
      head = head.fun();
    }
    std::reverse(args.begin(), args.end());
    if (head.kind() != Term::Kind::Const) {
      throw eval_error("the bounded entailment solver cannot ground this formula shape");
    }
    const Type& ty = head.type();
    // Intensional heads inside a type-t spine carry an explicit final world
    // argument; inside an s→t spine the evaluation world is implicit.
    auto world_at = [&](std::size_t expected_args) {
      if (has_implicit_world) {
        if (args.size() != expected_args) {
          throw eval_error("the bounded entailment solver cannot ground this formula shape");
        }
        return world;
      }
      if (args.size() != expected_args + 1) {
        throw eval_error("the bounded entailment solver cannot ground this formula shape");
      }
      return world_of(args.back(), env);
    };
    if (ty == pred_type_ext()) {
      if (args.size() != 1) {
        throw eval_error("the bounded entailment solver cannot ground this formula shape");
      }
      return circuit.mk_atom(atoms.pred_atom(head.name(), world, individual_of(args[0], env)));
    }
    if (ty == role_type_ext()) {
      if (args.size() != 2) {
        throw eval_error("the bounded entailment solver cannot ground this formula shape");
      }
      return circuit.mk_atom(atoms.role_atom(head.name(), world, individual_of(args[0], env),
                                             individual_of(args[1], env)));
    }
    if (ty == pred_type_int()) {
      int w = world_at(1);
      return circuit.mk_atom(atoms.pred_atom(head.name(), w, individual_of(args[0], env)));
    }
    if (ty == role_type_int()) {
      int w = world_at(2);
      return circuit.mk_atom(atoms.role_atom(head.name(), w, individual_of(args[0], env),
                                             individual_of(args[1], env)));
    }
    if (ty == cont_type()) {
      int w = world_at(2);
      int x = individual_of(args[0], env);
      std::vector<int> conjuncts;
      for (int member = 0; member < atoms.worlds; ++member) {
        conjuncts.push_back(circuit.mk_or({circuit.mk_not(circuit.mk_atom(atoms.cont_atom(x, w, member))),
                                           formula(args[1], member, env)}));
      }
      return circuit.mk_and(std::move(conjuncts));
    }
    if (ty == gq_type_ext() || ty == gq_type_int()) {
      int w = ty == gq_type_ext() ? [&] {
        if (args.size() != 2) {
          throw eval_error("the bounded entailment solver cannot ground this formula shape");
        }
        return world;
      }()
                                  : world_at(2);
      auto spec = determiners.resolve(head.name());
      if (!spec) {
        throw eval_error("unknown determiner constant '" + head.name() + "'");
      }
      return quantifier(spec->cls, spec->count, args[0], args[1], w, env);
    }
    throw eval_error("the bounded entailment solver cannot ground an application of '" +
                     head.name() + "'");
  }

  // Grounds a term of type t, or of type s→t evaluated at `world`.
  int formula(const Term& term, int world, GroundEnv env) {
    if (type_of(term) == Type::arrow(Type::s(), Type::t())) {
      if (term.kind() == Term::Kind::Lam) {
        env[term.binder()] = world;
        return formula(term.body(), world, env);
      }
      return spine(term, /*has_implicit_world=*/true, world, env);
    }
    switch (term.kind()) {
      case Term::Kind::Top:
        return kTrue;
      case Term::Kind::And:
        return circuit.mk_and({formula(term.lhs(), world, env), formula(term.rhs(), world, env)});
      case Term::Kind::Exists: {
        std::vector<int> disjuncts;
        for (int d = 0; d < atoms.individuals; ++d) {
          env[term.binder()] = d;
          disjuncts.push_back(formula(term.body(), world, env));
        }
        return circuit.mk_or(std::move(disjuncts));
      }
      case Term::Kind::App:
        return spine(term, /*has_implicit_world=*/false, world, env);
      default:
        throw eval_error("the bounded entailment solver cannot ground this formula shape");
    }
  }
};

// ---------------------------------------------------------------------------
// Three-valued evaluation + chronological backtracking.

constexpr std::int8_t kValFalse = 0;
constexpr std::int8_t kValTrue = 1;
constexpr std::int8_t kValUnknown = 2;

struct Solver {
  const Circuit& circuit;
  int root;
  std::vector<std::int8_t> assignment;  // per atom

  struct Outcome {
    std::int8_t value;
    int blocking_atom;  // first undetermined atom, when value is unknown
  };

  Outcome evaluate(int node) const {
    const CircuitNode& n = circuit.nodes[static_cast<std::size_t>(node)];
    switch (n.kind) {
      case NodeKind::False:
        return {kValFalse, -1};
      case NodeKind::True:
        return {kValTrue, -1};
      case NodeKind::Atom: {
        std::int8_t v = assignment[static_cast<std::size_t>(n.atom)];
        return v == kValUnknown ? Outcome{kValUnknown, n.atom} : Outcome{v, -1};
      }
      case NodeKind::Not: {
        Outcome child = evaluate(n.children[0]);
        if (child.value == kValUnknown) return child;
        return {child.value == kValTrue ? kValFalse : kValTrue, -1};
      }
      case NodeKind::And: {
        int blocker = -1;
        for (int child : n.children) {
          Outcome c = evaluate(child);
          if (c.value == kValFalse) return {kValFalse, -1};
          if (c.value == kValUnknown && blocker == -1) blocker = c.blocking_atom;
        }
        return blocker == -1 ? Outcome{kValTrue, -1} : Outcome{kValUnknown, blocker};
      }
      case NodeKind::Or: {
        int blocker = -1;
        for (int child : n.children) {
          Outcome c = evaluate(child);
          if (c.value == kValTrue) return {kValTrue, -1};
          if (c.value == kValUnknown && blocker == -1) blocker = c.blocking_atom;
        }
        return blocker == -1 ? Outcome{kValFalse, -1} : Outcome{kValUnknown, blocker};
      }
    }
    return {kValFalse, -1};
  }

  bool satisfiable() {
    Outcome outcome = evaluate(root);
    if (outcome.value == kValTrue) return true;
    if (outcome.value == kValFalse) return false;
    int atom = outcome.blocking_atom;
    for (std::int8_t candidate : {kValFalse, kValTrue}) {
      assignment[static_cast<std::size_t>(atom)] = candidate;
      if (satisfiable()) return true;
    }
    assignment[static_cast<std::size_t>(atom)] = kValUnknown;
    return false;
  }
};

Model model_from_assignment(const AtomSpace& atoms, const std::vector<std::int8_t>& assignment,
                            const std::map<std::string, int>& constant_assignment) {
  Model model;
  for (int w = 1; w <= atoms.worlds; ++w) model.worlds.push_back("w" + std::to_string(w));
  for (int d = 1; d <= atoms.individuals; ++d) model.individuals.push_back("i" + std::to_string(d));
  model.constants = constant_assignment;
  for (const std::string& name : atoms.predicates) {
    auto& per_world = model.predicates[name];
    per_world.assign(static_cast<std::size_t>(atoms.worlds), {});
    for (int w = 0; w < atoms.worlds; ++w) {
      for (int d = 0; d < atoms.individuals; ++d) {
        if (assignment[static_cast<std::size_t>(atoms.pred_atom(name, w, d))] == kValTrue) {
          per_world[static_cast<std::size_t>(w)].insert(d);
        }
      }
    }
  }
  for (const std::string& name : atoms.roles) {
    auto& per_world = model.roles[name];
    per_world.assign(static_cast<std::size_t>(atoms.worlds), {});
    for (int w = 0; w < atoms.worlds; ++w) {
      for (int a = 0; a < atoms.individuals; ++a) {
        for (int b = 0; b < atoms.individuals; ++b) {
          if (assignment[static_cast<std::size_t>(atoms.role_atom(name, w, a, b))] == kValTrue) {
            per_world[static_cast<std::size_t>(w)].insert({a, b});
          }
        }
      }
    }
  }
  if (atoms.uses_cont) {
    model.content.assign(static_cast<std::size_t>(atoms.individuals),
                         std::vector<std::set<int>>(static_cast<std::size_t>(atoms.worlds)));
    for (int d = 0; d < atoms.individuals; ++d) {
      for (int w = 0; w < atoms.worlds; ++w) {
        for (int member = 0; member < atoms.worlds; ++member) {
          if (assignment[static_cast<std::size_t>(atoms.cont_atom(d, w, member))] == kValTrue) {
            model.content[static_cast<std::size_t>(d)][static_cast<std::size_t>(w)].insert(member);
          }
        }
      }
    }
  }
  return model;
}

std::optional<Model> solve_size(const Term& premise, const Term& conclusion,
                                const Signature& signature, int worlds, int individuals,
                                int actual_world, const DeterminerTable& determiners) {
  AtomSpace atoms(signature, worlds, individuals);
  std::vector<std::string> constant_names(signature.individual_constants.begin(),
                                          signature.individual_constants.end());
  std::vector<int> digits(constant_names.size(), 0);
  while (true) {
    std::map<std::string, int> constant_assignment;
    for (std::size_t k = 0; k < constant_names.size(); ++k) {
      constant_assignment[constant_names[k]] = digits[k];
    }
    Circuit circuit;
    Grounder grounder{circuit, atoms, determiners, constant_assignment};
    int grounded_premise = grounder.formula(premise, actual_world, {});
    int grounded_conclusion = grounder.formula(conclusion, actual_world, {});
    int root = circuit.mk_and({grounded_premise, circuit.mk_not(grounded_conclusion)});
    Solver solver{circuit, root, std::vector<std::int8_t>(
                                     static_cast<std::size_t>(atoms.total), kValUnknown)};
    if (solver.satisfiable()) {
      return model_from_assignment(atoms, solver.assignment, constant_assignment);
    }
    // Advance the constant odometer, last name least significant.
    std::size_t k = constant_names.size();
    while (k > 0) {
      --k;
      if (++digits[k] < individuals) break;
      digits[k] = 0;
      if (k == 0) return std::nullopt;
    }
    if (constant_names.empty()) return std::nullopt;
  }
}

// Exhaustive scan over one exact size driven by the grounded circuit: each
// odometer index supplies the atom bits directly, so per-model evaluation is
// allocation-free. Only usable when both formulas ground; callers fall back
// to the generic evaluator otherwise. The returned index agrees with the
// model_at odometer because the atom order mirrors its slot order.
std::optional<std::uint64_t> scan_grounded(const Term& premise, const Term& conclusion,
                                           const Signature& signature, int worlds,
                                           int individuals, int actual_world,
                                           const DeterminerTable& determiners) {
  AtomSpace atoms(signature, worlds, individuals);
  const int bits = atoms.total;
  std::vector<std::string> constant_names(signature.individual_constants.begin(),
                                          signature.individual_constants.end());
  std::uint64_t blocks = 1;
  for (std::size_t k = 0; k < constant_names.size(); ++k) {
    blocks *= static_cast<std::uint64_t>(individuals);
  }
  const std::uint64_t per_block = 1ull << bits;
  for (std::uint64_t block = 0; block < blocks; ++block) {
    std::map<std::string, int> constant_assignment;
    std::uint64_t digits = block;
    for (auto it = constant_names.rbegin(); it != constant_names.rend(); ++it) {
      constant_assignment[*it] = static_cast<int>(digits % static_cast<std::uint64_t>(individuals));
      digits /= static_cast<std::uint64_t>(individuals);
    }
    Circuit circuit;
    Grounder grounder{circuit, atoms, determiners, constant_assignment};
    int grounded_premise = grounder.formula(premise, actual_world, {});
    int grounded_conclusion = grounder.formula(conclusion, actual_world, {});
    int root = circuit.mk_and({grounded_premise, circuit.mk_not(grounded_conclusion)});
    if (root == kFalse) continue;
    if (root == kTrue) return block * per_block;
    std::uint64_t best = per_block;
#if defined(AMRSTLC_HAVE_OPENMP)
#pragma omp parallel
    {
      Solver probe{circuit, root, std::vector<std::int8_t>(static_cast<std::size_t>(bits))};
      std::uint64_t local_best = per_block;
#pragma omp for schedule(static) nowait
      for (long long index = 0; index < static_cast<long long>(per_block); ++index) {
        std::uint64_t i = static_cast<std::uint64_t>(index);
        if (i >= local_best) continue;
        for (int a = 0; a < bits; ++a) {
          probe.assignment[static_cast<std::size_t>(a)] =
              static_cast<std::int8_t>((i >> (bits - 1 - a)) & 1ull);
        }
        if (probe.evaluate(root).value == kValTrue) local_best = i;
      }
#pragma omp critical
      {
        if (local_best < best) best = local_best;
      }
    }
#else
    Solver probe{circuit, root, std::vector<std::int8_t>(static_cast<std::size_t>(bits))};
    for (std::uint64_t i = 0; i < per_block; ++i) {
      for (int a = 0; a < bits; ++a) {
        probe.assignment[static_cast<std::size_t>(a)] =
            static_cast<std::int8_t>((i >> (bits - 1 - a)) & 1ull);
      }
      if (probe.evaluate(root).value == kValTrue) {
        best = i;
        break;
      }
    }
#endif
    if (best < per_block) return block * per_block + best;
  }
  return std::nullopt;
}

void validate_determiner_names(const Term& term, const DeterminerTable& determiners) {
  switch (term.kind()) {
    case Term::Kind::Const:
      if ((term.type() == gq_type_ext() || term.type() == gq_type_int()) &&
          !determiners.resolve(term.name())) {
        throw eval_error("unknown determiner constant '" + term.name() +
                         "'; add it to the determiner table to evaluate this formula");
      }
      return;
    case Term::Kind::Lam:
      validate_determiner_names(term.body(), determiners);
      return;
    case Term::Kind::App:
      validate_determiner_names(term.fun(), determiners);
      validate_determiner_names(term.arg(), determiners);
      return;
    case Term::Kind::And:
      validate_determiner_names(term.lhs(), determiners);
      validate_determiner_names(term.rhs(), determiners);
      return;
    case Term::Kind::Exists:
      validate_determiner_names(term.body(), determiners);
      return;
    default:
      return;
  }
}

}  // namespace

Verdict entails(const Term& premise, const Term& conclusion, const EnumerationBound& bound,
                int actual_world, const DeterminerTable& determiners) {
  if (bound.max_worlds < 1 || bound.max_individuals < 1) {
    throw eval_error("the entailment bound must allow at least one world and one individual");
  }
  Type premise_type = type_of(premise);
  Type conclusion_type = type_of(conclusion);
  if (!(premise_type == conclusion_type)) {
    throw eval_error("premise and conclusion must share a type; got " + pretty(premise_type) +
                     " and " + pretty(conclusion_type));
  }
  if (!(premise_type == Type::t()) && !(premise_type == prop_type())) {
    throw eval_error("entailment expects formulas of type t or s->t, got " +
                     pretty(premise_type));
  }
  if (actual_world < 0 || actual_world >= bound.max_worlds) {
    throw eval_error("the actual world index " + std::to_string(actual_world) +
                     " does not exist within a bound of " + std::to_string(bound.max_worlds) +
                     " world(s)");
  }
  Term p = beta_normalize(premise);
  Term c = beta_normalize(conclusion);
  for (const Term& side : {p, c}) {
    auto free = free_vars(side);
    if (!free.empty()) {
      throw eval_error("entailment requires closed formulas; '" + *free.begin() + "' is free");
    }
    validate_determiner_names(side, determiners);
  }
  Signature signature = harvest_signature(p);
  signature.merge(harvest_signature(c));

  for (int worlds = 1; worlds <= bound.max_worlds; ++worlds) {
    if (actual_world >= worlds) continue;  // the actual world must exist
    for (int individuals = 1; individuals <= bound.max_individuals; ++individuals) {
      std::uint64_t count = model_count(signature, worlds, individuals);
      if (count <= bound.enumeration_cap) {
        std::optional<std::uint64_t> hit;
        bool grounded = true;
        try {
          hit = scan_grounded(p, c, signature, worlds, individuals, actual_world, determiners);
        } catch (const eval_error&) {
          grounded = false;  // shape outside the grounder; use the generic evaluator
        }
        if (!grounded) {
          auto is_counterexample = [&](const Model& model) {
            return eval(model, actual_world, p, determiners) &&
                   !eval(model, actual_world, c, determiners);
          };
          hit = find_first_model_parallel(signature, worlds, individuals, is_counterexample,
                                          bound.enumeration_cap);
        }
        if (hit) {
          Counterexample counterexample{model_at(signature, worlds, individuals, *hit), worlds,
                                        individuals, *hit};
          return {false, std::move(counterexample)};
        }
      } else {
        auto model = solve_size(p, c, signature, worlds, individuals, actual_world, determiners);
        if (model) {
          Counterexample counterexample{std::move(*model), worlds, individuals, std::nullopt};
          return {false, std::move(counterexample)};
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace amrstlc
