#ifndef AMRSTLC_TESTS_GEN_HPP
#define AMRSTLC_TESTS_GEN_HPP

// Seeded random generators for property tests: well-formed AMR graphs and
// well-typed lambda terms. Everything is deterministic given the engine
// state, so failures reproduce from the seed printed by the test.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "amrstlc/amr.hpp"
#include "amrstlc/stlc.hpp"

namespace amrstlc::gen {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// ---------------------------------------------------------------------------
// AMR graphs
// ---------------------------------------------------------------------------

struct GraphConfig {
  int max_depth = 4;
  int max_roles = 3;
  bool allow_inverse = true;    // emit :R-of roles (never with constant args)
  bool allow_var_refs = true;   // re-entrant mentions of earlier variables
  bool allow_constants = true;  // numbers, -, +, quoted strings
  bool allow_content = false;   // :content roles with instance arguments
};

struct GraphGenState {
  int next_var = 1;
  std::vector<std::string> declared;  // referenceable pool (pre-order)
};

inline std::string gen_concept(Rng& rng) {
  static const char* kConcepts[] = {"alpha",    "beta",     "gamma-01",
                                    "delta-02", "epsilon",  "zeta-01",
                                    "eta",      "theta-03", "iota"};
  return kConcepts[pick(rng, 0, 8)];
}

inline std::string gen_role_base(Rng& rng) {
  static const char* kRoles[] = {"ARG0", "ARG1", "ARG2", "ARG3",
                                 "mod",  "time", "manner"};
  return kRoles[pick(rng, 0, 6)];
}

inline AmrNode gen_constant_node(Rng& rng) {
  switch (pick(rng, 0, 3)) {
    case 0:
      return make_constant(std::to_string(pick(rng, 0, 99)));
    case 1:
      return make_constant("-");
    case 2:
      return make_constant("+");
    default:
      return make_constant("thing" + std::to_string(pick(rng, 0, 9)), true);
  }
}

inline AmrNode gen_graph_node(Rng& rng, const GraphConfig& cfg,
                              GraphGenState& state, int depth) {
  std::string var = "v" + std::to_string(state.next_var++);
  state.declared.push_back(var);
  std::vector<RoleAssignment> roles;
  int n_roles = depth >= cfg.max_depth ? 0 : pick(rng, 0, cfg.max_roles);
  for (int i = 0; i < n_roles; ++i) {
    RoleName role{gen_role_base(rng), false};
    bool want_content = cfg.allow_content && chance(rng, 0.2);
    if (want_content) {
      // :content demands an instance-assigned subgraph whose variables stay
      // private: snapshot the pool so nothing outside refers into it.
      std::size_t mark = state.declared.size();
      AmrNode sub = gen_graph_node(rng, cfg, state, depth + 1);
      state.declared.resize(mark);
      roles.push_back({RoleName{"content", false}, std::move(sub)});
      continue;
    }
    int shape = pick(rng, 0, 9);
    if (shape < 5 || depth + 1 < 2) {
      // Instance subgraph; maybe inverted.
      bool inv = cfg.allow_inverse && chance(rng, 0.25);
      role.inverted = inv;
      roles.push_back({role, gen_graph_node(rng, cfg, state, depth + 1)});
    } else if (shape < 8 && cfg.allow_var_refs && !state.declared.empty()) {
      role.inverted = cfg.allow_inverse && chance(rng, 0.15);
      const std::string& target =
          state.declared[static_cast<std::size_t>(pick(
              rng, 0, static_cast<int>(state.declared.size()) - 1))];
      roles.push_back({role, make_var_ref(target)});
    } else if (cfg.allow_constants) {
      roles.push_back({role, gen_constant_node(rng)});
    } else {
      roles.push_back({role, gen_graph_node(rng, cfg, state, depth + 1)});
    }
  }
  return make_instance(var, gen_concept(rng), std::move(roles));
}

inline AmrNode random_graph(Rng& rng, const GraphConfig& cfg = {}) {
  GraphGenState state;
  return gen_graph_node(rng, cfg, state, 0);
}

// ---------------------------------------------------------------------------
// Lambda terms
// ---------------------------------------------------------------------------

inline Type random_type(Rng& rng, int depth) {
  if (depth > 0 && chance(rng, 0.35)) {
    Type from = random_type(rng, depth - 1);
    Type to = random_type(rng, depth - 1);
    return Type::arrow(from, to);
  }
  switch (pick(rng, 0, 2)) {
    case 0:
      return Type::e();
    case 1:
      return Type::t();
    default:
      return Type::s();
  }
}

struct TermGenState {
  int next_const = 1;
  int next_var = 1;
  std::vector<std::pair<std::string, Type>> scope;
};

inline Term gen_term_of(Rng& rng, const Type& ty, TermGenState& state,
                        int depth);

inline Term gen_leaf_of(Rng& rng, const Type& ty, TermGenState& state) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < state.scope.size(); ++i) {
    if (state.scope[i].second == ty) hits.push_back(i);
  }
  if (!hits.empty() && chance(rng, 0.6)) {
    const auto& entry = hits[static_cast<std::size_t>(
        pick(rng, 0, static_cast<int>(hits.size()) - 1))];
    return Term::var(state.scope[entry].first, ty);
  }
  return Term::constant("k" + std::to_string(state.next_const++), ty);
}

inline Term gen_app_to(Rng& rng, const Type& ty, TermGenState& state,
                       int depth) {
  Type arg_ty = random_type(rng, 1);
  Term fun = gen_term_of(rng, Type::arrow(arg_ty, ty), state, depth - 1);
  Term arg = gen_term_of(rng, arg_ty, state, depth - 1);
  return Term::app(fun, arg);
}

inline Term gen_term_of(Rng& rng, const Type& ty, TermGenState& state,
                        int depth) {
  if (depth <= 0) {
    if (ty.kind() == Type::Kind::Arrow && chance(rng, 0.5)) {
      // A lambda is still cheap; otherwise fall through to a leaf.
      std::string binder = "x" + std::to_string(state.next_var++);
      state.scope.emplace_back(binder, ty.from());
      Term body = gen_leaf_of(rng, ty.to(), state);
      state.scope.pop_back();
      return Term::lam(binder, ty.from(), body);
    }
    return gen_leaf_of(rng, ty, state);
  }
  if (ty.kind() == Type::Kind::Arrow && chance(rng, 0.7)) {
    std::string binder = "x" + std::to_string(state.next_var++);
    state.scope.emplace_back(binder, ty.from());
    Term body = gen_term_of(rng, ty.to(), state, depth - 1);
    state.scope.pop_back();
    return Term::lam(binder, ty.from(), body);
  }
  if (ty == Type::t()) {
    switch (pick(rng, 0, 4)) {
      case 0:
        return Term::conj(gen_term_of(rng, Type::t(), state, depth - 1),
                          gen_term_of(rng, Type::t(), state, depth - 1));
      case 1: {
        std::string binder = "x" + std::to_string(state.next_var++);
        state.scope.emplace_back(binder, Type::e());
        Term body = gen_term_of(rng, Type::t(), state, depth - 1);
        state.scope.pop_back();
        return Term::exists(binder, body);
      }
      case 2:
        return Term::top();
      default:
        return gen_app_to(rng, ty, state, depth);
    }
  }
  if (chance(rng, 0.5)) return gen_app_to(rng, ty, state, depth);
  return gen_leaf_of(rng, ty, state);
}

inline Term random_term(Rng& rng, int depth = 4) {
  TermGenState state;
  Type ty = chance(rng, 0.5) ? Type::t() : random_type(rng, 2);
  return gen_term_of(rng, ty, state, depth);
}

}  // namespace amrstlc::gen

#endif  // AMRSTLC_TESTS_GEN_HPP
