#include "amrstlc/model.hpp"

#include <functional>
#include <memory>
#include <variant>

namespace amrstlc {

namespace {

const std::set<int> kEmptyWorldSet;

}  // namespace

bool Model::pred_holds(const std::string& name, int world, int individual) const {
  auto it = predicates.find(name);
  if (it == predicates.end()) return false;
  if (world < 0 || world >= static_cast<int>(it->second.size())) return false;
  return it->second[world].count(individual) > 0;
}

bool Model::role_holds(const std::string& name, int world, int source, int target) const {
  auto it = roles.find(name);
  if (it == roles.end()) return false;
  if (world < 0 || world >= static_cast<int>(it->second.size())) return false;
  return it->second[world].count({source, target}) > 0;
}

const std::set<int>& Model::content_at(int individual, int world) const {
  if (individual < 0 || individual >= static_cast<int>(content.size())) return kEmptyWorldSet;
  const auto& per_world = content[individual];
  if (world < 0 || world >= static_cast<int>(per_world.size())) return kEmptyWorldSet;
  return per_world[world];
}

void Signature::merge(const Signature& other) {
  predicates.insert(other.predicates.begin(), other.predicates.end());
  roles.insert(other.roles.begin(), other.roles.end());
  individual_constants.insert(other.individual_constants.begin(),
                              other.individual_constants.end());
  uses_cont = uses_cont || other.uses_cont;
}

namespace {

void harvest_rec(const Term& term, Signature& signature) {
  switch (term.kind()) {
    case Term::Kind::Const: {
      const Type& ty = term.type();
      if (ty == pred_type_ext() || ty == pred_type_int()) {
        signature.predicates.insert(term.name());
      } else if (ty == role_type_ext() || ty == role_type_int()) {
        signature.roles.insert(term.name());
      } else if (ty == cont_type()) {
        signature.uses_cont = true;
      } else if (ty == gq_type_ext() || ty == gq_type_int()) {
        // Interpreted builtin; needs no extension slot.
      } else if (ty == Type::e()) {
        signature.individual_constants.insert(term.name());
      } else {
        throw eval_error("constant '" + term.name() + "' has unsupported type " +
                         pretty(ty) +
                         "; models interpret unary predicates, binary roles, 'cont', "
                         "determiners, and individual constants");
      }
      return;
    }
    case Term::Kind::Var:
    case Term::Kind::Top:
      return;
    case Term::Kind::Lam:
      harvest_rec(term.body(), signature);
      return;
    case Term::Kind::App:
      harvest_rec(term.fun(), signature);
      harvest_rec(term.arg(), signature);
      return;
    case Term::Kind::And:
      harvest_rec(term.lhs(), signature);
      harvest_rec(term.rhs(), signature);
      return;
    case Term::Kind::Exists:
      harvest_rec(term.body(), signature);
      return;
  }
}

// Runtime denotations. Individuals and worlds are both indices; the type
// discipline of the term language keeps them apart.
struct Value;
using Func = std::function<Value(const Value&)>;

struct Value {
  std::variant<bool, int, Func> payload;
};

bool truth(const Value& value) {
  if (const bool* b = std::get_if<bool>(&value.payload)) return *b;
  throw eval_error("evaluation produced a non-truth value where a formula was expected");
}

int index_of(const Value& value) {
  if (const int* i = std::get_if<int>(&value.payload)) return *i;
  throw eval_error("evaluation produced a non-entity value where one was expected");
}

Value apply(const Value& fun, const Value& arg) {
  if (const Func* f = std::get_if<Func>(&fun.payload)) return (*f)(arg);
  throw eval_error("evaluation applied a non-function value");
}

struct EvalContext {
  const Model& model;
  int actual_world;
  const DeterminerTable& determiners;
};

using Env = std::map<std::string, Value>;

Value eval_rec(const EvalContext& ctx, const Env& env, const Term& term);

Value pred_value(const EvalContext& ctx, const std::string& name, bool intensional) {
  if (!intensional) {
    int world = ctx.actual_world;
    const Model* model = &ctx.model;
    return Value{Func([model, world, name](const Value& d) {
      return Value{model->pred_holds(name, world, index_of(d))};
    })};
  }
  const Model* model = &ctx.model;
  return Value{Func([model, name](const Value& d) {
    int individual = index_of(d);
    return Value{Func([model, name, individual](const Value& w) {
      return Value{model->pred_holds(name, index_of(w), individual)};
    })};
  })};
}

Value role_value(const EvalContext& ctx, const std::string& name, bool intensional) {
  const Model* model = &ctx.model;
  if (!intensional) {
    int world = ctx.actual_world;
    return Value{Func([model, world, name](const Value& a) {
      int source = index_of(a);
      return Value{Func([model, world, name, source](const Value& b) {
        return Value{model->role_holds(name, world, source, index_of(b))};
      })};
    })};
  }
  return Value{Func([model, name](const Value& a) {
    int source = index_of(a);
    return Value{Func([model, name, source](const Value& b) {
      int target = index_of(b);
      return Value{Func([model, name, source, target](const Value& w) {
        return Value{model->role_holds(name, index_of(w), source, target)};
      })};
    })};
  })};
}

Value cont_value(const EvalContext& ctx) {
  const Model* model = &ctx.model;
  return Value{Func([model](const Value& x) {
    int individual = index_of(x);
    return Value{Func([model, individual](const Value& p) {
      Func proposition = std::get<Func>(p.payload);
      return Value{Func([model, individual, proposition](const Value& w) {
        for (int compatible : model->content_at(individual, index_of(w))) {
          if (!truth(proposition(Value{compatible}))) return Value{false};
        }
        return Value{true};
      })};
    })};
  })};
}

bool quantifier_truth(const EvalContext& ctx, DetClass cls, int count, const Func& restrictor,
                      const Func& scope, const std::function<Value(const Func&, int)>& at) {
  int domain = ctx.model.individual_count();
  switch (cls) {
    case DetClass::Universal: {
      for (int d = 0; d < domain; ++d) {
        if (truth(at(restrictor, d)) && !truth(at(scope, d))) return false;
      }
      return true;
    }
    case DetClass::Existential: {
      for (int d = 0; d < domain; ++d) {
        if (truth(at(restrictor, d)) && truth(at(scope, d))) return true;
      }
      return false;
    }
    case DetClass::AtLeast: {
      int seen = 0;
      for (int d = 0; d < domain; ++d) {
        if (truth(at(restrictor, d)) && truth(at(scope, d)) && ++seen >= count) return true;
      }
      return false;
    }
  }
  return false;
}

Value quantifier_value(const EvalContext& ctx, const std::string& name, bool intensional) {
  auto spec = ctx.determiners.resolve(name);
  if (!spec) {
    throw eval_error("unknown determiner constant '" + name +
                     "'; add it to the determiner table to evaluate this formula");
  }
  DetClass cls = spec->cls;
  int count = spec->count;
  const EvalContext* context = &ctx;
  if (!intensional) {
    return Value{Func([context, cls, count](const Value& r) {
      Func restrictor = std::get<Func>(r.payload);
      return Value{Func([context, cls, count, restrictor](const Value& s) {
        Func scope = std::get<Func>(s.payload);
        auto at = [](const Func& f, int d) { return f(Value{d}); };
        return Value{quantifier_truth(*context, cls, count, restrictor, scope, at)};
      })};
    })};
  }
  return Value{Func([context, cls, count](const Value& r) {
    Func restrictor = std::get<Func>(r.payload);
    return Value{Func([context, cls, count, restrictor](const Value& s) {
      Func scope = std::get<Func>(s.payload);
      return Value{Func([context, cls, count, restrictor, scope](const Value& w) {
        int world = index_of(w);
        auto at = [world](const Func& f, int d) { return apply(f(Value{d}), Value{world}); };
        return Value{quantifier_truth(*context, cls, count, restrictor, scope, at)};
      })};
    })};
  })};
}

Value const_value(const EvalContext& ctx, const Term& term) {
  const Type& ty = term.type();
  const std::string& name = term.name();
  if (ty == pred_type_ext()) return pred_value(ctx, name, false);
  if (ty == pred_type_int()) return pred_value(ctx, name, true);
  if (ty == role_type_ext()) return role_value(ctx, name, false);
  if (ty == role_type_int()) return role_value(ctx, name, true);
  if (ty == cont_type()) return cont_value(ctx);
  if (ty == gq_type_ext()) return quantifier_value(ctx, name, false);
  if (ty == gq_type_int()) return quantifier_value(ctx, name, true);
  if (ty == Type::e()) {
    auto it = ctx.model.constants.find(name);
    if (it == ctx.model.constants.end()) {
      throw eval_error("individual constant '" + name + "' has no denotation in the model");
    }
    if (it->second < 0 || it->second >= ctx.model.individual_count()) {
      throw eval_error("individual constant '" + name + "' denotes an out-of-range individual");
    }
    return Value{it->second};
  }
  throw eval_error("constant '" + name + "' of type " + pretty(ty) +
                   " has no interpretation in finite models");
}

Value eval_rec(const EvalContext& ctx, const Env& env, const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Const:
      return const_value(ctx, term);
    case Term::Kind::Var: {
      auto it = env.find(term.name());
      if (it == env.end()) {
        throw eval_error("variable '" + term.name() +
                         "' is free; evaluation requires a closed formula");
      }
      return it->second;
    }
    case Term::Kind::Lam: {
      const EvalContext* context = &ctx;
      Env captured = env;
      Term body = term.body();
      std::string binder = term.binder();
      return Value{Func([context, captured, body, binder](const Value& argument) {
        Env extended = captured;
        extended[binder] = argument;
        return eval_rec(*context, extended, body);
      })};
    }
    case Term::Kind::App:
      return apply(eval_rec(ctx, env, term.fun()), eval_rec(ctx, env, term.arg()));
    case Term::Kind::And:
      return Value{truth(eval_rec(ctx, env, term.lhs())) &&
                   truth(eval_rec(ctx, env, term.rhs()))};
    case Term::Kind::Exists: {
      Env extended = env;
      for (int d = 0; d < ctx.model.individual_count(); ++d) {
        extended[term.binder()] = Value{d};
        if (truth(eval_rec(ctx, extended, term.body()))) return Value{true};
      }
      return Value{false};
    }
    case Term::Kind::Top:
      return Value{true};
  }
  throw eval_error("unreachable term kind");
}

}  // namespace

Signature harvest_signature(const Term& term) {
  Signature signature;
  harvest_rec(term, signature);
  return signature;
}

bool eval(const Model& model, int world, const Term& term, const DeterminerTable& determiners) {
  if (model.world_count() == 0 || model.individual_count() == 0) {
    throw eval_error("models require at least one world and one individual");
  }
  if (world < 0 || world >= model.world_count()) {
    throw eval_error("actual world index " + std::to_string(world) +
                     " is out of range for a model with " +
                     std::to_string(model.world_count()) + " world(s)");
  }
  EvalContext ctx{model, world, determiners};
  Type ty = type_of(term);
  if (ty == Type::t()) {
    return truth(eval_rec(ctx, {}, term));
  }
  if (ty == prop_type()) {
    return truth(apply(eval_rec(ctx, {}, term), Value{world}));
  }
  throw eval_error("evaluation expects a formula of type t or s->t, got " + pretty(ty));
}

nlohmann::ordered_json model_to_json(const Model& model) {
  nlohmann::ordered_json out;
  out["worlds"] = model.worlds;
  out["individuals"] = model.individuals;
  nlohmann::ordered_json constants(nlohmann::ordered_json::value_t::object);
  for (const auto& [name, index] : model.constants) {
    constants[name] = model.individuals.at(static_cast<std::size_t>(index));
  }
  out["constants"] = constants;
  nlohmann::ordered_json predicates(nlohmann::ordered_json::value_t::object);
  for (const auto& [name, per_world] : model.predicates) {
    nlohmann::ordered_json by_world(nlohmann::ordered_json::value_t::object);
    for (std::size_t w = 0; w < per_world.size(); ++w) {
      nlohmann::ordered_json members = nlohmann::ordered_json::array();
      for (int d : per_world[w]) members.push_back(model.individuals.at(static_cast<std::size_t>(d)));
      by_world[model.worlds.at(w)] = members;
    }
    predicates[name] = by_world;
  }
  out["predicates"] = predicates;
  nlohmann::ordered_json roles(nlohmann::ordered_json::value_t::object);
  for (const auto& [name, per_world] : model.roles) {
    nlohmann::ordered_json by_world(nlohmann::ordered_json::value_t::object);
    for (std::size_t w = 0; w < per_world.size(); ++w) {
      nlohmann::ordered_json members = nlohmann::ordered_json::array();
      for (const auto& [a, b] : per_world[w]) {
        members.push_back({model.individuals.at(static_cast<std::size_t>(a)),
                           model.individuals.at(static_cast<std::size_t>(b))});
      }
      by_world[model.worlds.at(w)] = members;
    }
    roles[name] = by_world;
  }
  out["roles"] = roles;
  nlohmann::ordered_json content(nlohmann::ordered_json::value_t::object);
  for (std::size_t d = 0; d < model.content.size(); ++d) {
    nlohmann::ordered_json by_world(nlohmann::ordered_json::value_t::object);
    for (std::size_t w = 0; w < model.content[d].size(); ++w) {
      nlohmann::ordered_json members = nlohmann::ordered_json::array();
      for (int compatible : model.content[d][w]) {
        members.push_back(model.worlds.at(static_cast<std::size_t>(compatible)));
      }
      by_world[model.worlds.at(w)] = members;
    }
    content[model.individuals.at(d)] = by_world;
  }
  out["content"] = content;
  return out;
}

}  // namespace amrstlc
