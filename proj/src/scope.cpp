#include "amrstlc/scope.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "amrstlc/penman.hpp"
#include "json.hpp"

namespace amrstlc {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

// --- regime-indexed builders -------------------------------------------------

Type pred_ty(Regime r) {
  return r == Regime::Extensional ? pred_type_ext() : pred_type_int();
}
Type role_ty(Regime r) {
  return r == Regime::Extensional ? role_type_ext() : role_type_int();
}
Type gq_ty(Regime r) {
  return r == Regime::Extensional ? gq_type_ext() : gq_type_int();
}

Term conj_r(Regime r, const Term& a, const Term& b) {
  return r == Regime::Extensional ? Term::conj(a, b) : and_w(a, b);
}

Term exists_r(Regime r, const std::string& var, const Term& body) {
  return r == Regime::Extensional ? Term::exists(var, body) : exists_w(var, body);
}

Term close_r(Regime r, const Term& term, const std::vector<std::string>& vars) {
  return r == Regime::Extensional ? close_v1(term, vars) : close_int(term, vars);
}

Term top_r(Regime r) {
  return r == Regime::Extensional ? Term::top()
                                  : Term::lam("w", Type::s(), Term::top());
}

bool is_trivially_true(const Term& term) {
  if (term.kind() == Term::Kind::Top) return true;
  return term.kind() == Term::Kind::Lam &&
         term.body().kind() == Term::Kind::Top;
}

Term conj_smart(Regime r, const Term& a, const Term& b) {
  if (is_trivially_true(a)) return b;
  if (is_trivially_true(b)) return a;
  return conj_r(r, a, b);
}

// --- graph helpers ------------------------------------------------------------

bool is_scope_arg_role(const RoleName& role) {
  if (role.inverted) return false;
  const std::string& base = role.base;
  if (base.size() < 4 || base.compare(0, 3, "ARG") != 0) return false;
  return std::all_of(base.begin() + 3, base.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

bool is_content_role(const RoleName& role) {
  return !role.inverted && role.base == "content";
}

bool is_quant_role(const RoleName& role) {
  return !role.inverted && role.base == "quant";
}

Term argument_term(const AmrNode& arg) {
  if (arg.is_constant()) {
    return Term::constant(constant_symbol(arg.as_constant()), Type::e());
  }
  if (arg.is_var_ref()) return Term::var(arg.as_var_ref().var, Type::e());
  return Term::var(arg.as_instance().var, Type::e());
}

void collect_scope_targets(const AmrNode& node, std::set<std::string>& out) {
  if (!node.is_instance()) return;
  const Instance& inst = node.as_instance();
  for (const auto& role : inst.roles) {
    if (inst.concept_name == "scope" && is_scope_arg_role(role.role) &&
        role.arg.is_var_ref()) {
      out.insert(role.arg.as_var_ref().var);
    }
    collect_scope_targets(role.arg, out);
  }
}

struct Ctx {
  Regime regime;
  const DeterminerTable* determiners;
  std::set<std::string> scope_targets;
};

StoredValue visit(const AmrNode& node, const Ctx& ctx);

StoredValue visit_scope_node(const Instance& inst, const Ctx& ctx) {
  const AmrNode* pred = nullptr;
  std::vector<std::pair<int, std::string>> positions;
  for (const auto& role : inst.roles) {
    if (role.role.inverted) {
      throw translate_error("inverse role ':" + role.role.label() +
                            "' must be normalized away before translation");
    }
    if (role.role.base == "pred") {
      if (pred) {
        throw translate_error("scope node '" + inst.var +
                              "' has more than one ':pred'");
      }
      if (!role.arg.is_instance()) {
        throw translate_error("':pred' of scope node '" + inst.var +
                              "' must be a subgraph");
      }
      pred = &role.arg;
    } else if (is_scope_arg_role(role.role)) {
      if (!role.arg.is_var_ref()) {
        throw translate_error("':" + role.role.base + "' of scope node '" +
                              inst.var + "' must be a bare variable reference");
      }
      positions.emplace_back(std::stoi(role.role.base.substr(3)),
                             role.arg.as_var_ref().var);
    } else {
      throw translate_error("scope node '" + inst.var +
                            "' admits only ':ARGi' and ':pred' roles, found ':" +
                            role.role.label() + "'");
    }
  }
  if (!pred) {
    throw translate_error("scope node '" + inst.var + "' is missing ':pred'");
  }
  std::sort(positions.begin(), positions.end());
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k].first != static_cast<int>(k)) {
      throw translate_error("scope node '" + inst.var +
                            "': :ARG indices must run 0..n-1 without gaps or "
                            "repeats");
    }
  }

  StoredValue value = close_v2(visit(*pred, ctx), ctx.regime);
  for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
    value = pop(it->second, value, ctx.regime);
  }
  return value;
}

StoredValue visit_instance(const Instance& inst, const Ctx& ctx) {
  // Determiner resolution: an explicit :quant, or the implicit existential
  // granted to scope-node targets that lack one.
  const AmrNode* quant_arg = nullptr;
  std::size_t quant_count = 0;
  std::size_t other_roles = 0;
  for (const auto& role : inst.roles) {
    if (is_quant_role(role.role)) {
      ++quant_count;
      quant_arg = &role.arg;
    } else {
      ++other_roles;
    }
  }
  if (quant_count > 1) {
    throw translate_error("'" + inst.var + "' carries more than one ':quant'");
  }
  std::optional<std::pair<std::string, DeterminerSpec>> det;
  if (quant_count == 1) {
    if (!quant_arg->is_constant() || quant_arg->as_constant().quoted) {
      throw translate_error("':quant' of '" + inst.var +
                            "' must be a bare determiner constant");
    }
    const std::string name = quant_arg->as_constant().text;
    const auto spec = ctx.determiners->resolve(name);
    if (!spec) {
      throw translate_error("unknown determiner '" + name + "' for ':quant' of '" +
                            inst.var + "'");
    }
    det.emplace(name, *spec);
  } else if (ctx.scope_targets.count(inst.var)) {
    const auto spec = ctx.determiners->resolve("some");
    det.emplace("some", spec.value_or(DeterminerSpec{DetClass::Existential, 0}));
  }

  const Term self = Term::var(inst.var, Type::e());
  Term body = Term::app(Term::constant(inst.concept_name, pred_ty(ctx.regime)), self);
  std::vector<StoreEntry> collected;
  std::vector<std::string> sub_pending;
  auto add_pending = [&](const std::string& v) {
    if (std::find(sub_pending.begin(), sub_pending.end(), v) == sub_pending.end()) {
      sub_pending.push_back(v);
    }
  };

  for (const auto& role : inst.roles) {
    if (role.role.inverted) {
      throw translate_error("inverse role ':" + role.role.label() +
                            "' must be normalized away before translation");
    }
    if (is_quant_role(role.role)) continue;

    if (ctx.regime == Regime::Intensional && is_content_role(role.role)) {
      if (!role.arg.is_instance()) {
        throw translate_error(
            "':content' of '" + inst.var + "' embeds " +
            (role.arg.is_var_ref()
                 ? "the bare variable reference '" + role.arg.as_var_ref().var + "'"
                 : "the constant '" + constant_symbol(role.arg.as_constant()) + "'") +
            "; propositional content must be an instance-assigned subgraph");
      }
      StoredValue sub = close_v2(visit(role.arg, ctx), ctx.regime);
      // Quantifiers no scope node claims take narrowest scope here, inside
      // the content; claimed ones pass up to be popped at their scope node.
      while (true) {
        const auto unclaimed =
            std::find_if(sub.store.begin(), sub.store.end(), [&](const StoreEntry& e) {
              return ctx.scope_targets.count(e.var) == 0;
            });
        if (unclaimed == sub.store.end()) break;
        sub = pop(unclaimed->var, sub, ctx.regime);
      }
      collected.insert(collected.end(), sub.store.begin(), sub.store.end());
      const Term cont = Term::constant("cont", cont_type());
      body = conj_smart(ctx.regime, body,
                        Term::app(Term::app(cont, self), sub.ordinary));
      continue;
    }

    if (role.arg.is_instance() && role.arg.as_instance().concept_name == "scope") {
      throw translate_error("scope node '" + role.arg.as_instance().var +
                            "' cannot be the argument of ordinary role ':" +
                            role.role.label() +
                            "'; embed it under ':content' or make it the root");
    }

    const Term relation = Term::constant(role.role.base, role_ty(ctx.regime));
    body = conj_smart(ctx.regime, body,
                      Term::app(Term::app(relation, self), argument_term(role.arg)));
    if (role.arg.is_instance()) {
      StoredValue sub = visit(role.arg, ctx);
      body = conj_smart(ctx.regime, body, sub.ordinary);
      collected.insert(collected.end(), sub.store.begin(), sub.store.end());
      for (const std::string& v : sub.pending) add_pending(v);
    }
  }

  if (!det) {
    std::vector<std::string> pending{inst.var};
    for (const std::string& v : sub_pending) {
      if (v != inst.var) pending.push_back(v);
    }
    return {std::move(collected), body, std::move(pending)};
  }

  // Quantified instance: the concept and any role material move into the
  // determiner's restrictor; in place the node asserts nothing.
  std::set<std::string> keys;
  for (const StoreEntry& entry : collected) keys.insert(entry.var);
  if (keys.count(inst.var)) {
    throw translate_error("variable '" + inst.var + "' is stored twice");
  }
  Term restrictor = Term::constant(inst.concept_name, pred_ty(ctx.regime));
  if (other_roles > 0) {
    std::vector<std::string> close_inside;
    for (const std::string& v : sub_pending) {
      if (v != inst.var && !keys.count(v)) close_inside.push_back(v);
    }
    restrictor =
        Term::lam(inst.var, Type::e(), close_r(ctx.regime, body, close_inside));
  }
  const Term determiner = Term::constant(det->first, gq_ty(ctx.regime));
  collected.push_back(
      StoreEntry{inst.var, Term::app(determiner, restrictor), det->second.cls});

  std::vector<std::string> pending{inst.var};
  for (const std::string& v : sub_pending) {
    if (v != inst.var && keys.count(v)) pending.push_back(v);
  }
  return {std::move(collected), top_r(ctx.regime), std::move(pending)};
}

StoredValue visit(const AmrNode& node, const Ctx& ctx) {
  if (!node.is_instance()) {
    throw translate_error("the root of a graph must be an instance assignment");
  }
  const Instance& inst = node.as_instance();
  if (inst.concept_name == "scope") return visit_scope_node(inst, ctx);
  return visit_instance(inst, ctx);
}

std::string quote_list(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& name : names) {
    if (!out.empty()) out += ", ";
    out += "'" + name + "'";
  }
  return out;
}

}  // namespace

// --- DeterminerTable ----------------------------------------------------------

DeterminerTable DeterminerTable::defaults() {
  DeterminerTable table;
  table.set("every", {DetClass::Universal, 0});
  table.set("a", {DetClass::Existential, 0});
  table.set("some", {DetClass::Existential, 0});
  return table;
}

void DeterminerTable::set(std::string name, DeterminerSpec spec) {
  entries_[std::move(name)] = spec;
}

std::optional<DeterminerSpec> DeterminerTable::resolve(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it != entries_.end()) return it->second;
  if (all_digits(name) && name.size() <= 9) {
    return DeterminerSpec{DetClass::AtLeast, std::stoi(name)};
  }
  return std::nullopt;
}

DeterminerTable DeterminerTable::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw determiner_config_error("cannot open determiner table '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& err) {
    throw determiner_config_error("invalid determiner table JSON in '" + path +
                                  "': " + err.what());
  }
  if (!doc.is_object()) {
    throw determiner_config_error("determiner table '" + path +
                                  "' must be a JSON object");
  }
  DeterminerTable table = defaults();
  for (const auto& [name, entry] : doc.items()) {
    if (!entry.is_object() || !entry.contains("class") ||
        !entry["class"].is_string()) {
      throw determiner_config_error("determiner '" + name +
                                    "' needs a \"class\" string");
    }
    const std::string cls = entry["class"].get<std::string>();
    DeterminerSpec spec;
    if (cls == "universal") {
      spec.cls = DetClass::Universal;
    } else if (cls == "existential") {
      spec.cls = DetClass::Existential;
    } else if (cls == "at-least") {
      spec.cls = DetClass::AtLeast;
      if (!entry.contains("n") || !entry["n"].is_number_integer() ||
          entry["n"].get<int>() < 1) {
        throw determiner_config_error("determiner '" + name +
                                      "' of class at-least needs a positive "
                                      "integer \"n\"");
      }
      spec.count = entry["n"].get<int>();
    } else {
      throw determiner_config_error("determiner '" + name + "': unknown class '" +
                                    cls + "'");
    }
    table.set(name, spec);
  }
  return table;
}

// --- operations ---------------------------------------------------------------

StoredValue translate_scoped(const AmrNode& graph, const ScopeOptions& options) {
  Ctx ctx{options.regime, &options.determiners, {}};
  collect_scope_targets(graph, ctx.scope_targets);
  return visit(graph, ctx);
}

StoredValue pop(const std::string& var, const StoredValue& value, Regime regime) {
  const auto it = std::find_if(value.store.begin(), value.store.end(),
                               [&](const StoreEntry& e) { return e.var == var; });
  if (it == value.store.end()) {
    std::vector<std::string> keys;
    for (const StoreEntry& entry : value.store) keys.push_back(entry.var);
    throw translate_error("pop: variable '" + var + "' is not in the store" +
                          (keys.empty() ? " (store is empty)"
                                        : " (stored: " + quote_list(keys) + ")"));
  }
  const StoreEntry entry = *it;
  StoredValue out{{}, value.ordinary, value.pending};
  for (const StoreEntry& keep : value.store) {
    if (keep.var != var) out.store.push_back(keep);
  }
  if (entry.cls == DetClass::Existential &&
      entry.quantifier.kind() == Term::Kind::App) {
    // ∃var(restrictor(var) ∧ ordinary) rather than a(restrictor)(λvar.·).
    const Term restrictor = entry.quantifier.arg();
    const Term applied = Term::app(restrictor, Term::var(var, Type::e()));
    out.ordinary = exists_r(regime, var, conj_r(regime, applied, value.ordinary));
  } else {
    out.ordinary =
        Term::app(entry.quantifier, Term::lam(var, Type::e(), value.ordinary));
  }
  out.ordinary = beta_normalize(out.ordinary);
  return out;
}

StoredValue close_v2(const StoredValue& value, Regime regime) {
  std::set<std::string> keys;
  for (const StoreEntry& entry : value.store) keys.insert(entry.var);
  std::vector<std::string> to_bind;
  for (const std::string& v : value.pending) {
    if (!keys.count(v)) to_bind.push_back(v);
  }
  const Term closed =
      to_bind.empty() ? value.ordinary : close_r(regime, value.ordinary, to_bind);
  return {value.store, closed, {}};
}

Term derive_reading(const AmrNode& graph, const ScopeOptions& options) {
  if (options.regime == Regime::Intensional) require_content_subgraphs(graph);
  const AmrNode normalized = normalize_inverse_roles(graph);
  const StoredValue value =
      close_v2(translate_scoped(normalized, options), options.regime);
  if (!value.store.empty()) {
    std::vector<std::string> keys;
    for (const StoreEntry& entry : value.store) keys.push_back(entry.var);
    throw translate_error("undischarged quantifier(s) in the store: " +
                          quote_list(keys) +
                          "; discharge them with a scope node");
  }
  Term result = beta_normalize(value.ordinary);
  const std::vector<std::string> residual = residual_individual_vars(result);
  if (!residual.empty()) {
    throw translate_error(
        "variable(s) " + quote_list(residual) +
        " remain free after quantifier retrieval: a popped quantifier mentions "
        "a variable that is only bound later (check the scope node's :ARG "
        "order)");
  }
  if (options.regime == Regime::Intensional) {
    result = canonicalize_world_names(result);
  }
  return result;
}

namespace {

bool narrow_rec(const Term& term, bool under_exists) {
  switch (term.kind()) {
    case Term::Kind::Const:
      return !(under_exists &&
               (term.type() == gq_type_ext() || term.type() == gq_type_int()));
    case Term::Kind::Var:
    case Term::Kind::Top:
      return true;
    case Term::Kind::Lam:
      // An abstraction starts a fresh formula (quantifier restrictor or
      // content closure); scope relations do not reach across it.
      return narrow_rec(term.body(), false);
    case Term::Kind::Exists:
      return narrow_rec(term.body(), true);
    case Term::Kind::App:
      return narrow_rec(term.fun(), under_exists) &&
             narrow_rec(term.arg(), under_exists);
    case Term::Kind::And:
      return narrow_rec(term.lhs(), under_exists) &&
             narrow_rec(term.rhs(), under_exists);
  }
  return true;
}

}  // namespace

bool event_quantifiers_narrow(const Term& term) { return narrow_rec(term, false); }

}  // namespace amrstlc
