#include "amrstlc/translate.hpp"

#include <algorithm>
#include <set>

#include "amrstlc/penman.hpp"

namespace amrstlc {

namespace {

constexpr const char* kContentRole = "content";

bool is_content_role(const RoleName& role) {
  return !role.inverted && role.base == kContentRole;
}

const Instance& root_instance(const AmrNode& graph) {
  if (!graph.is_instance()) {
    throw translate_error("the root of a graph must be an instance assignment");
  }
  return graph.as_instance();
}

void require_normalized(const RoleName& role) {
  if (role.inverted) {
    throw translate_error("inverse role ':" + role.label() +
                          "' must be normalized away before translation");
  }
}

void free_for_close_rec(const AmrNode& node, std::vector<std::string>& out,
                        std::set<std::string>& seen) {
  if (!node.is_instance()) return;
  const Instance& inst = node.as_instance();
  if (seen.insert(inst.var).second) out.push_back(inst.var);
  for (const auto& role : inst.roles) {
    if (is_content_role(role.role)) continue;
    free_for_close_rec(role.arg, out, seen);
  }
}

// Orders `vars` by first free occurrence in `term`; every entry must occur.
std::vector<std::string> closure_order(const Term& term,
                                       const std::vector<std::string>& vars) {
  const std::vector<std::string> occurring = free_vars(term);
  std::vector<std::string> ordered;
  for (const std::string& name : occurring) {
    if (std::find(vars.begin(), vars.end(), name) != vars.end()) {
      ordered.push_back(name);
    }
  }
  for (const std::string& name : vars) {
    if (std::find(ordered.begin(), ordered.end(), name) == ordered.end()) {
      throw translate_error("close: variable '" + name +
                            "' does not occur free in the term");
    }
  }
  return ordered;
}

Term argument_term(const AmrNode& arg) {
  if (arg.is_constant()) {
    return Term::constant(constant_symbol(arg.as_constant()), Type::e());
  }
  if (arg.is_var_ref()) return Term::var(arg.as_var_ref().var, Type::e());
  return Term::var(arg.as_instance().var, Type::e());
}

Term translate_ext_rec(const AmrNode& node) {
  const Instance& inst = root_instance(node);
  const Term self = Term::var(inst.var, Type::e());
  Term result = Term::app(Term::constant(inst.concept_name, pred_type_ext()), self);
  for (const auto& role : inst.roles) {
    require_normalized(role.role);
    const Term relation = Term::constant(role.role.base, role_type_ext());
    result = Term::conj(result, Term::app(Term::app(relation, self),
                                          argument_term(role.arg)));
    if (role.arg.is_instance()) {
      result = Term::conj(result, translate_ext_rec(role.arg));
    }
  }
  return result;
}

std::string describe_leaf(const AmrNode& node) {
  if (node.is_var_ref()) {
    return "the bare variable reference '" + node.as_var_ref().var + "'";
  }
  return "the constant '" + constant_symbol(node.as_constant()) + "'";
}

[[noreturn]] void throw_content_leaf(const std::string& parent, const AmrNode& arg) {
  throw translate_error(
      "':content' of '" + parent + "' embeds " + describe_leaf(arg) +
      "; propositional content must be an instance-assigned subgraph");
}

Term translate_int_rec(const AmrNode& node) {
  const Instance& inst = root_instance(node);
  const Term self = Term::var(inst.var, Type::e());
  Term result = Term::app(Term::constant(inst.concept_name, pred_type_int()), self);
  for (const auto& role : inst.roles) {
    require_normalized(role.role);
    if (is_content_role(role.role)) {
      if (!role.arg.is_instance()) throw_content_leaf(inst.var, role.arg);
      const Term proposition =
          close_int(translate_int_rec(role.arg), free_for_close(role.arg));
      const Term cont = Term::constant("cont", cont_type());
      result = and_w(result, Term::app(Term::app(cont, self), proposition));
      continue;
    }
    const Term relation = Term::constant(role.role.base, role_type_int());
    result = and_w(result, Term::app(Term::app(relation, self),
                                     argument_term(role.arg)));
    if (role.arg.is_instance()) {
      result = and_w(result, translate_int_rec(role.arg));
    }
  }
  return result;
}

void residual_rec(const Term& term, std::set<std::string>& bound,
                  std::vector<std::string>& out, std::set<std::string>& seen) {
  switch (term.kind()) {
    case Term::Kind::Var:
      if (!bound.count(term.name()) && term.type() == Type::e() &&
          seen.insert(term.name()).second) {
        out.push_back(term.name());
      }
      return;
    case Term::Kind::Lam:
    case Term::Kind::Exists: {
      const bool fresh = bound.insert(term.binder()).second;
      residual_rec(term.body(), bound, out, seen);
      if (fresh) bound.erase(term.binder());
      return;
    }
    case Term::Kind::App:
      residual_rec(term.fun(), bound, out, seen);
      residual_rec(term.arg(), bound, out, seen);
      return;
    case Term::Kind::And:
      residual_rec(term.lhs(), bound, out, seen);
      residual_rec(term.rhs(), bound, out, seen);
      return;
    case Term::Kind::Const:
    case Term::Kind::Top:
      return;
  }
}

void collect_used_names(const Term& term, std::set<std::string>& out) {
  switch (term.kind()) {
    case Term::Kind::Const:
      out.insert(term.name());
      return;
    case Term::Kind::Var:
      // Occurrences of world variables are not obstacles: they are exactly
      // the occurrences being renamed.
      if (!(term.type() == Type::s())) out.insert(term.name());
      return;
    case Term::Kind::Lam:
      if (!(term.binder_type() == Type::s())) out.insert(term.binder());
      collect_used_names(term.body(), out);
      return;
    case Term::Kind::Exists:
      out.insert(term.binder());
      collect_used_names(term.body(), out);
      return;
    case Term::Kind::App:
      collect_used_names(term.fun(), out);
      collect_used_names(term.arg(), out);
      return;
    case Term::Kind::And:
      collect_used_names(term.lhs(), out);
      collect_used_names(term.rhs(), out);
      return;
    case Term::Kind::Top:
      return;
  }
}

Term rename_world_binders(const Term& term,
                          const std::vector<std::string>& names,
                          std::size_t depth) {
  switch (term.kind()) {
    case Term::Kind::Lam: {
      if (term.binder_type() == Type::s()) {
        const std::string& target = names.at(depth);
        Term body = term.body();
        if (target != term.binder()) {
          body = substitute(body, term.binder(), Term::var(target, Type::s()));
        }
        return Term::lam(target, Type::s(),
                         rename_world_binders(body, names, depth + 1));
      }
      return Term::lam(term.binder(), term.binder_type(),
                       rename_world_binders(term.body(), names, depth));
    }
    case Term::Kind::Exists:
      return Term::exists(term.binder(),
                          rename_world_binders(term.body(), names, depth));
    case Term::Kind::App:
      return Term::app(rename_world_binders(term.fun(), names, depth),
                       rename_world_binders(term.arg(), names, depth));
    case Term::Kind::And:
      return Term::conj(rename_world_binders(term.lhs(), names, depth),
                        rename_world_binders(term.rhs(), names, depth));
    default:
      return term;
  }
}

std::size_t world_binder_depth(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Lam: {
      const std::size_t below = world_binder_depth(term.body());
      return term.binder_type() == Type::s() ? below + 1 : below;
    }
    case Term::Kind::Exists:
      return world_binder_depth(term.body());
    case Term::Kind::App:
      return std::max(world_binder_depth(term.fun()), world_binder_depth(term.arg()));
    case Term::Kind::And:
      return std::max(world_binder_depth(term.lhs()), world_binder_depth(term.rhs()));
    default:
      return 0;
  }
}

}  // namespace

std::vector<std::string> free_for_close(const AmrNode& node) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  free_for_close_rec(node, out, seen);
  return out;
}

std::string constant_symbol(const Constant& constant) {
  return constant.quoted ? "\"" + constant.text + "\"" : constant.text;
}

void require_content_subgraphs(const AmrNode& graph) {
  if (!graph.is_instance()) return;
  const Instance& inst = graph.as_instance();
  for (const auto& role : inst.roles) {
    if (is_content_role(role.role) && !role.arg.is_instance()) {
      throw_content_leaf(inst.var, role.arg);
    }
    require_content_subgraphs(role.arg);
  }
}

Term translate_ext(const AmrNode& graph) { return translate_ext_rec(graph); }

Term close_v1(const Term& term, const std::vector<std::string>& vars) {
  const std::vector<std::string> ordered = closure_order(term, vars);
  Term result = term;
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) {
    result = Term::exists(*it, result);
  }
  return result;
}

Term derive_ext(const AmrNode& graph) {
  const AmrNode normalized = normalize_inverse_roles(graph);
  const Term open = translate_ext(normalized);
  return beta_normalize(close_v1(open, amr_free_vars(normalized)));
}

Term and_w(const Term& a, const Term& b) {
  std::vector<std::string> avoid = free_vars(a);
  const std::vector<std::string> more = free_vars(b);
  avoid.insert(avoid.end(), more.begin(), more.end());
  const std::string w = fresh_name("w", avoid);
  const Term world = Term::var(w, Type::s());
  return Term::lam(w, Type::s(),
                   Term::conj(Term::app(a, world), Term::app(b, world)));
}

Term exists_w(const std::string& var, const Term& body) {
  std::vector<std::string> avoid = free_vars(body);
  avoid.push_back(var);
  const std::string w = fresh_name("w", avoid);
  return Term::lam(w, Type::s(),
                   Term::exists(var, Term::app(body, Term::var(w, Type::s()))));
}

Term translate_int(const AmrNode& graph) { return translate_int_rec(graph); }

Term close_int(const Term& term, const std::vector<std::string>& vars) {
  const std::vector<std::string> ordered = closure_order(term, vars);
  Term result = term;
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) {
    result = exists_w(*it, result);
  }
  return result;
}

Term derive_int(const AmrNode& graph) {
  require_content_subgraphs(graph);
  const AmrNode normalized = normalize_inverse_roles(graph);
  const Term open = translate_int(normalized);
  const Term closed = beta_normalize(close_int(open, free_for_close(normalized)));
  const std::vector<std::string> residual = residual_individual_vars(closed);
  if (!residual.empty()) {
    std::string names;
    for (const std::string& name : residual) {
      if (!names.empty()) names += ", ";
      names += "'" + name + "'";
    }
    throw translate_error(
        "variable(s) " + names +
        " remain free in the final formula: declared inside a ':content' "
        "subgraph but referenced outside it");
  }
  return canonicalize_world_names(closed);
}

Term canonicalize_world_names(const Term& term) {
  std::set<std::string> reserved;
  collect_used_names(term, reserved);
  const std::size_t needed = world_binder_depth(term);
  std::vector<std::string> names;
  for (std::size_t k = 1; names.size() < needed; ++k) {
    const std::string candidate = k == 1 ? "w" : "w" + std::to_string(k);
    if (!reserved.count(candidate)) names.push_back(candidate);
  }
  return rename_world_binders(term, names, 0);
}

std::vector<std::string> residual_individual_vars(const Term& term) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  std::set<std::string> seen;
  residual_rec(term, bound, out, seen);
  return out;
}

}  // namespace amrstlc
