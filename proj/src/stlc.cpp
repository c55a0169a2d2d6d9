#include "amrstlc/stlc.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <set>

namespace amrstlc {

// --------------------------------------------------------------------------
// Types
// --------------------------------------------------------------------------

Type Type::e() {
  static const auto node = std::make_shared<const Node>(Node{Kind::E, nullptr, nullptr});
  return Type(node);
}

Type Type::t() {
  static const auto node = std::make_shared<const Node>(Node{Kind::T, nullptr, nullptr});
  return Type(node);
}

Type Type::s() {
  static const auto node = std::make_shared<const Node>(Node{Kind::S, nullptr, nullptr});
  return Type(node);
}

Type Type::arrow(Type from, Type to) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Arrow, std::move(from.node_), std::move(to.node_)}));
}

Type Type::from() const {
  assert(kind() == Kind::Arrow);
  return Type(node_->from);
}

Type Type::to() const {
  assert(kind() == Kind::Arrow);
  return Type(node_->to);
}

bool Type::operator==(const Type& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (a->kind != Kind::Arrow) return true;
  return Type(a->from) == Type(b->from) && Type(a->to) == Type(b->to);
}

std::string Type::str() const {
  switch (kind()) {
    case Kind::E: return "e";
    case Kind::T: return "t";
    case Kind::S: return "s";
    case Kind::Arrow: {
      const Type lhs = from();
      std::string l = lhs.str();
      if (lhs.kind() == Kind::Arrow) l = "(" + l + ")";
      return l + " -> " + to().str();
    }
  }
  return "?";
}

Type pred_type_ext() { return Type::arrow(Type::e(), Type::t()); }
Type pred_type_int() { return Type::arrow(Type::e(), prop_type()); }
Type role_type_ext() { return Type::arrow(Type::e(), pred_type_ext()); }
Type role_type_int() { return Type::arrow(Type::e(), pred_type_int()); }
Type prop_type() { return Type::arrow(Type::s(), Type::t()); }
Type cont_type() { return Type::arrow(Type::e(), Type::arrow(prop_type(), prop_type())); }
Type gq_type_ext() {
  return Type::arrow(pred_type_ext(), Type::arrow(pred_type_ext(), Type::t()));
}
Type gq_type_int() {
  return Type::arrow(pred_type_int(), Type::arrow(pred_type_int(), prop_type()));
}

// --------------------------------------------------------------------------
// Term constructors
// --------------------------------------------------------------------------

Term Term::constant(std::string name, Type type) {
  auto node = std::make_shared<Node>(Kind::Const, std::move(type));
  node->name = std::move(name);
  return wrap(std::move(node));
}

Term Term::var(std::string name, Type type) {
  auto node = std::make_shared<Node>(Kind::Var, std::move(type));
  node->name = std::move(name);
  return wrap(std::move(node));
}

Term Term::lam(std::string binder, Type binder_type, Term body) {
  auto node = std::make_shared<Node>(Kind::Lam, Type::arrow(binder_type, body.type()));
  node->name = std::move(binder);
  node->binder_type = std::move(binder_type);
  node->a = std::move(body.node_);
  return wrap(std::move(node));
}

Term Term::app(Term fun, Term arg) {
  if (fun.type().kind() != Type::Kind::Arrow) {
    throw type_error("cannot apply non-function " + pretty(fun) + " : " + fun.type().str());
  }
  if (fun.type().from() != arg.type()) {
    throw type_error("type mismatch applying " + pretty(fun) + " : " + fun.type().str() +
                     " to " + pretty(arg) + " : expected " + fun.type().from().str() +
                     ", actual " + arg.type().str());
  }
  auto node = std::make_shared<Node>(Kind::App, fun.type().to());
  node->a = std::move(fun.node_);
  node->b = std::move(arg.node_);
  return wrap(std::move(node));
}

Term Term::conj(Term lhs, Term rhs) {
  if (lhs.type() != Type::t() || rhs.type() != Type::t()) {
    throw type_error("conjunction operands must have type t; got " + lhs.type().str() +
                     " and " + rhs.type().str());
  }
  auto node = std::make_shared<Node>(Kind::And, Type::t());
  node->a = std::move(lhs.node_);
  node->b = std::move(rhs.node_);
  return wrap(std::move(node));
}

Term Term::exists(std::string binder, Term body) {
  if (body.type() != Type::t()) {
    throw type_error("exists body must have type t; got " + body.type().str());
  }
  auto node = std::make_shared<Node>(Kind::Exists, Type::t());
  node->name = std::move(binder);
  node->a = std::move(body.node_);
  return wrap(std::move(node));
}

Term Term::top() {
  static const Term instance = wrap(std::make_shared<Node>(Kind::Top, Type::t()));
  return instance;
}

const std::string& Term::name() const {
  assert(kind() == Kind::Const || kind() == Kind::Var);
  return node_->name;
}

const std::string& Term::binder() const {
  assert(kind() == Kind::Lam || kind() == Kind::Exists);
  return node_->name;
}

Type Term::binder_type() const {
  assert(kind() == Kind::Lam || kind() == Kind::Exists);
  return kind() == Kind::Lam ? node_->binder_type : Type::e();
}

Term Term::body() const {
  assert(kind() == Kind::Lam || kind() == Kind::Exists);
  return wrap(node_->a);
}

Term Term::fun() const {
  assert(kind() == Kind::App);
  return wrap(node_->a);
}

Term Term::arg() const {
  assert(kind() == Kind::App);
  return wrap(node_->b);
}

Term Term::lhs() const {
  assert(kind() == Kind::And);
  return wrap(node_->a);
}

Term Term::rhs() const {
  assert(kind() == Kind::And);
  return wrap(node_->b);
}

bool Term::operator==(const Term& other) const {
  if (node_.get() == other.node_.get()) return true;
  if (kind() != other.kind() || type() != other.type()) return false;
  switch (kind()) {
    case Kind::Top: return true;
    case Kind::Const:
    case Kind::Var: return name() == other.name();
    case Kind::Lam:
      return binder() == other.binder() && binder_type() == other.binder_type() &&
             body() == other.body();
    case Kind::Exists: return binder() == other.binder() && body() == other.body();
    case Kind::App: return fun() == other.fun() && arg() == other.arg();
    case Kind::And: return lhs() == other.lhs() && rhs() == other.rhs();
  }
  return false;
}

// --------------------------------------------------------------------------
// Free variables and substitution
// --------------------------------------------------------------------------

namespace {

void free_vars_rec(const Term& term, std::vector<std::string>& bound,
                   std::vector<std::string>& out) {
  switch (term.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Top:
      return;
    case Term::Kind::Var: {
      const std::string& n = term.name();
      if (std::find(bound.begin(), bound.end(), n) == bound.end() &&
          std::find(out.begin(), out.end(), n) == out.end()) {
        out.push_back(n);
      }
      return;
    }
    case Term::Kind::Lam:
    case Term::Kind::Exists:
      bound.push_back(term.binder());
      free_vars_rec(term.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::App:
      free_vars_rec(term.fun(), bound, out);
      free_vars_rec(term.arg(), bound, out);
      return;
    case Term::Kind::And:
      free_vars_rec(term.lhs(), bound, out);
      free_vars_rec(term.rhs(), bound, out);
      return;
  }
}

}  // namespace

std::vector<std::string> free_vars(const Term& term) {
  std::vector<std::string> bound, out;
  free_vars_rec(term, bound, out);
  return out;
}

bool occurs_free(const std::string& name, const Term& term) {
  const auto fv = free_vars(term);
  return std::find(fv.begin(), fv.end(), name) != fv.end();
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid) {
  auto taken = [&avoid](const std::string& n) {
    return std::find(avoid.begin(), avoid.end(), n) != avoid.end();
  };
  if (!taken(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = base;
  for (int k = 2;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!taken(candidate)) return candidate;
  }
}

Term substitute(const Term& term, const std::string& name, const Term& value) {
  switch (term.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Top:
      return term;
    case Term::Kind::Var:
      return term.name() == name ? value : term;
    case Term::Kind::App:
      return Term::app(substitute(term.fun(), name, value),
                       substitute(term.arg(), name, value));
    case Term::Kind::And:
      return Term::conj(substitute(term.lhs(), name, value),
                        substitute(term.rhs(), name, value));
    case Term::Kind::Lam:
    case Term::Kind::Exists: {
      const std::string binder = term.binder();
      if (binder == name) return term;  // shadowed
      if (!occurs_free(name, term.body())) return term;
      Term body = term.body();
      std::string bound = binder;
      if (occurs_free(binder, value)) {
        std::vector<std::string> avoid = free_vars(value);
        for (const auto& v : free_vars(body)) avoid.push_back(v);
        bound = fresh_name(binder, avoid);
        body = substitute(body, binder, Term::var(bound, term.binder_type()));
      }
      body = substitute(body, name, value);
      return term.kind() == Term::Kind::Lam ? Term::lam(bound, term.binder_type(), body)
                                            : Term::exists(bound, body);
    }
  }
  return term;
}

// --------------------------------------------------------------------------
// Normalization
// --------------------------------------------------------------------------

namespace {

// Conjunction of two normalized t-terms: drops units and hoists exists
// binders out of either operand, renaming when a binder would capture.
Term smart_conj(const Term& lhs, const Term& rhs) {
  if (lhs.kind() == Term::Kind::Top) return rhs;
  if (rhs.kind() == Term::Kind::Top) return lhs;
  if (lhs.kind() == Term::Kind::Exists) {
    std::string binder = lhs.binder();
    Term body = lhs.body();
    if (occurs_free(binder, rhs)) {
      std::vector<std::string> avoid = free_vars(rhs);
      for (const auto& v : free_vars(body)) avoid.push_back(v);
      avoid.push_back(binder);
      const std::string renamed = fresh_name(binder, avoid);
      body = substitute(body, binder, Term::var(renamed, Type::e()));
      binder = renamed;
    }
    return Term::exists(binder, smart_conj(body, rhs));
  }
  if (rhs.kind() == Term::Kind::Exists) {
    std::string binder = rhs.binder();
    Term body = rhs.body();
    if (occurs_free(binder, lhs)) {
      std::vector<std::string> avoid = free_vars(lhs);
      for (const auto& v : free_vars(body)) avoid.push_back(v);
      avoid.push_back(binder);
      const std::string renamed = fresh_name(binder, avoid);
      body = substitute(body, binder, Term::var(renamed, Type::e()));
      binder = renamed;
    }
    return Term::exists(binder, smart_conj(lhs, body));
  }
  return Term::conj(lhs, rhs);
}

}  // namespace

Term beta_normalize(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
    case Term::Kind::Top:
      return term;
    case Term::Kind::Lam:
      return Term::lam(term.binder(), term.binder_type(), beta_normalize(term.body()));
    case Term::Kind::Exists:
      return Term::exists(term.binder(), beta_normalize(term.body()));
    case Term::Kind::And:
      return smart_conj(beta_normalize(term.lhs()), beta_normalize(term.rhs()));
    case Term::Kind::App: {
      const Term fun = beta_normalize(term.fun());
      const Term arg = beta_normalize(term.arg());
      if (fun.kind() == Term::Kind::Lam) {
        return beta_normalize(substitute(fun.body(), fun.binder(), arg));
      }
      return Term::app(fun, arg);
    }
  }
  return term;
}

// --------------------------------------------------------------------------
// Alpha equivalence
// --------------------------------------------------------------------------

namespace {

using NamePairs = std::vector<std::pair<std::string, std::string>>;

bool vars_match(const std::string& a, const std::string& b, const NamePairs& env) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == a || it->second == b) return it->first == a && it->second == b;
  }
  return a == b;  // both free
}

bool alpha_eq_rec(const Term& a, const Term& b, NamePairs& env) {
  if (a.kind() != b.kind() || a.type() != b.type()) return false;
  switch (a.kind()) {
    case Term::Kind::Top: return true;
    case Term::Kind::Const: return a.name() == b.name();
    case Term::Kind::Var: return vars_match(a.name(), b.name(), env);
    case Term::Kind::App:
      return alpha_eq_rec(a.fun(), b.fun(), env) && alpha_eq_rec(a.arg(), b.arg(), env);
    case Term::Kind::And:
      return alpha_eq_rec(a.lhs(), b.lhs(), env) && alpha_eq_rec(a.rhs(), b.rhs(), env);
    case Term::Kind::Lam:
    case Term::Kind::Exists: {
      if (a.binder_type() != b.binder_type()) return false;
      env.emplace_back(a.binder(), b.binder());
      const bool ok = alpha_eq_rec(a.body(), b.body(), env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& lhs, const Term& rhs) {
  NamePairs env;
  return alpha_eq_rec(lhs, rhs, env);
}

// --------------------------------------------------------------------------
// Equivalence modulo AC of & and adjacent exists reordering
// --------------------------------------------------------------------------

namespace {

std::vector<Term> flatten_conj(const Term& t) {
  if (t.kind() != Term::Kind::And) return {t};
  std::vector<Term> out = flatten_conj(t.lhs());
  std::vector<Term> right = flatten_conj(t.rhs());
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

bool equiv_rec(const Term& a, const Term& b, NamePairs& env);

// Multiset matching of conjuncts with backtracking.
bool match_conjuncts(const std::vector<Term>& as, std::vector<Term> bs, NamePairs& env,
                     size_t i) {
  if (i == as.size()) return bs.empty();
  for (size_t j = 0; j < bs.size(); ++j) {
    NamePairs saved = env;
    if (equiv_rec(as[i], bs[j], env)) {
      std::vector<Term> rest = bs;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      if (match_conjuncts(as, std::move(rest), env, i + 1)) return true;
    }
    env = std::move(saved);
  }
  return false;
}

// Adjacent exists binders permute freely: try bijections with backtracking.
bool match_exists_block(std::vector<std::string> xs, const Term& abody,
                        std::vector<std::string> ys, const Term& bbody, NamePairs& env) {
  if (xs.empty()) {
    const auto as = flatten_conj(abody);
    auto bs = flatten_conj(bbody);
    if (as.size() != bs.size()) return false;
    return match_conjuncts(as, std::move(bs), env, 0);
  }
  const std::string x = xs.front();
  xs.erase(xs.begin());
  for (size_t j = 0; j < ys.size(); ++j) {
    NamePairs saved = env;
    env.emplace_back(x, ys[j]);
    std::vector<std::string> rest = ys;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    if (match_exists_block(xs, abody, std::move(rest), bbody, env)) return true;
    env = std::move(saved);
  }
  return false;
}

bool equiv_rec(const Term& a, const Term& b, NamePairs& env) {
  if (a.type() != b.type()) return false;
  if (a.kind() == Term::Kind::Exists || b.kind() == Term::Kind::Exists) {
    if (a.kind() != b.kind()) return false;
    std::vector<std::string> xs, ys;
    Term abody = a, bbody = b;
    while (abody.kind() == Term::Kind::Exists) {
      xs.push_back(abody.binder());
      abody = abody.body();
    }
    while (bbody.kind() == Term::Kind::Exists) {
      ys.push_back(bbody.binder());
      bbody = bbody.body();
    }
    if (xs.size() != ys.size()) return false;
    return match_exists_block(std::move(xs), abody, std::move(ys), bbody, env);
  }
  if (a.kind() == Term::Kind::And || b.kind() == Term::Kind::And) {
    if (a.kind() != b.kind()) return false;
    const auto as = flatten_conj(a);
    auto bs = flatten_conj(b);
    if (as.size() != bs.size()) return false;
    return match_conjuncts(as, std::move(bs), env, 0);
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Top: return true;
    case Term::Kind::Const: return a.name() == b.name();
    case Term::Kind::Var: return vars_match(a.name(), b.name(), env);
    case Term::Kind::App:
      return equiv_rec(a.fun(), b.fun(), env) && equiv_rec(a.arg(), b.arg(), env);
    case Term::Kind::Lam: {
      if (a.binder_type() != b.binder_type()) return false;
      env.emplace_back(a.binder(), b.binder());
      const bool ok = equiv_rec(a.body(), b.body(), env);
      env.pop_back();
      return ok;
    }
    default: return false;
  }
}

}  // namespace

bool equiv_mod_ac_alpha(const Term& lhs, const Term& rhs) {
  const Term a = beta_normalize(lhs);
  const Term b = beta_normalize(rhs);
  NamePairs env;
  return equiv_rec(a, b, env);
}

// --------------------------------------------------------------------------
// Pretty printing
// --------------------------------------------------------------------------

namespace {

// Precedence levels: 0 binder (extends right), 1 conjunction, 2 application.
void pretty_rec(const Term& t, const PrettyOptions& opts, int min_level, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Top:
      out += opts.unicode ? "⊤" : "true";
      return;
    case Term::Kind::Const:
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Lam: {
      const bool parens = min_level > 0;
      if (parens) out += "(";
      out += opts.unicode ? "λ" : "\\";
      out += t.binder();
      out += " . ";
      pretty_rec(t.body(), opts, 0, out);
      if (parens) out += ")";
      return;
    }
    case Term::Kind::Exists: {
      const bool parens = min_level > 0;
      if (parens) out += "(";
      std::vector<std::string> binders;
      Term body = t;
      while (body.kind() == Term::Kind::Exists) {
        binders.push_back(body.binder());
        body = body.body();
      }
      if (opts.unicode) {
        out += "∃";
        for (size_t i = 0; i < binders.size(); ++i) {
          if (i > 0) out += ",";
          out += binders[i];
        }
      } else {
        out += "exists";
        for (const auto& b : binders) {
          out += " ";
          out += b;
        }
      }
      out += " . ";
      pretty_rec(body, opts, 0, out);
      if (parens) out += ")";
      return;
    }
    case Term::Kind::And: {
      const bool parens = min_level > 1;
      if (parens) out += "(";
      pretty_rec(t.lhs(), opts, 1, out);
      out += opts.unicode ? " ∧ " : " & ";
      pretty_rec(t.rhs(), opts, 1, out);
      if (parens) out += ")";
      return;
    }
    case Term::Kind::App: {
      pretty_rec(t.fun(), opts, 2, out);
      out += "(";
      pretty_rec(t.arg(), opts, 0, out);
      out += ")";
      return;
    }
  }
}

}  // namespace

std::string pretty(const Term& term, const PrettyOptions& opts) {
  std::string out;
  pretty_rec(term, opts, 0, out);
  return out;
}

std::string pretty(const Type& type) { return type.str(); }

// --------------------------------------------------------------------------
// JSON export
// --------------------------------------------------------------------------

nlohmann::ordered_json term_to_json(const Term& term) {
  nlohmann::ordered_json j;
  j["type"] = term.type().str();
  switch (term.kind()) {
    case Term::Kind::Top:
      j["kind"] = "top";
      break;
    case Term::Kind::Const:
      j["kind"] = "const";
      j["name"] = term.name();
      break;
    case Term::Kind::Var:
      j["kind"] = "var";
      j["name"] = term.name();
      break;
    case Term::Kind::Lam:
      j["kind"] = "lam";
      j["binder"] = term.binder();
      j["binderType"] = term.binder_type().str();
      j["body"] = term_to_json(term.body());
      break;
    case Term::Kind::Exists:
      j["kind"] = "exists";
      j["binder"] = term.binder();
      j["body"] = term_to_json(term.body());
      break;
    case Term::Kind::App:
      j["kind"] = "app";
      j["fun"] = term_to_json(term.fun());
      j["arg"] = term_to_json(term.arg());
      break;
    case Term::Kind::And:
      j["kind"] = "and";
      j["lhs"] = term_to_json(term.lhs());
      j["rhs"] = term_to_json(term.rhs());
      break;
  }
  return j;
}

}  // namespace amrstlc
