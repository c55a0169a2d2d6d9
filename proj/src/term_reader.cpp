#include "amrstlc/term_reader.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

namespace amrstlc {

namespace {

// ---------------------------------------------------------------------------
// Tokens.

enum class Tok { Lambda, Dot, Amp, LParen, RParen, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '\\' &&
         c != '&' && c != '.' && c != '"';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '\\':
        tokens.push_back({Tok::Lambda, "\\", i++});
        continue;
      case '.':
        tokens.push_back({Tok::Dot, ".", i++});
        continue;
      case '&':
        tokens.push_back({Tok::Amp, "&", i++});
        continue;
      case '(':
        tokens.push_back({Tok::LParen, "(", i++});
        continue;
      case ')':
        tokens.push_back({Tok::RParen, ")", i++});
        continue;
      case '"': {
        std::size_t start = i++;
        while (i < text.size() && text[i] != '"') ++i;
        if (i == text.size()) throw term_read_error("unterminated quoted name", start);
        ++i;
        tokens.push_back({Tok::Ident, text.substr(start, i - start), start});
        continue;
      }
      default: {
        std::size_t start = i;
        while (i < text.size() && ident_char(text[i])) ++i;
        tokens.push_back({Tok::Ident, text.substr(start, i - start), start});
        continue;
      }
    }
  }
  tokens.push_back({Tok::End, "", text.size()});
  return tokens;
}

// ---------------------------------------------------------------------------
// Untyped syntax tree.

struct Ast {
  enum class Kind { Name, Lam, Exists, And, App, Top };
  Kind kind;
  std::string name;                 // Name, Lam binder
  std::vector<std::string> names;   // Exists binders
  std::unique_ptr<Ast> first, second;
  std::size_t offset = 0;
  int binder_type = -1;  // unification variable for Lam binders
};

std::unique_ptr<Ast> mk(Ast::Kind kind, std::size_t offset) {
  auto ast = std::make_unique<Ast>();
  ast->kind = kind;
  ast->offset = offset;
  return ast;
}

struct Parser {
  std::vector<Token> tokens;
  std::size_t at = 0;

  const Token& peek() const { return tokens[at]; }
  Token take() { return tokens[at++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw term_read_error(message, peek().offset);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++at;
  }

  std::unique_ptr<Ast> formula() {
    if (peek().kind == Tok::Lambda) {
      Token lambda = take();
      if (peek().kind != Tok::Ident) fail("expected a binder after '\\'");
      std::string binder = take().text;
      expect(Tok::Dot, "'.' after the binder");
      auto node = mk(Ast::Kind::Lam, lambda.offset);
      node->name = binder;
      node->first = formula();
      return node;
    }
    if (peek().kind == Tok::Ident && peek().text == "exists") {
      Token kw = take();
      auto node = mk(Ast::Kind::Exists, kw.offset);
      while (peek().kind == Tok::Ident) node->names.push_back(take().text);
      if (node->names.empty()) fail("expected binders after 'exists'");
      expect(Tok::Dot, "'.' after the binders");
      node->first = formula();
      return node;
    }
    return conj();
  }

  std::unique_ptr<Ast> conj() {
    auto lhs = app();
    while (peek().kind == Tok::Amp) {
      Token amp = take();
      auto node = mk(Ast::Kind::And, amp.offset);
      node->first = std::move(lhs);
      node->second = app();
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<Ast> app() {
    auto fun = primary();
    while (peek().kind == Tok::LParen) {
      Token open = take();
      auto node = mk(Ast::Kind::App, open.offset);
      node->first = std::move(fun);
      node->second = formula();
      expect(Tok::RParen, "')'");
      fun = std::move(node);
    }
    return fun;
  }

  std::unique_ptr<Ast> primary() {
    if (peek().kind == Tok::LParen) {
      take();
      auto inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (peek().kind == Tok::Ident) {
      Token token = take();
      if (token.text == "true") return mk(Ast::Kind::Top, token.offset);
      if (token.text == "exists") fail("'exists' needs binders and a body");
      auto node = mk(Ast::Kind::Name, token.offset);
      node->name = token.text;
      return node;
    }
    fail("expected a formula");
  }
};

// ---------------------------------------------------------------------------
// Monomorphic type inference with union-find.

struct Infer {
  // tag: -1 unbound variable, otherwise a Type::Kind; arrows carry children.
  struct Node {
    int parent;
    int tag;
    int from = -1;
    int to = -1;
  };
  std::vector<Node> nodes;

  int fresh() {
    nodes.push_back({static_cast<int>(nodes.size()), -1});
    return static_cast<int>(nodes.size()) - 1;
  }

  int base(Type::Kind kind) {
    nodes.push_back({static_cast<int>(nodes.size()), static_cast<int>(kind)});
    return static_cast<int>(nodes.size()) - 1;
  }

  int arrow(int from, int to) {
    nodes.push_back(
        {static_cast<int>(nodes.size()), static_cast<int>(Type::Kind::Arrow), from, to});
    return static_cast<int>(nodes.size()) - 1;
  }

  int of_type(const Type& type) {
    if (type.kind() == Type::Kind::Arrow) return arrow(of_type(type.from()), of_type(type.to()));
    return base(type.kind());
  }

  int find(int a) {
    while (nodes[static_cast<std::size_t>(a)].parent != a) {
      int parent = nodes[static_cast<std::size_t>(a)].parent;
      nodes[static_cast<std::size_t>(a)].parent = nodes[static_cast<std::size_t>(parent)].parent;
      a = nodes[static_cast<std::size_t>(a)].parent;
    }
    return a;
  }

  void unify(int a, int b, std::size_t offset) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    Node& na = nodes[static_cast<std::size_t>(a)];
    Node& nb = nodes[static_cast<std::size_t>(b)];
    if (na.tag == -1) {
      na.parent = b;
      return;
    }
    if (nb.tag == -1) {
      nb.parent = a;
      return;
    }
    if (na.tag != nb.tag) throw term_read_error("the formula is not well-typed", offset);
    if (na.tag == static_cast<int>(Type::Kind::Arrow)) {
      int afrom = na.from, ato = na.to, bfrom = nb.from, bto = nb.to;
      nodes[static_cast<std::size_t>(a)].parent = b;
      unify(afrom, bfrom, offset);
      unify(ato, bto, offset);
    } else {
      na.parent = b;
    }
  }

  std::optional<Type> resolve(int a) {
    a = find(a);
    const Node& node = nodes[static_cast<std::size_t>(a)];
    switch (node.tag) {
      case -1:
        return std::nullopt;
      case static_cast<int>(Type::Kind::E):
        return Type::e();
      case static_cast<int>(Type::Kind::T):
        return Type::t();
      case static_cast<int>(Type::Kind::S):
        return Type::s();
      default: {
        auto from = resolve(node.from);
        auto to = resolve(node.to);
        if (!from || !to) return std::nullopt;
        return Type::arrow(*from, *to);
      }
    }
  }
};

struct Elaborator {
  const std::map<std::string, Type>& constants;
  Infer infer;
  std::vector<std::pair<std::string, int>> scope;  // binder → unification node

  int lookup(const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    return -1;
  }

  int constrain(Ast& ast) {
    switch (ast.kind) {
      case Ast::Kind::Top:
        return infer.base(Type::Kind::T);
      case Ast::Kind::Name: {
        int bound = lookup(ast.name);
        if (bound != -1) return bound;
        auto it = constants.find(ast.name);
        if (it == constants.end()) {
          throw term_read_error("unknown constant '" + ast.name + "'", ast.offset);
        }
        return infer.of_type(it->second);
      }
      case Ast::Kind::Lam: {
        ast.binder_type = infer.fresh();
        scope.emplace_back(ast.name, ast.binder_type);
        int body = constrain(*ast.first);
        scope.pop_back();
        return infer.arrow(ast.binder_type, body);
      }
      case Ast::Kind::Exists: {
        for (const std::string& binder : ast.names) {
          scope.emplace_back(binder, infer.base(Type::Kind::E));
        }
        int body = constrain(*ast.first);
        infer.unify(body, infer.base(Type::Kind::T), ast.offset);
        scope.resize(scope.size() - ast.names.size());
        return infer.base(Type::Kind::T);
      }
      case Ast::Kind::And: {
        int lhs = constrain(*ast.first);
        int rhs = constrain(*ast.second);
        infer.unify(lhs, infer.base(Type::Kind::T), ast.offset);
        infer.unify(rhs, infer.base(Type::Kind::T), ast.offset);
        return infer.base(Type::Kind::T);
      }
      case Ast::Kind::App: {
        int fun = constrain(*ast.first);
        int arg = constrain(*ast.second);
        int result = infer.fresh();
        infer.unify(fun, infer.arrow(arg, result), ast.offset);
        return result;
      }
    }
    throw term_read_error("unreachable", ast.offset);
  }

  std::vector<std::pair<std::string, Type>> typed_scope;

  Term build(const Ast& ast) {
    switch (ast.kind) {
      case Ast::Kind::Top:
        return Term::top();
      case Ast::Kind::Name: {
        for (auto it = typed_scope.rbegin(); it != typed_scope.rend(); ++it) {
          if (it->first == ast.name) return Term::var(ast.name, it->second);
        }
        return Term::constant(ast.name, constants.at(ast.name));
      }
      case Ast::Kind::Lam: {
        auto binder = infer.resolve(ast.binder_type);
        if (!binder) {
          throw term_read_error("cannot infer the type of binder '" + ast.name + "'", ast.offset);
        }
        typed_scope.emplace_back(ast.name, *binder);
        Term body = build(*ast.first);
        typed_scope.pop_back();
        return Term::lam(ast.name, *binder, body);
      }
      case Ast::Kind::Exists: {
        for (const std::string& binder : ast.names) typed_scope.emplace_back(binder, Type::e());
        Term body = build(*ast.first);
        for (std::size_t k = 0; k < ast.names.size(); ++k) typed_scope.pop_back();
        for (auto it = ast.names.rbegin(); it != ast.names.rend(); ++it) {
          body = Term::exists(*it, body);
        }
        return body;
      }
      case Ast::Kind::And:
        return Term::conj(build(*ast.first), build(*ast.second));
      case Ast::Kind::App:
        return Term::app(build(*ast.first), build(*ast.second));
    }
    throw term_read_error("unreachable", ast.offset);
  }
};

}  // namespace

Term read_term(const std::string& text, const std::map<std::string, Type>& constants) {
  Parser parser{lex(text)};
  auto ast = parser.formula();
  if (parser.peek().kind != Tok::End) parser.fail("unexpected trailing input");
  Elaborator elaborator{constants, {}, {}, {}};
  elaborator.constrain(*ast);
  return elaborator.build(*ast);
}

}  // namespace amrstlc
