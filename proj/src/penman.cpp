#include "amrstlc/penman.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace amrstlc {

namespace {

bool is_var_shaped(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
    return std::isalnum(c);
  });
}

bool is_concept_shaped(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-';
  });
}

bool is_role_shaped(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-';
  });
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { LParen, RParen, Slash, Role, Atom, String, End };
  Kind kind;
  std::string text;  // role label (without ':'), atom text, string content
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_trivia();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", {start, start}};
    const char c = text_[pos_];
    if (c == '(') return ++pos_, Token{Token::Kind::LParen, "(", {start, pos_}};
    if (c == ')') return ++pos_, Token{Token::Kind::RParen, ")", {start, pos_}};
    if (c == '/') return ++pos_, Token{Token::Kind::Slash, "/", {start, pos_}};
    if (c == ':') {
      ++pos_;
      std::string label;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
        label += text_[pos_++];
      }
      if (label.empty()) {
        throw parse_error("expected role name after ':'", {start, pos_});
      }
      return {Token::Kind::Role, label, {start, pos_}};
    }
    if (c == '"') {
      ++pos_;
      std::string content;
      while (pos_ < text_.size() && text_[pos_] != '"') content += text_[pos_++];
      if (pos_ >= text_.size()) {
        throw parse_error("unterminated string constant", {start, pos_});
      }
      ++pos_;
      return {Token::Kind::String, content, {start, pos_}};
    }
    std::string atom;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) atom += text_[pos_++];
    return {Token::Kind::Atom, atom, {start, pos_}};
  }

 private:
  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
           c == '/' || c == ':' || c == '"' || c == '#';
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser. Bare var-shaped tokens parse as VarRef provisionally; a resolution
// pass demotes the ones no instance assignment declares to constants, since
// a token is a variable exactly when a '/' declaration exists for it.
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  AmrNode parse_graph() {
    if (current_.kind == Token::Kind::End) {
      throw parse_error("empty graph", current_.span);
    }
    AmrNode root = parse_node();
    if (current_.kind != Token::Kind::End) {
      throw parse_error("unexpected content after graph", current_.span);
    }
    resolve(root);
    return root;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  AmrNode parse_node() {
    if (current_.kind != Token::Kind::LParen) {
      throw parse_error("expected '('", current_.span);
    }
    const std::size_t begin = current_.span.begin;
    advance();
    if (current_.kind != Token::Kind::Atom || !is_var_shaped(current_.text)) {
      throw parse_error("expected variable name after '('", current_.span);
    }
    Instance inst;
    inst.var = current_.text;
    const SourceSpan var_span = current_.span;
    advance();
    if (current_.kind != Token::Kind::Slash) {
      throw parse_error("expected '/' after variable '" + inst.var + "'", current_.span);
    }
    advance();
    if (current_.kind != Token::Kind::Atom || !is_concept_shaped(current_.text)) {
      throw parse_error("expected concept after '/'", current_.span);
    }
    inst.concept_name = current_.text;
    advance();

    while (current_.kind == Token::Kind::Role) {
      if (!is_role_shaped(current_.text)) {
        throw parse_error("malformed role ':" + current_.text + "'", current_.span);
      }
      RoleAssignment assignment;
      assignment.role = RoleName::from_label(current_.text);
      const std::string label = current_.text;
      const SourceSpan role_span = current_.span;
      advance();
      switch (current_.kind) {
        case Token::Kind::LParen:
          assignment.arg = parse_node();
          break;
        case Token::Kind::Atom: {
          const Token tok = current_;
          advance();
          if (is_var_shaped(tok.text)) {
            assignment.arg = AmrNode{VarRef{tok.text}, tok.span};
          } else {
            assignment.arg = AmrNode{Constant{tok.text, false}, tok.span};
          }
          break;
        }
        case Token::Kind::String: {
          assignment.arg = AmrNode{Constant{current_.text, true}, current_.span};
          advance();
          break;
        }
        default:
          throw parse_error("role ':" + label + "' has no argument", role_span);
      }
      inst.roles.push_back(std::move(assignment));
    }

    if (current_.kind != Token::Kind::RParen) {
      throw parse_error("expected ')' to close '(" + inst.var + " / " + inst.concept_name + "'",
                        current_.span);
    }
    const std::size_t end = current_.span.end;
    advance();

    auto already = declarations_.find(inst.var);
    if (already != declarations_.end()) {
      throw parse_error("variable '" + inst.var + "' has more than one instance assignment",
                        var_span);
    }
    declarations_.emplace(inst.var, var_span);

    return AmrNode{std::move(inst), {begin, end}};
  }

  // Demote provisional VarRefs whose name is never declared to constants.
  void resolve(AmrNode& node) {
    if (node.is_var_ref()) {
      const std::string name = node.as_var_ref().var;
      if (declarations_.find(name) == declarations_.end()) {
        node.value = Constant{name, false};
      }
      return;
    }
    if (!node.is_instance()) return;
    for (auto& role : node.as_instance().roles) resolve(role.arg);
  }

  Lexer lexer_;
  Token current_;
  std::map<std::string, SourceSpan> declarations_;
};

}  // namespace

AmrNode parse(const std::string& text) { return Parser(text).parse_graph(); }

std::vector<AmrNode> parse_many(const std::string& text) {
  // Split on blank lines at parenthesis depth zero, respecting comments and
  // string literals, then parse each chunk independently.
  std::vector<std::pair<std::string, std::size_t>> chunks;  // text, offset
  std::string current;
  std::size_t chunk_offset = 0;
  int depth = 0;
  std::size_t pos = 0;
  auto flush = [&]() {
    const bool blank = std::all_of(current.begin(), current.end(), [](unsigned char c) {
      return std::isspace(c) != 0;
    });
    if (!blank) chunks.emplace_back(current, chunk_offset);
    current.clear();
  };
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    bool in_string = false;
    bool in_comment = false;
    bool only_space = true;
    for (const char c : line) {
      if (in_comment) continue;
      if (c == '"') in_string = !in_string;
      if (in_string) {
        only_space = false;
        continue;
      }
      if (c == '#') {
        in_comment = true;
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (!std::isspace(static_cast<unsigned char>(c))) only_space = false;
    }
    if (only_space && depth == 0) {
      flush();
      chunk_offset = eol + 1;
    } else {
      if (current.empty()) chunk_offset = pos;
      current += line;
      // Keep chunk offsets exact: only echo a newline that the input has.
      if (eol < text.size()) current += '\n';
    }
    pos = eol + 1;
  }
  flush();

  std::vector<AmrNode> graphs;
  for (auto& [chunk, offset] : chunks) {
    try {
      graphs.push_back(parse(chunk));
    } catch (const parse_error& err) {
      throw parse_error(err.what(), {err.span.begin + offset, err.span.end + offset});
    }
  }
  if (graphs.empty()) throw parse_error("empty graph", {0, 0});
  return graphs;
}

namespace {

std::string print_rec(const AmrNode& node) {
  if (node.is_constant()) {
    const Constant& c = node.as_constant();
    return c.quoted ? "\"" + c.text + "\"" : c.text;
  }
  if (node.is_var_ref()) return node.as_var_ref().var;
  const Instance& inst = node.as_instance();
  std::string out = "(" + inst.var + " / " + inst.concept_name;
  for (const auto& role : inst.roles) {
    out += " :" + role.role.label() + " " + print_rec(role.arg);
  }
  out += ")";
  return out;
}

}  // namespace

std::string print(const AmrNode& graph) { return print_rec(graph); }

// ---------------------------------------------------------------------------
// Inverse-role normalization
// ---------------------------------------------------------------------------

namespace {

struct Edge {
  std::size_t ordinal;     // role position in the original pre-order walk
  std::string role;        // base label; never inverted after collection
  std::string source;      // variable the normalized edge leaves
  AmrNode leaf;            // constant payload when target_var is empty
  std::string target_var;  // variable target, or empty for constants
  bool weak = false;       // scope-node :ARGi edges never capture an instance
};

struct GraphFacts {
  std::vector<std::pair<std::string, std::string>> instances;  // var, concept
  std::map<std::string, SourceSpan> spans;
  std::vector<Edge> edges;
};

bool is_scope_position_role(const Instance& inst, const RoleName& role) {
  if (inst.concept_name != "scope" || role.inverted) return false;
  const std::string& base = role.base;
  if (base.size() < 4 || base.compare(0, 3, "ARG") != 0) return false;
  return std::all_of(base.begin() + 3, base.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

void collect(const AmrNode& node, GraphFacts& facts, std::size_t& counter) {
  if (!node.is_instance()) return;
  const Instance& inst = node.as_instance();
  facts.instances.emplace_back(inst.var, inst.concept_name);
  facts.spans[inst.var] = node.span;
  for (const auto& role : inst.roles) {
    const std::size_t ordinal = counter++;
    std::string target_var;
    if (role.arg.is_instance()) {
      target_var = role.arg.as_instance().var;
    } else if (role.arg.is_var_ref()) {
      target_var = role.arg.as_var_ref().var;
    }
    if (role.role.inverted) {
      if (target_var.empty()) {
        throw normalize_error("cannot normalize ':" + role.role.label() + "' at '" +
                                  inst.var + "': a constant cannot head a subgraph",
                              inst.var);
      }
      facts.edges.push_back({ordinal, role.role.base, target_var, {}, inst.var, false});
    } else {
      facts.edges.push_back({ordinal, role.role.base, inst.var, role.arg, target_var,
                             is_scope_position_role(inst, role.role)});
    }
    collect(role.arg, facts, counter);
  }
}

}  // namespace

AmrNode normalize_inverse_roles(const AmrNode& graph) {
  if (!graph.is_instance()) return graph;

  GraphFacts facts;
  std::size_t counter = 0;
  collect(graph, facts, counter);

  std::map<std::string, std::string> concept_of;
  for (const auto& [var, concept_name] : facts.instances) {
    if (concept_of.find(var) == concept_of.end()) concept_of[var] = concept_name;
  }

  std::map<std::string, std::vector<const Edge*>> outgoing;
  for (const auto& edge : facts.edges) outgoing[edge.source].push_back(&edge);
  for (auto& [var, edges] : outgoing) {
    std::sort(edges.begin(), edges.end(),
              [](const Edge* a, const Edge* b) { return a->ordinal < b->ordinal; });
  }

  // Decide where each instance assignment nests in the rebuilt tree: at the
  // edge where a pre-order walk of the result first reaches it. Judging
  // placement by the result's own traversal (rather than by positions in
  // the input) makes the rewrite idempotent even when flipped edges land in
  // a different part of the tree than the :R-of that produced them.
  // Ordinary edges win over scope-position (:ARGi of a scope node) edges so
  // that quantified instances stay inside the scope node's :pred subgraph:
  // a weak edge hosts a nest only when the walk can reach the node no other
  // way.
  std::set<std::string> placed{graph.as_instance().var};
  std::map<std::string, std::size_t> placement;  // var -> ordinal of its nest edge
  std::function<void(const std::string&)> place_strong = [&](const std::string& var) {
    for (const Edge* edge : outgoing[var]) {
      if (edge->target_var.empty() || edge->weak) continue;
      if (placed.count(edge->target_var)) continue;
      placed.insert(edge->target_var);
      placement.emplace(edge->target_var, edge->ordinal);
      place_strong(edge->target_var);
    }
  };
  place_strong(graph.as_instance().var);

  // First weak edge to an unplaced node in pre-order of the tree built so
  // far; placements already made never move, because descending into a new
  // nest only inserts edges after it.
  std::function<const Edge*(const std::string&)> first_weak_frontier =
      [&](const std::string& var) -> const Edge* {
    for (const Edge* edge : outgoing[var]) {
      if (edge->target_var.empty()) continue;
      if (!placed.count(edge->target_var)) {
        if (edge->weak) return edge;
        continue;
      }
      auto nest = placement.find(edge->target_var);
      if (nest != placement.end() && nest->second == edge->ordinal) {
        if (const Edge* hit = first_weak_frontier(edge->target_var)) return hit;
      }
    }
    return nullptr;
  };
  while (const Edge* weak = first_weak_frontier(graph.as_instance().var)) {
    placed.insert(weak->target_var);
    placement.emplace(weak->target_var, weak->ordinal);
    place_strong(weak->target_var);
  }

  for (const auto& [var, concept_name] : facts.instances) {
    (void)concept_name;
    if (!placed.count(var)) {
      throw normalize_error("normalizing inverse roles would detach node '" + var +
                                "' from the root",
                            var);
    }
  }

  std::function<AmrNode(const std::string&)> build = [&](const std::string& var) {
    Instance inst;
    inst.var = var;
    inst.concept_name = concept_of.at(var);
    for (const Edge* edge : outgoing[var]) {
      RoleAssignment assignment;
      assignment.role = RoleName{edge->role, false};
      if (edge->target_var.empty()) {
        assignment.arg = edge->leaf;
      } else {
        auto nest = placement.find(edge->target_var);
        if (nest != placement.end() && nest->second == edge->ordinal) {
          assignment.arg = build(edge->target_var);
        } else {
          assignment.arg = AmrNode{VarRef{edge->target_var}, {}};
        }
      }
      inst.roles.push_back(std::move(assignment));
    }
    AmrNode node{std::move(inst), {}};
    auto span = facts.spans.find(var);
    if (span != facts.spans.end()) node.span = span->second;
    return node;
  };

  return build(graph.as_instance().var);
}

// ---------------------------------------------------------------------------
// Triples
// ---------------------------------------------------------------------------

namespace {

std::string constant_text(const Constant& c) {
  return c.quoted ? "\"" + c.text + "\"" : c.text;
}

void triples_rec(const AmrNode& node, std::vector<Triple>& out) {
  if (!node.is_instance()) return;
  const Instance& inst = node.as_instance();
  out.push_back({"instance", inst.var, inst.concept_name, true});
  for (const auto& role : inst.roles) {
    if (role.arg.is_instance()) {
      triples_rec(role.arg, out);
      out.push_back({role.role.base, inst.var, role.arg.as_instance().var, false});
    } else if (role.arg.is_var_ref()) {
      out.push_back({role.role.base, inst.var, role.arg.as_var_ref().var, false});
    } else {
      out.push_back({role.role.base, inst.var, constant_text(role.arg.as_constant()), false});
    }
  }
}

}  // namespace

std::vector<Triple> to_triples(const AmrNode& graph) {
  const AmrNode normalized = normalize_inverse_roles(graph);
  std::vector<Triple> out;
  triples_rec(normalized, out);
  return out;
}

std::string triple_to_string(const Triple& triple) {
  return triple.relation + "(" + triple.source + ", " + triple.target + ")";
}

}  // namespace amrstlc
