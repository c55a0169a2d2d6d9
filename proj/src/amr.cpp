#include "amrstlc/amr.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace amrstlc {

RoleName RoleName::from_label(const std::string& label) {
  static const std::string suffix = "-of";
  if (label.size() > suffix.size() &&
      label.compare(label.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return RoleName{label.substr(0, label.size() - suffix.size()), true};
  }
  return RoleName{label, false};
}

AmrNode make_instance(std::string var, std::string concept_name,
                      std::vector<RoleAssignment> roles) {
  return AmrNode{Instance{std::move(var), std::move(concept_name), std::move(roles)}, {}};
}

AmrNode make_var_ref(std::string var) { return AmrNode{VarRef{std::move(var)}, {}}; }

AmrNode make_constant(std::string text, bool quoted) {
  return AmrNode{Constant{std::move(text), quoted}, {}};
}

bool structural_eq(const AmrNode& lhs, const AmrNode& rhs) {
  if (lhs.value.index() != rhs.value.index()) return false;
  if (lhs.is_constant()) {
    return lhs.as_constant().text == rhs.as_constant().text &&
           lhs.as_constant().quoted == rhs.as_constant().quoted;
  }
  if (lhs.is_var_ref()) return lhs.as_var_ref().var == rhs.as_var_ref().var;
  const Instance& a = lhs.as_instance();
  const Instance& b = rhs.as_instance();
  if (a.var != b.var || a.concept_name != b.concept_name || a.roles.size() != b.roles.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.roles.size(); ++i) {
    if (!(a.roles[i].role == b.roles[i].role)) return false;
    if (!structural_eq(a.roles[i].arg, b.roles[i].arg)) return false;
  }
  return true;
}

namespace {

void walk_instances(const AmrNode& node,
                    const std::function<void(const Instance&)>& visit) {
  if (!node.is_instance()) return;
  const Instance& inst = node.as_instance();
  visit(inst);
  for (const auto& role : inst.roles) walk_instances(role.arg, visit);
}

// Directed edges between variables after normalizing inverse roles:
// :R from x to instance/ref y yields x -> y; :R-of yields y -> x.
std::multimap<std::string, std::string> normalized_var_edges(const AmrNode& graph) {
  std::multimap<std::string, std::string> edges;
  walk_instances(graph, [&edges](const Instance& inst) {
    for (const auto& role : inst.roles) {
      std::string target;
      if (role.arg.is_instance()) {
        target = role.arg.as_instance().var;
      } else if (role.arg.is_var_ref()) {
        target = role.arg.as_var_ref().var;
      } else {
        continue;  // constants never participate in cycles
      }
      if (role.role.inverted) {
        edges.emplace(target, inst.var);
      } else {
        edges.emplace(inst.var, target);
      }
    }
  });
  return edges;
}

bool has_cycle(const std::multimap<std::string, std::string>& edges,
               std::string* witness) {
  std::set<std::string> nodes;
  for (const auto& [from, to] : edges) {
    nodes.insert(from);
    nodes.insert(to);
  }
  std::map<std::string, int> color;  // 0 unvisited, 1 in progress, 2 done
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    color[v] = 1;
    auto [lo, hi] = edges.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      const int c = color[it->second];
      if (c == 1) {
        *witness = it->second;
        return true;
      }
      if (c == 0 && dfs(it->second)) return true;
    }
    color[v] = 2;
    return false;
  };
  for (const auto& v : nodes) {
    if (color[v] == 0 && dfs(v)) return true;
  }
  return false;
}

}  // namespace

ValidationReport validate(const AmrNode& graph) {
  ValidationReport report;

  std::vector<std::string> declared;
  walk_instances(graph, [&](const Instance& inst) {
    if (std::find(declared.begin(), declared.end(), inst.var) != declared.end()) {
      report.violations.push_back(
          {Violation::Kind::DuplicateInstance, inst.var,
           "variable '" + inst.var + "' has more than one instance assignment"});
    } else {
      declared.push_back(inst.var);
    }
  });

  std::function<void(const AmrNode&)> check_refs = [&](const AmrNode& node) {
    if (node.is_var_ref()) {
      const std::string& v = node.as_var_ref().var;
      if (std::find(declared.begin(), declared.end(), v) == declared.end()) {
        report.violations.push_back(
            {Violation::Kind::DanglingVarRef, v,
             "variable '" + v + "' is mentioned but never declared"});
      }
      return;
    }
    if (!node.is_instance()) return;
    for (const auto& role : node.as_instance().roles) {
      if (role.role.inverted && (role.role.base == "quant" || role.role.base == "pred")) {
        report.violations.push_back(
            {Violation::Kind::InvertedStructuralRole, role.role.label(),
             "structural role ':" + role.role.base + "' cannot be inverted"});
      }
      check_refs(role.arg);
    }
  };
  check_refs(graph);

  std::string witness;
  if (has_cycle(normalized_var_edges(graph), &witness)) {
    report.violations.push_back(
        {Violation::Kind::Cyclic, witness,
         "graph is cyclic after inverse-role normalization (via '" + witness + "')"});
  }

  return report;
}

namespace {

void amr_free_rec(const AmrNode& node, std::vector<std::string>& out) {
  if (!node.is_instance()) return;  // constants and bare mentions are not free
  const Instance& inst = node.as_instance();
  if (std::find(out.begin(), out.end(), inst.var) == out.end()) {
    out.push_back(inst.var);
  }
  for (const auto& role : inst.roles) amr_free_rec(role.arg, out);
}

}  // namespace

std::vector<std::string> amr_free_vars(const AmrNode& graph) {
  std::vector<std::string> out;
  amr_free_rec(graph, out);
  return out;
}

std::vector<std::string> declared_vars(const AmrNode& graph) {
  std::vector<std::string> out;
  walk_instances(graph, [&out](const Instance& inst) {
    if (std::find(out.begin(), out.end(), inst.var) == out.end()) {
      out.push_back(inst.var);
    }
  });
  return out;
}

}  // namespace amrstlc
