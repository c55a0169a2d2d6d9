#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amrstlc/amr.hpp"
#include "amrstlc/stlc.hpp"
#include "amrstlc/translate.hpp"

// Cooper-storage translation: graphs denote a pair of a store (delayed
// generalized quantifiers, keyed by the variable they bind) and an ordinary
// semantic value. `:quant D` on an instance assignment stores D applied to
// the instance's restrictor instead of asserting anything in place; a scope
// node (concept `scope`, roles `:ARG0 x1 … :ARGn-1 xn :pred A`) discharges
// stored quantifiers in the order of its :ARG indices, :ARG0 outermost.
//
// The translation runs in the same two regimes as the plain translators;
// in the intensional regime `:content` boundaries close their subgraph and
// discharge any stored quantifier that no scope node claims, which gives
// unscoped quantified phrases under attitudes narrowest (de dicto) scope.

namespace amrstlc {

enum class Regime { Extensional, Intensional };

enum class DetClass { Universal, Existential, AtLeast };

struct DeterminerSpec {
  DetClass cls = DetClass::Existential;
  int count = 0;  // AtLeast only
};

// A malformed determiner-table override file.
class determiner_config_error : public std::runtime_error {
 public:
  explicit determiner_config_error(const std::string& message)
      : std::runtime_error(message) {}
};

// Maps `:quant` tokens to quantifier classes. Unlisted all-digit tokens
// resolve to "at least n"; anything else unlisted is unknown.
class DeterminerTable {
 public:
  // every → universal; a, some → existential.
  static DeterminerTable defaults();

  // defaults() overlaid with entries from a JSON object of the form
  // {"name": {"class": "universal"|"existential"|"at-least", "n": 2}}.
  static DeterminerTable from_json_file(const std::string& path);

  void set(std::string name, DeterminerSpec spec);
  std::optional<DeterminerSpec> resolve(const std::string& name) const;

 private:
  std::map<std::string, DeterminerSpec> entries_;
};

struct StoreEntry {
  std::string var;  // the variable the quantifier binds when popped
  Term quantifier;  // determiner applied to its restrictor, e.g. every(boy)
  DetClass cls;
};

// The two-dimensional meaning: delayed quantifiers plus the in-place
// formula. `pending` lists the variables an eventual close must bind
// (instance-assigned in the translated subgraph and not yet closed),
// in declaration order.
struct StoredValue {
  std::vector<StoreEntry> store;
  Term ordinary;
  std::vector<std::string> pending;
};

struct ScopeOptions {
  Regime regime = Regime::Extensional;
  DeterminerTable determiners = DeterminerTable::defaults();
};

// Compositional translation; expects inverse roles normalized away.
StoredValue translate_scoped(const AmrNode& graph, const ScopeOptions& options);

// Retrieves var's quantifier from the store and applies it to λvar.ordinary
// (existential-class quantifiers expand directly to ∃var(restrictor ∧ ·));
// the result is beta-normalized. Raises translate_error if var is not
// stored.
StoredValue pop(const std::string& var, const StoredValue& value, Regime regime);

// Existentially binds every pending variable that is not a store key, in
// order of first occurrence in the ordinary value; clears pending.
StoredValue close_v2(const StoredValue& value, Regime regime);

// Full pipeline: normalization, scoped translation, final close; errors if
// stored quantifiers remain undischarged or individual variables remain
// free (a pop order that strands a restrictor's dependency). Extensional
// results have type t, intensional s→t.
Term derive_reading(const AmrNode& graph, const ScopeOptions& options);

// True iff no generalized-quantifier constant is applied beneath an
// existential binder — popped quantifiers always outscope the existential
// closure of event variables.
bool event_quantifiers_narrow(const Term& term);

}  // namespace amrstlc
