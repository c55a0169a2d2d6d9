#pragma once

#include <cstdint>
#include <optional>

#include "amrstlc/enumerate.hpp"
#include "amrstlc/model.hpp"
#include "amrstlc/scope.hpp"
#include "amrstlc/stlc.hpp"

// Bounded entailment: premise ⊨ conclusion holds within a bound when no
// model with up to max_worlds worlds and max_individuals individuals (over
// the merged signature of both formulas) makes the premise true and the
// conclusion false at the designated actual world. Sizes are visited in a
// fixed order (worlds outer, individuals inner, each from 1 up), so the
// reported counterexample is deterministic. Sizes whose model count fits
// the enumeration cap are scanned exhaustively in index order; larger sizes
// go through a grounding backtracking solver that decides the same
// question. Both formulas must share a type, either t or s→t.

namespace amrstlc {

struct Counterexample {
  Model model;
  int worlds = 0;
  int individuals = 0;
  // Odometer index when found by exhaustive scan; unset for solver finds.
  std::optional<std::uint64_t> index;
};

struct Verdict {
  bool entailed = false;
  std::optional<Counterexample> counterexample;
};

Verdict entails(const Term& premise, const Term& conclusion, const EnumerationBound& bound,
                int actual_world = 0,
                const DeterminerTable& determiners = DeterminerTable::defaults());

}  // namespace amrstlc
