#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "amrstlc/model.hpp"

// Deterministic enumeration of every model of a signature at exact sizes
// (a fixed number of worlds and individuals). Models are indexed 0..count-1
// by a mixed-radix odometer whose slots are, from most significant to least:
//
//   1. individual-constant denotations (sorted by name; radix = #individuals),
//   2. one bit per (predicate, world, individual), predicates sorted by name,
//      then world-major, individual-minor,
//   3. one bit per (role, world, source, target), roles sorted by name,
//   4. if the signature uses `cont`: one bit per content-map membership,
//      individual-major, then world, then member world.
//
// A set bit means membership; index 0 is the model with empty extensions.
// The scan kernels come in a serial reference implementation and an
// OpenMP-parallel one; both return the same (lowest) index. The parallel
// kernels fall back to the serial path when OpenMP is unavailable.

namespace amrstlc {

struct EnumerationBound {
  int max_worlds = 2;
  int max_individuals = 3;
  // Sizes whose model count exceeds this cap are not scanned exhaustively.
  std::uint64_t enumeration_cap = 1ull << 20;
};

// Number of models at the exact size, saturating at UINT64_MAX on overflow.
std::uint64_t model_count(const Signature& signature, int worlds, int individuals);

// Decodes one odometer index into a model. Worlds are named w1..wN and
// individuals i1..iN. Requires index < model_count(...).
Model model_at(const Signature& signature, int worlds, int individuals, std::uint64_t index);

using ModelPredicate = std::function<bool(const Model&)>;

// Visits every model in index order. Throws eval_error if the count exceeds
// the cap.
void for_each_model(const Signature& signature, int worlds, int individuals,
                    const std::function<void(std::uint64_t, const Model&)>& visit,
                    std::uint64_t cap = EnumerationBound{}.enumeration_cap);

// Lowest index whose model satisfies the predicate, or nullopt.
std::optional<std::uint64_t> find_first_model_serial(
    const Signature& signature, int worlds, int individuals, const ModelPredicate& predicate,
    std::uint64_t cap = EnumerationBound{}.enumeration_cap);
std::optional<std::uint64_t> find_first_model_parallel(
    const Signature& signature, int worlds, int individuals, const ModelPredicate& predicate,
    std::uint64_t cap = EnumerationBound{}.enumeration_cap);

// Number of models satisfying the predicate.
std::uint64_t count_models_serial(const Signature& signature, int worlds, int individuals,
                                  const ModelPredicate& predicate,
                                  std::uint64_t cap = EnumerationBound{}.enumeration_cap);
std::uint64_t count_models_parallel(const Signature& signature, int worlds, int individuals,
                                    const ModelPredicate& predicate,
                                    std::uint64_t cap = EnumerationBound{}.enumeration_cap);

}  // namespace amrstlc
