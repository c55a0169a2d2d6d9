#include "amrstlc/enumerate.hpp"

#include <atomic>
#include <limits>

namespace amrstlc {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kMax / b) return kMax;
  return a * b;
}

std::uint64_t binary_slot_bits(const Signature& signature, int worlds, int individuals) {
  std::uint64_t w = static_cast<std::uint64_t>(worlds);
  std::uint64_t i = static_cast<std::uint64_t>(individuals);
  std::uint64_t bits = 0;
  bits += signature.predicates.size() * i * w;
  bits += signature.roles.size() * i * i * w;
  if (signature.uses_cont) bits += i * w * w;
  return bits;
}

void require_sizes(int worlds, int individuals) {
  if (worlds < 1 || individuals < 1) {
    throw eval_error("model enumeration requires at least one world and one individual");
  }
}

void require_within_cap(const Signature& signature, int worlds, int individuals,
                        std::uint64_t cap) {
  std::uint64_t count = model_count(signature, worlds, individuals);
  if (count > cap) {
    throw eval_error("enumerating " + std::to_string(worlds) + " world(s) x " +
                     std::to_string(individuals) + " individual(s) yields " +
                     (count == kMax ? std::string("more than 2^64") : std::to_string(count)) +
                     " models, exceeding the cap of " + std::to_string(cap));
  }
}

}  // namespace

std::uint64_t model_count(const Signature& signature, int worlds, int individuals) {
  require_sizes(worlds, individuals);
  std::uint64_t bits = binary_slot_bits(signature, worlds, individuals);
  if (bits >= 64) return kMax;
  std::uint64_t count = 1ull << bits;
  for (std::size_t k = 0; k < signature.individual_constants.size(); ++k) {
    count = mul_sat(count, static_cast<std::uint64_t>(individuals));
  }
  return count;
}

Model model_at(const Signature& signature, int worlds, int individuals, std::uint64_t index) {
  require_sizes(worlds, individuals);
  Model model;
  model.worlds.reserve(static_cast<std::size_t>(worlds));
  for (int w = 1; w <= worlds; ++w) model.worlds.push_back("w" + std::to_string(w));
  model.individuals.reserve(static_cast<std::size_t>(individuals));
  for (int d = 1; d <= individuals; ++d) model.individuals.push_back("i" + std::to_string(d));

  // Least-significant slots decode first, so groups peel off in reverse of
  // their documented significance order.
  if (signature.uses_cont) {
    model.content.assign(static_cast<std::size_t>(individuals),
                         std::vector<std::set<int>>(static_cast<std::size_t>(worlds)));
    for (int d = individuals - 1; d >= 0; --d) {
      for (int w = worlds - 1; w >= 0; --w) {
        for (int member = worlds - 1; member >= 0; --member) {
          if (index & 1ull) model.content[static_cast<std::size_t>(d)][static_cast<std::size_t>(w)].insert(member);
          index >>= 1;
        }
      }
    }
  }
  for (auto it = signature.roles.rbegin(); it != signature.roles.rend(); ++it) {
    auto& per_world = model.roles[*it];
    per_world.assign(static_cast<std::size_t>(worlds), {});
    for (int w = worlds - 1; w >= 0; --w) {
      for (int a = individuals - 1; a >= 0; --a) {
        for (int b = individuals - 1; b >= 0; --b) {
          if (index & 1ull) per_world[static_cast<std::size_t>(w)].insert({a, b});
          index >>= 1;
        }
      }
    }
  }
  for (auto it = signature.predicates.rbegin(); it != signature.predicates.rend(); ++it) {
    auto& per_world = model.predicates[*it];
    per_world.assign(static_cast<std::size_t>(worlds), {});
    for (int w = worlds - 1; w >= 0; --w) {
      for (int d = individuals - 1; d >= 0; --d) {
        if (index & 1ull) per_world[static_cast<std::size_t>(w)].insert(d);
        index >>= 1;
      }
    }
  }
  for (auto it = signature.individual_constants.rbegin();
       it != signature.individual_constants.rend(); ++it) {
    model.constants[*it] = static_cast<int>(index % static_cast<std::uint64_t>(individuals));
    index /= static_cast<std::uint64_t>(individuals);
  }
  return model;
}

void for_each_model(const Signature& signature, int worlds, int individuals,
                    const std::function<void(std::uint64_t, const Model&)>& visit,
                    std::uint64_t cap) {
  require_within_cap(signature, worlds, individuals, cap);
  std::uint64_t count = model_count(signature, worlds, individuals);
  for (std::uint64_t i = 0; i < count; ++i) {
    Model model = model_at(signature, worlds, individuals, i);
    visit(i, model);
  }
}

std::optional<std::uint64_t> find_first_model_serial(const Signature& signature, int worlds,
                                                     int individuals,
                                                     const ModelPredicate& predicate,
                                                     std::uint64_t cap) {
  require_within_cap(signature, worlds, individuals, cap);
  std::uint64_t count = model_count(signature, worlds, individuals);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (predicate(model_at(signature, worlds, individuals, i))) return i;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> find_first_model_parallel(const Signature& signature, int worlds,
                                                       int individuals,
                                                       const ModelPredicate& predicate,
                                                       std::uint64_t cap) {
#if defined(AMRSTLC_HAVE_OPENMP)
  require_within_cap(signature, worlds, individuals, cap);
  std::uint64_t count = model_count(signature, worlds, individuals);
  std::atomic<std::uint64_t> best{kMax};
#pragma omp parallel for schedule(dynamic, 1024)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    std::uint64_t index = static_cast<std::uint64_t>(i);
    if (index >= best.load(std::memory_order_relaxed)) continue;
    if (predicate(model_at(signature, worlds, individuals, index))) {
      std::uint64_t current = best.load(std::memory_order_relaxed);
      while (index < current &&
             !best.compare_exchange_weak(current, index, std::memory_order_relaxed)) {
      }
    }
  }
  if (best.load() == kMax) return std::nullopt;
  return best.load();
#else
  return find_first_model_serial(signature, worlds, individuals, predicate, cap);
#endif
}

std::uint64_t count_models_serial(const Signature& signature, int worlds, int individuals,
                                  const ModelPredicate& predicate, std::uint64_t cap) {
  require_within_cap(signature, worlds, individuals, cap);
  std::uint64_t count = model_count(signature, worlds, individuals);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (predicate(model_at(signature, worlds, individuals, i))) ++hits;
  }
  return hits;
}

std::uint64_t count_models_parallel(const Signature& signature, int worlds, int individuals,
                                    const ModelPredicate& predicate, std::uint64_t cap) {
#if defined(AMRSTLC_HAVE_OPENMP)
  require_within_cap(signature, worlds, individuals, cap);
  std::uint64_t count = model_count(signature, worlds, individuals);
  long long hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    if (predicate(model_at(signature, worlds, individuals, static_cast<std::uint64_t>(i)))) {
      ++hits;
    }
  }
  return static_cast<std::uint64_t>(hits);
#else
  return count_models_serial(signature, worlds, individuals, predicate, cap);
#endif
}

}  // namespace amrstlc
