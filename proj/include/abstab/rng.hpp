#pragma once

#include <cstdint>

#include "abstab/numeric.hpp"

namespace abstab {

/// Deterministic counter-based generator: the stream is a pure function of
/// (key, counter), so seeds reproduce byte-identical runs and per-shot
/// streams can be derived without sharing state.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    /// Independent stream for one shot of a seeded run.
    static CounterRng for_shot(std::uint64_t seed, std::uint64_t shot);

    std::uint64_t next_u64();

    /// Uniform integer in [0, n) by rejection sampling; n >= 1.
    Int below(const Int& n);

    /// Uniform double in [0, 1).
    double uniform();

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace abstab
