#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "mixgap/chain.hpp"

namespace mixgap::fixtures {

/// Three-state non-reversible cycle with a lazy return, pi = (1/4, 1/4, 1/2).
/// Its one-step dilated gap vanishes, so the pseudo-spectral gaps are
/// attained at skip rates above one.
StochasticMatrix cycle3();

/// Doubly stochastic three-state chain that mixes in a few steps.
StochasticMatrix fast3();

/// Rank-one chain with uniform rows.
StochasticMatrix uniform(std::size_t n);

/// Strictly positive rows with skewed random weights; always ergodic.
StochasticMatrix random_ergodic(std::size_t n, std::uint64_t seed);

/// Random symmetric weights normalized by row; reversible and ergodic.
StochasticMatrix random_reversible(std::size_t n, std::uint64_t seed);

/// Seeds of the canned five-state random chains shipped with the bench.
inline constexpr std::array<std::uint64_t, 3> kCannedSeeds = {11, 16, 47};
inline constexpr std::size_t kCannedStates = 5;

/// random_ergodic(kCannedStates, kCannedSeeds[index]).
StochasticMatrix canned(std::size_t index);

}  // namespace mixgap::fixtures
