#pragma once

#include <cstddef>
#include <cstdint>

namespace d0l {

struct Limits {
    /// Longest word any operation will materialize.
    std::size_t max_len = 10'000'000;
    /// Search bound for the prefix pair (p, q) during normalization.
    std::size_t max_steps = 64;
    /// Letter-production steps allowed for streaming comparisons.
    std::uint64_t step_budget = 100'000'000;
    /// Budget for finite state searches. A residue graph vertex with a
    /// signature of w residues costs 1 + w/8 units.
    std::size_t max_states = 2'000'000;
};

}  // namespace d0l
