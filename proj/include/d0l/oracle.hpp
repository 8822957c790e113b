#pragma once

// Brute-force reference computations. Nothing in the decision pipeline uses
// this header; it exists to cross-check it.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "d0l/core.hpp"

namespace d0l::oracle {

/// First `length` letters of h^omega(u) for an axiom u that is a proper prefix of h(u).
Word expand_prefix(const D0LSystem& system, std::size_t length);

/// Least t with w[n] == w[n+p] for all t <= n < |w| - p.
std::size_t naive_p_periodic_from(std::span<const Letter> w, std::size_t p);

/// Letters seen at each residue mod p within positions [begin, end).
std::vector<LetterSet> naive_k_sets(std::span<const Letter> w, std::size_t p, std::size_t begin,
                                    std::size_t end);

struct Gaps {
    Word prefix;
    std::vector<Word> interior;
};

/// u0 and the complete gaps between consecutive pivots. Needs two pivots.
Gaps naive_gaps(std::span<const Letter> w, Letter pivot);

struct PrefixReport {
    Word prefix;
    std::vector<std::size_t> letter_counts;
    /// residue_counts[c][k] = occurrences of c at positions == k (mod p).
    std::vector<std::vector<std::size_t>> residue_counts;
    std::optional<Gaps> gaps;
};

PrefixReport prefix_report(const D0LSystem& system, std::size_t length, std::size_t p,
                           std::optional<Letter> pivot);

/// Residue graph with Parikh-vector states: a position is (letter, Parikh
/// vector mod p of the prefix before it). Built by direct expansion of each
/// image; shares no code with the symbolic builder.
struct NaiveResidueGraph {
    std::size_t p;
    std::vector<std::pair<Letter, std::vector<std::uint64_t>>> states;
    std::vector<std::set<std::size_t>> edges;
    std::set<std::size_t> initial;
    std::set<std::size_t> recurrent;

    std::set<std::pair<Letter, std::uint64_t>> projected_initial() const;
    std::set<std::pair<Letter, std::uint64_t>> projected_recurrent() const;
};

NaiveResidueGraph naive_residue_graph(const D0LSystem& system, std::size_t p,
                                      std::size_t max_states = 200'000);

/// Literal h^n expansion compared letter by letter.
bool naive_equal_at(const Morphism& h, const Word& u, const Word& v, std::size_t n,
                    std::size_t cap);

}  // namespace d0l::oracle
