#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d0l/core.hpp"

namespace d0l {

/// h^p(u) is a proper prefix of h^{p+q}(u).
struct PrefixPair {
    std::size_t p;
    std::size_t q;

    bool operator==(const PrefixPair&) const = default;
};

/// Least (p, p+q) with p+q <= limits.max_steps, or nullopt.
std::optional<PrefixPair> find_prefix_pair(const D0LSystem& system, const Limits& limits = {});

enum class QuickStatus { nonempty_possible, no_infinite_word };

QuickStatus quick_limit_status(const D0LSystem& system);

/// Replaces a prolongable axiom u (h(u) = u y) by a fresh letter s with h'(s) = s y.
/// A single prolongable letter is returned unchanged unless `force_fresh`.
D0LSystem to_letter_axiom(const Morphism& h, std::span<const Letter> u, bool force_fresh = false);

/// Symbol used for the fresh axiom letter given the symbols already in use.
char fresh_symbol(const Alphabet& alphabet);

enum class LimitStatus { nonempty_limit, no_infinite_word, unknown_limit };

const char* to_string(LimitStatus status);

struct FamilyMember {
    /// Single-letter prolongable system (h^q with possibly a fresh letter).
    D0LSystem system;
    /// Provenance index i of h^{p+i}(u).
    std::size_t index;
    /// h^{p+i}(u) as symbols; the member's fixed point is this word's limit
    /// with the axiom letter standing in for it.
    std::string source;
    bool fresh;
};

struct NormalizedFamily {
    LimitStatus status;
    std::optional<PrefixPair> pair;
    std::vector<FamilyMember> members;
};

NormalizedFamily decompose(const D0LSystem& system, const Limits& limits = {});

/// Shrinks the alphabet to letters reachable from the axiom letter; ids keep their relative order.
D0LSystem restrict_to_occurring(const D0LSystem& system);

}  // namespace d0l
