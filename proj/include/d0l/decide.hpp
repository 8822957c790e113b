#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "d0l/classify.hpp"
#include "d0l/core.hpp"
#include "d0l/normalize.hpp"

namespace d0l {

/// h^n(u) == h^n(v) for some n >= 1, decided at n = |A|.
bool eventually_equal(const Morphism& h, std::span<const Letter> u, std::span<const Letter> v,
                      const Limits& limits = {});

/// For h(a) = a y with only finite letters in y: least n, then least p, with
/// h^{n+p}(y) = h^n(y). The fixed point is transient . cycle^omega.
struct EventualCycle {
    std::size_t n;
    std::size_t p;
    Word transient;  // a y h(y) ... h^{n-1}(y)
    Word cycle;      // h^n(y) ... h^{n+p-1}(y)
};

EventualCycle periodic_case_no_infinite_recurrent(const D0LSystem& system,
                                                  const Limits& limits = {});

/// An infinite letter from which the pivot is not reachable within |A| steps.
std::optional<Letter> check_pivot_reachability(const D0LSystem& system,
                                               const LetterClassification& classes,
                                               Letter pivot);

enum class Side { left, right };

const char* to_string(Side side);

/// h^exponent(letter) = v1 letter v2 where the flank on `side` is a nonempty
/// word of finite letters that never dies.
struct PumpingWitness {
    Letter letter;
    std::size_t exponent;
    Side side;
    Word flank;
    /// Offset of the pumped occurrence of `letter` inside h^exponent(letter).
    std::size_t offset;
};

std::optional<PumpingWitness> check_pumping(const D0LSystem& system,
                                            const LetterClassification& classes, Letter pivot,
                                            const Limits& limits = {});

struct GapAnalysis {
    Letter pivot;
    bool u_finite;
    std::optional<PumpingWitness> pumping_witness;
    /// Least n with two pivots in h^n(pivot).
    std::size_t n_star;
    /// Distinct interior gaps of h^{n_star}(pivot), in order of first appearance.
    std::vector<Word> u_hat;
    /// Interior gaps observed in a streamed prefix, when requested.
    std::vector<Word> sampled_gaps;
};

/// Pre: reachability and pumping checks passed. `sample_length` > 0 also scans a prefix.
GapAnalysis certified_gaps(const D0LSystem& system, Letter pivot, const Limits& limits = {},
                           std::size_t sample_length = 0);

/// First pair (u_i, u_j) with h^{|A|}(b u_i b u_j) != h^{|A|}(b u_j b u_i).
std::optional<std::pair<Word, Word>> commutation_test(const D0LSystem& system, Letter pivot,
                                                      std::span<const Word> u_hat,
                                                      const Limits& limits = {});

/// Length of the primitive root: the least period of `w` dividing |w|.
template <class T>
std::size_t primitive_root_length(std::span<const T> w)
{
    const std::size_t n = w.size();
    if (n == 0) return 0;
    std::vector<std::size_t> border(n + 1, 0);
    for (std::size_t i = 1, k = 0; i < n; ++i) {
        while (k > 0 && w[i] != w[k]) k = border[k];
        if (w[i] == w[k]) ++k;
        border[i + 1] = k;
    }
    const std::size_t period = n - border[n];
    return n % period == 0 ? period : n;
}

Word primitive_root(std::span<const Letter> w);
std::string primitive_root(std::string_view w);

struct ZCandidate {
    Word z;
    /// A gap u with h^{|A|}(b u) outside z*, when one exists.
    std::optional<Word> mismatch;
};

ZCandidate z_candidate(const D0LSystem& system, Letter pivot, std::span<const Word> u_hat,
                       const Limits& limits = {});

/// Least divisor d of a verified period p that is itself an eventual period.
std::size_t minimal_period(const D0LSystem& system, std::size_t p, const Limits& limits = {});

struct Preperiod {
    std::size_t value;
    bool exact;

    bool operator==(const Preperiod&) const = default;
};

/// Exact when no infinite letter recurs; otherwise a stabilized lower bound from
/// streamed prefixes. `axiom_expansion`, when nonempty, replaces the axiom letter
/// (the fresh letter of a normalized member) by the word it stands for.
Preperiod preperiod_estimate(const D0LSystem& system, std::size_t period,
                             const Limits& limits = {}, std::string_view axiom_expansion = {});

enum class VerdictKind {
    ultimately_periodic,
    not_ultimately_periodic,
    no_infinite_word,
    unknown_limit,
    resource_limit,
};

const char* to_string(VerdictKind kind);

namespace witness {
struct Period {
    Word z;
};
struct UnreachablePivot {
    Letter letter;
};
struct Pumping {
    PumpingWitness data;
};
struct CommutationFailure {
    Word first;
    Word second;
};
struct ZMembershipFailure {
    Word z;
    Word gap;
};
struct ZTestFailure {
    Word z;
};
}  // namespace witness

using Witness = std::variant<std::monostate, witness::Period, witness::UnreachablePivot,
                             witness::Pumping, witness::CommutationFailure,
                             witness::ZMembershipFailure, witness::ZTestFailure>;

const char* witness_kind(const Witness& w);

struct Verdict {
    VerdictKind kind = VerdictKind::unknown_limit;
    std::optional<std::size_t> period;
    std::optional<std::size_t> minimal_period;
    std::optional<Preperiod> preperiod;
    std::optional<Letter> pivot;
    Witness witness;
    std::string message;
};

struct DecideOptions {
    /// Pivot symbol to use instead of the least letter of A1; ignored when not in A1.
    std::optional<char> pivot;
};

/// The decision on one single-letter prolongable system, already restricted to
/// its occurring letters. Preperiods refer to this system's own fixed point
/// unless `axiom_expansion` is given.
Verdict decide_member(const D0LSystem& restricted, const DecideOptions& options = {},
                      const Limits& limits = {}, std::string_view axiom_expansion = {});

struct MemberDecision {
    std::optional<FamilyMember> member;
    /// The member restricted to its occurring letters; witnesses refer to it.
    std::optional<D0LSystem> restricted;
    Verdict verdict;
};

struct Decision {
    LimitStatus status;
    std::optional<PrefixPair> pair;
    /// One entry per family member; a single memberless entry when the family is empty.
    std::vector<MemberDecision> members;
};

Decision decide_ultimate_periodicity(const D0LSystem& system, const DecideOptions& options = {},
                                     const Limits& limits = {});

}  // namespace d0l
