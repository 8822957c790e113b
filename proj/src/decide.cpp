#include "d0l/decide.hpp"

#include <algorithm>
#include <map>

#include "d0l/ksets.hpp"

namespace d0l {

const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

const char* to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::ultimately_periodic: return "ultimately-periodic";
    case VerdictKind::not_ultimately_periodic: return "not-ultimately-periodic";
    case VerdictKind::no_infinite_word: return "no-infinite-word";
    case VerdictKind::unknown_limit: return "unknown-limit";
    case VerdictKind::resource_limit: return "resource-limit";
    }
    return "unknown-limit";
}

const char* witness_kind(const Witness& w)
{
    struct Name {
        const char* operator()(std::monostate) const { return "none"; }
        const char* operator()(const witness::Period&) const { return "period"; }
        const char* operator()(const witness::UnreachablePivot&) const { return "unreachable-pivot"; }
        const char* operator()(const witness::Pumping&) const { return "pumping"; }
        const char* operator()(const witness::CommutationFailure&) const { return "commutation-failure"; }
        const char* operator()(const witness::ZMembershipFailure&) const { return "z-membership-failure"; }
        const char* operator()(const witness::ZTestFailure&) const { return "z-test-failure"; }
    };
    return std::visit(Name{}, w);
}

bool eventually_equal(const Morphism& h, std::span<const Letter> u, std::span<const Letter> v,
                      const Limits& limits)
{
    return lazy_equal(h, u, v, std::max<std::size_t>(h.size(), 1), limits);
}

EventualCycle periodic_case_no_infinite_recurrent(const D0LSystem& system, const Limits& limits)
{
    const auto& h = system.morphism();
    const Letter a = system.axiom().front();
    auto tail = prolongable_tail(h, a);
    if (system.axiom().size() != 1 || !tail)
        throw PreconditionError("needs a single-letter prolongable axiom");
    auto finite = finite_letters(h);
    if (!std::all_of(tail->begin(), tail->end(), [&](Letter l) { return finite.contains(l); }))
        throw PreconditionError("tail of the axiom image contains an infinite letter");

    std::map<Word, std::size_t> first_seen;
    std::vector<Word> orbit;
    Word w = *tail;
    for (;;) {
        auto [it, inserted] = first_seen.emplace(w, orbit.size());
        if (!inserted) {
            EventualCycle out{it->second, orbit.size() - it->second, Word{a}, {}};
            for (std::size_t k = 0; k < out.n; ++k)
                out.transient.insert(out.transient.end(), orbit[k].begin(), orbit[k].end());
            for (std::size_t k = out.n; k < orbit.size(); ++k)
                out.cycle.insert(out.cycle.end(), orbit[k].begin(), orbit[k].end());
            if (out.transient.size() + out.cycle.size() > limits.max_len)
                throw ResourceLimit("eventual cycle exceeds the materialization cap");
            return out;
        }
        if (orbit.size() > limits.max_states)
            throw ResourceLimit("orbit of the axiom tail did not close within the state budget");
        orbit.push_back(w);
        w = iterate(h, w, 1, limits.max_len);
    }
}

namespace {

// Letters reachable from `from` in at most `steps` applications of h.
std::vector<bool> reachable_within(const Morphism& h, Letter from, std::size_t steps)
{
    std::vector<bool> seen(h.size(), false);
    std::vector<Letter> layer{from};
    seen[from] = true;
    for (std::size_t s = 0; s < steps && !layer.empty(); ++s) {
        std::vector<Letter> next;
        for (Letter b : layer)
            for (Letter c : h.image(b))
                if (!seen[c]) {
                    seen[c] = true;
                    next.push_back(c);
                }
        layer.swap(next);
    }
    return seen;
}

Letter require_pivot(const LetterClassification& classes, Letter pivot)
{
    if (!classes.a1.contains(pivot))
        throw PreconditionError("pivot must be an infinite recurrent letter");
    return pivot;
}

}  // namespace

std::optional<Letter> check_pivot_reachability(const D0LSystem& system,
                                               const LetterClassification& classes, Letter pivot)
{
    require_pivot(classes, pivot);
    const auto& h = system.morphism();
    for (Letter c : classes.infinite)
        if (!reachable_within(h, c, h.size())[pivot]) return c;
    return std::nullopt;
}

std::optional<PumpingWitness> check_pumping(const D0LSystem& system,
                                            const LetterClassification& classes, Letter pivot,
                                            const Limits& limits)
{
    require_pivot(classes, pivot);
    const auto& h = system.morphism();
    // A flank made of finite letters keeps them finite, so it is pivot-free; it
    // survives forever iff it holds a non-mortal letter.
    auto pumps = [&](std::span<const Letter> flank) {
        if (flank.empty()) return false;
        bool all_finite = std::all_of(flank.begin(), flank.end(),
                                      [&](Letter l) { return classes.finite.contains(l); });
        bool survives = std::any_of(flank.begin(), flank.end(),
                                    [&](Letter l) { return !classes.mortal.contains(l); });
        return all_finite && survives;
    };

    for (Letter c : classes.a1) {
        Word image{c};
        for (std::size_t s = 1; s <= h.size(); ++s) {
            image = iterate(h, image, 1, limits.max_len);
            for (std::size_t k = 0; k < image.size(); ++k) {
                if (image[k] != c) continue;
                std::span<const Letter> whole(image);
                auto left = whole.first(k);
                auto right = whole.subspan(k + 1);
                if (pumps(left)) return PumpingWitness{c, s, Side::left, Word(left.begin(), left.end()), k};
                if (pumps(right))
                    return PumpingWitness{c, s, Side::right, Word(right.begin(), right.end()), k};
            }
        }
    }
    return std::nullopt;
}

namespace {

std::vector<Word> interior_gaps(std::span<const Letter> w, Letter pivot, bool distinct)
{
    std::vector<Word> gaps;
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != pivot) continue;
        if (last) {
            Word gap(w.begin() + static_cast<std::ptrdiff_t>(*last + 1),
                     w.begin() + static_cast<std::ptrdiff_t>(i));
            if (!distinct || std::find(gaps.begin(), gaps.end(), gap) == gaps.end())
                gaps.push_back(std::move(gap));
        }
        last = i;
    }
    return gaps;
}

}  // namespace

GapAnalysis certified_gaps(const D0LSystem& system, Letter pivot, const Limits& limits,
                           std::size_t sample_length)
{
    const auto& h = system.morphism();
    const std::size_t d = h.size();
    // Two pivots appear in h^n(pivot) for some n <= |A|^2 once the finiteness
    // checks have passed; the cap only guards against a broken invariant.
    const std::size_t cap = d * d + d + 8;

    // count[c] = occurrences of the pivot in h^n(c), saturated at 2.
    std::vector<std::uint8_t> count(d, 0);
    count[pivot] = 1;
    std::size_t n_star = 0;
    for (std::size_t n = 1; n <= cap; ++n) {
        std::vector<std::uint8_t> next(d, 0);
        for (Letter c = 0; c < d; ++c) {
            unsigned sum = 0;
            for (Letter x : h.image(c)) sum += count[x];
            next[c] = static_cast<std::uint8_t>(std::min(sum, 2u));
        }
        count.swap(next);
        if (count[pivot] >= 2) {
            n_star = n;
            break;
        }
    }
    if (n_star == 0)
        throw InternalError("no power of the pivot image holds two pivots within the safety cap");

    GapAnalysis out{pivot, true, std::nullopt, n_star, {}, {}};
    Word image = iterate(h, Word{pivot}, n_star, limits.max_len);
    out.u_hat = interior_gaps(image, pivot, true);

    if (sample_length > 0) {
        FixedPointStream stream(system);
        out.sampled_gaps = interior_gaps(stream.prefix(sample_length), pivot, true);
    }
    return out;
}

std::optional<std::pair<Word, Word>> commutation_test(const D0LSystem& system, Letter pivot,
                                                      std::span<const Word> u_hat,
                                                      const Limits& limits)
{
    const auto& h = system.morphism();
    for (std::size_t i = 0; i < u_hat.size(); ++i)
        for (std::size_t j = i + 1; j < u_hat.size(); ++j) {
            Word ij{pivot}, ji{pivot};
            ij.insert(ij.end(), u_hat[i].begin(), u_hat[i].end());
            ij.push_back(pivot);
            ij.insert(ij.end(), u_hat[j].begin(), u_hat[j].end());
            ji.insert(ji.end(), u_hat[j].begin(), u_hat[j].end());
            ji.push_back(pivot);
            ji.insert(ji.end(), u_hat[i].begin(), u_hat[i].end());
            if (!lazy_equal(h, ij, ji, h.size(), limits)) return std::pair{u_hat[i], u_hat[j]};
        }
    return std::nullopt;
}

Word primitive_root(std::span<const Letter> w)
{
    if (w.empty()) throw PreconditionError("primitive root of the empty word");
    return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(primitive_root_length(w)));
}

std::string primitive_root(std::string_view w)
{
    if (w.empty()) throw PreconditionError("primitive root of the empty word");
    return std::string(w.substr(0, primitive_root_length(std::span<const char>(w))));
}

ZCandidate z_candidate(const D0LSystem& system, Letter pivot, std::span<const Word> u_hat,
                       const Limits& limits)
{
    if (u_hat.empty()) throw PreconditionError("z_candidate needs a nonempty gap set");
    const auto& h = system.morphism();
    auto image_of = [&](const Word& gap) {
        Word w{pivot};
        w.insert(w.end(), gap.begin(), gap.end());
        return iterate(h, w, h.size(), limits.max_len);
    };

    ZCandidate out{primitive_root(image_of(u_hat.front())), std::nullopt};
    for (std::size_t i = 1; i < u_hat.size(); ++i) {
        Word w = image_of(u_hat[i]);
        bool member = w.size() % out.z.size() == 0;
        for (std::size_t k = 0; member && k < w.size(); ++k)
            member = w[k] == out.z[k % out.z.size()];
        if (!member) {
            out.mismatch = u_hat[i];
            break;
        }
    }
    return out;
}

std::size_t minimal_period(const D0LSystem& system, std::size_t p, const Limits& limits)
{
    if (p == 0) throw PreconditionError("period must be positive");
    const auto identity = identity_coding();
    for (std::size_t d = 1; d <= p; ++d) {
        if (p % d != 0) continue;
        if (is_ultimately_p_periodic(system, identity, d, limits)) return d;
    }
    throw PreconditionError("the given period is not an eventual period of the fixed point");
}

namespace {

// Least t with w[n] == w[n + p] for every t <= n < |w| - p.
std::size_t periodic_from(std::string_view w, std::size_t p)
{
    if (w.size() <= p) return 0;
    std::size_t t = w.size() - p;
    while (t > 0 && w[t - 1] == w[t - 1 + p]) --t;
    return t;
}

std::string expanded_prefix(FixedPointStream& stream, std::size_t length,
                             std::string_view axiom_expansion)
{
    std::string out = to_string(stream.system().alphabet(), stream.prefix(length));
    if (!axiom_expansion.empty()) out.replace(0, 1, axiom_expansion);
    return out;
}

}  // namespace

Preperiod preperiod_estimate(const D0LSystem& system, std::size_t period, const Limits& limits,
                             std::string_view axiom_expansion)
{
    if (period == 0) throw PreconditionError("period must be positive");
    const auto& h = system.morphism();
    const auto classes = classification(h, system.axiom().front());

    if (classes.a1.empty()) {
        // Exact: the word is transient . cycle^omega; slide the cycle back over the transient.
        auto cycle = periodic_case_no_infinite_recurrent(system, limits);
        std::string transient = to_string(h.alphabet(), cycle.transient);
        if (!axiom_expansion.empty()) transient.replace(0, 1, axiom_expansion);
        std::string z = primitive_root(std::string_view(to_string(h.alphabet(), cycle.cycle)));
        while (!transient.empty() && transient.back() == z.back()) {
            transient.pop_back();
            std::rotate(z.rbegin(), z.rbegin() + 1, z.rend());
        }
        return {transient.size(), true};
    }

    FixedPointStream stream(system);
    std::size_t length = std::max<std::size_t>(1024, 32 * period);
    std::size_t previous = periodic_from(expanded_prefix(stream, length, axiom_expansion), period);
    int stable = 0;
    while (stable < 2 || length < previous + 11 * period + 1) {
        if (2 * length > limits.max_len) break;
        length *= 2;
        std::size_t current = periodic_from(expanded_prefix(stream, length, axiom_expansion), period);
        stable = current == previous ? stable + 1 : 0;
        previous = current;
    }
    return {previous, false};
}

Verdict decide_member(const D0LSystem& restricted, const DecideOptions& options,
                      const Limits& limits, std::string_view axiom_expansion)
{
    Verdict v;
    try {
        const auto& h = restricted.morphism();
        const Letter a = restricted.axiom().front();
        const auto classes = classification(h, a);

        if (classes.a1.empty()) {
            auto cycle = periodic_case_no_infinite_recurrent(restricted, limits);
            Word z = primitive_root(cycle.cycle);
            v.kind = VerdictKind::ultimately_periodic;
            v.period = cycle.cycle.size();
            v.minimal_period = z.size();
            v.preperiod = preperiod_estimate(restricted, z.size(), limits, axiom_expansion);
            v.witness = witness::Period{std::move(z)};
            return v;
        }

        Letter pivot = *classes.a1.begin();
        if (options.pivot) {
            auto chosen = h.alphabet().find(*options.pivot);
            if (chosen && classes.a1.contains(*chosen)) pivot = *chosen;
        }
        v.pivot = pivot;
        v.kind = VerdictKind::not_ultimately_periodic;

        if (auto c = check_pivot_reachability(restricted, classes, pivot)) {
            v.witness = witness::UnreachablePivot{*c};
            return v;
        }
        if (auto pumping = check_pumping(restricted, classes, pivot, limits)) {
            v.witness = witness::Pumping{std::move(*pumping)};
            return v;
        }
        auto gaps = certified_gaps(restricted, pivot, limits);
        if (auto pair = commutation_test(restricted, pivot, gaps.u_hat, limits)) {
            v.witness = witness::CommutationFailure{std::move(pair->first), std::move(pair->second)};
            return v;
        }
        auto candidate = z_candidate(restricted, pivot, gaps.u_hat, limits);
        if (candidate.mismatch) {
            v.witness = witness::ZMembershipFailure{std::move(candidate.z), std::move(*candidate.mismatch)};
            return v;
        }
        const std::size_t p = candidate.z.size();
        if (!is_ultimately_p_periodic(restricted, identity_coding(), p, limits)) {
            v.witness = witness::ZTestFailure{std::move(candidate.z)};
            return v;
        }
        v.kind = VerdictKind::ultimately_periodic;
        v.period = p;
        v.minimal_period = minimal_period(restricted, p, limits);
        // The least start of p-periodicity is the same for every multiple of the
        // minimal period, so the cheaper scan is used.
        v.preperiod = preperiod_estimate(restricted, *v.minimal_period, limits, axiom_expansion);
        v.witness = witness::Period{std::move(candidate.z)};
        return v;
    } catch (const ResourceLimit& e) {
        Verdict capped;
        capped.kind = VerdictKind::resource_limit;
        capped.pivot = v.pivot;
        capped.message = e.what();
        return capped;
    }
}

Decision decide_ultimate_periodicity(const D0LSystem& system, const DecideOptions& options,
                                     const Limits& limits)
{
    Decision decision{LimitStatus::unknown_limit, std::nullopt, {}};
    NormalizedFamily family;
    try {
        family = decompose(system, limits);
    } catch (const ResourceLimit& e) {
        Verdict v;
        v.kind = VerdictKind::resource_limit;
        v.message = e.what();
        decision.members.push_back({std::nullopt, std::nullopt, std::move(v)});
        return decision;
    }
    decision.status = family.status;
    decision.pair = family.pair;

    if (family.status != LimitStatus::nonempty_limit) {
        Verdict v;
        v.kind = family.status == LimitStatus::no_infinite_word ? VerdictKind::no_infinite_word
                                                                : VerdictKind::unknown_limit;
        decision.members.push_back({std::nullopt, std::nullopt, std::move(v)});
        return decision;
    }

    for (auto& member : family.members) {
        D0LSystem restricted = restrict_to_occurring(member.system);
        std::string_view expansion = member.fresh ? std::string_view(member.source) : std::string_view{};
        Verdict v = decide_member(restricted, options, limits, expansion);
        decision.members.push_back({member, std::move(restricted), std::move(v)});
    }
    return decision;
}

}  // namespace d0l
