#include "d0l/normalize.hpp"

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "d0l/classify.hpp"

namespace d0l {

const char* to_string(LimitStatus status)
{
    switch (status) {
    case LimitStatus::nonempty_limit: return "nonempty-limit";
    case LimitStatus::no_infinite_word: return "no-infinite-word";
    case LimitStatus::unknown_limit: return "unknown-limit";
    }
    return "unknown-limit";
}

std::optional<PrefixPair> find_prefix_pair(const D0LSystem& system, const Limits& limits)
{
    const auto& h = system.morphism();
    const auto& u = system.axiom();

    // lengths[t] = |h^t(u)|
    std::vector<BigInt> lengths;
    std::vector<BigInt> per_letter(h.size(), BigInt(1));
    for (std::size_t t = 0; t <= limits.max_steps; ++t) {
        BigInt total = 0;
        for (Letter l : u) total += per_letter[l];
        lengths.push_back(std::move(total));
        std::vector<BigInt> next(h.size());
        for (Letter b = 0; b < h.size(); ++b)
            for (Letter c : h.image(b)) next[b] += per_letter[c];
        per_letter.swap(next);
    }

    std::uint64_t steps = 0;
    for (std::size_t p = 0; p < limits.max_steps; ++p)
        for (std::size_t end = p + 1; end <= limits.max_steps; ++end) {
            if (lengths[p] >= lengths[end]) continue;
            if (image_is_prefix(h, u, p, u, end, steps, limits)) return PrefixPair{p, end - p};
        }
    return std::nullopt;
}

QuickStatus quick_limit_status(const D0LSystem& system)
{
    // Only finite letters: the orbit of the axiom is a finite set of words.
    auto finite = finite_letters(system.morphism());
    const auto& u = system.axiom();
    bool all_finite = std::all_of(u.begin(), u.end(), [&](Letter l) { return finite.contains(l); });
    return all_finite ? QuickStatus::no_infinite_word : QuickStatus::nonempty_possible;
}

char fresh_symbol(const Alphabet& alphabet)
{
    constexpr std::string_view preferred = "$%&@*+=!?~^_|";
    for (char c : preferred)
        if (!alphabet.contains(c)) return c;
    for (int c = 33; c < 127; ++c)
        if (is_letter_symbol(static_cast<char>(c)) && !alphabet.contains(static_cast<char>(c)))
            return static_cast<char>(c);
    throw PreconditionError("no unused symbol left for a fresh axiom letter");
}

namespace {

Word prolongation_tail(const Morphism& h, std::span<const Letter> u)
{
    Word image = d0l::apply(h, u);
    if (image.size() <= u.size() || !std::equal(u.begin(), u.end(), image.begin()))
        throw PreconditionError("axiom is not a proper prefix of its image");
    Word tail(image.begin() + static_cast<std::ptrdiff_t>(u.size()), image.end());
    auto mortal = mortal_letters(h);
    if (std::all_of(tail.begin(), tail.end(), [&](Letter l) { return mortal.contains(l); }))
        throw PreconditionError("axiom extension consists of mortal letters only");
    return tail;
}

D0LSystem with_fresh_axiom(const Morphism& h, const Word& tail, char symbol)
{
    Alphabet alphabet = h.alphabet();
    Letter fresh = alphabet.add(symbol);
    std::vector<Word> images = h.images();
    Word image{fresh};
    image.insert(image.end(), tail.begin(), tail.end());
    images.push_back(std::move(image));
    return D0LSystem(Morphism(std::move(alphabet), std::move(images)), Word{fresh});
}

}  // namespace

D0LSystem to_letter_axiom(const Morphism& h, std::span<const Letter> u, bool force_fresh)
{
    Word tail = prolongation_tail(h, u);
    if (u.size() == 1 && !force_fresh) return D0LSystem(h, Word(u.begin(), u.end()));
    return with_fresh_axiom(h, tail, fresh_symbol(h.alphabet()));
}

NormalizedFamily decompose(const D0LSystem& system, const Limits& limits)
{
    NormalizedFamily family{LimitStatus::unknown_limit, std::nullopt, {}};
    if (quick_limit_status(system) == QuickStatus::no_infinite_word) {
        family.status = LimitStatus::no_infinite_word;
        return family;
    }
    family.pair = find_prefix_pair(system, limits);
    if (!family.pair) return family;
    family.status = LimitStatus::nonempty_limit;

    const auto [p, q] = *family.pair;
    const auto& h = system.morphism();
    Morphism hq = q == 1 ? h : power(h, q, limits.max_len);
    const char symbol = fresh_symbol(h.alphabet());

    Word w = iterate(h, system.axiom(), p, limits.max_len);
    for (std::size_t i = 0; i < q; ++i) {
        if (i > 0) w = iterate(h, w, 1, limits.max_len);
        Word tail;
        try {
            tail = prolongation_tail(hq, w);
        } catch (const PreconditionError& e) {
            throw InternalError(std::string("normalized member is not prolongable: ") + e.what());
        }
        const bool fresh = w.size() != 1;
        D0LSystem member = fresh ? with_fresh_axiom(hq, tail, symbol) : D0LSystem(hq, w);
        bool duplicate = std::any_of(family.members.begin(), family.members.end(),
                                     [&](const FamilyMember& m) { return m.system == member; });
        if (duplicate) continue;
        family.members.push_back({std::move(member), i, to_string(h.alphabet(), w), fresh});
    }
    return family;
}

D0LSystem restrict_to_occurring(const D0LSystem& system)
{
    if (!is_letter_prolongable(system))
        throw PreconditionError("restrict_to_occurring needs a single-letter prolongable axiom");
    const auto& h = system.morphism();
    auto keep = occurring_letters(h, system.axiom().front());
    if (keep.size() == h.size()) return system;

    Alphabet alphabet;
    std::vector<Letter> to_new(h.size(), 0);
    for (Letter b : keep) to_new[b] = alphabet.add(h.alphabet().symbol(b));
    std::vector<Word> images;
    images.reserve(keep.size());
    for (Letter b : keep) {
        Word img;
        img.reserve(h.image(b).size());
        for (Letter c : h.image(b)) img.push_back(to_new[c]);
        images.push_back(std::move(img));
    }
    return D0LSystem(Morphism(std::move(alphabet), std::move(images)),
                     Word{to_new[system.axiom().front()]});
}

}  // namespace d0l
