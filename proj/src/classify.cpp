#include "d0l/classify.hpp"

#include <algorithm>
#include <iterator>

namespace d0l {

OccurrenceGraph occurrence_graph(const Morphism& h)
{
    OccurrenceGraph g;
    g.successors.resize(h.size());
    g.multiplicity.assign(h.size(), std::vector<std::size_t>(h.size(), 0));
    for (Letter b = 0; b < h.size(); ++b) {
        for (Letter c : h.image(b)) {
            if (g.multiplicity[b][c]++ == 0) g.successors[b].push_back(c);
        }
    }
    return g;
}

LetterSet mortal_letters(const Morphism& h)
{
    LetterSet mortal;
    bool grew = true;
    while (grew) {
        grew = false;
        for (Letter b = 0; b < h.size(); ++b) {
            if (mortal.contains(b)) continue;
            const auto& img = h.image(b);
            if (std::all_of(img.begin(), img.end(), [&](Letter c) { return mortal.contains(c); })) {
                mortal.insert(b);
                grew = true;
            }
        }
    }
    return mortal;
}

namespace {

// Non-mortal letters and the erasure of mortal letters from a word, reindexed.
struct Survivors {
    Alphabet alphabet;
    std::vector<Letter> to_original;
    std::vector<std::int64_t> to_new;  // -1 for mortal letters
};

Survivors survivors(const Morphism& h, const LetterSet& mortal)
{
    Survivors s;
    s.to_new.assign(h.size(), -1);
    for (Letter b = 0; b < h.size(); ++b) {
        if (mortal.contains(b)) continue;
        s.to_new[b] = static_cast<std::int64_t>(s.to_original.size());
        s.to_original.push_back(b);
        s.alphabet.add(h.alphabet().symbol(b));
    }
    return s;
}

Word erase_mortal(const Survivors& s, const Word& w)
{
    Word out;
    for (Letter l : w)
        if (s.to_new[l] >= 0) out.push_back(static_cast<Letter>(s.to_new[l]));
    return out;
}

// Letters of a non-erasing morphism whose orbit is finite: the chain
// U1 (orbits of single letters) then U_i = {b : g(b) in U_{i-1}^*}.
std::vector<bool> finite_under_nonerasing(const std::vector<Word>& g)
{
    const std::size_t n = g.size();
    std::vector<bool> in(n, false);
    for (Letter b = 0; b < n; ++b) in[b] = g[b].size() == 1;
    // U1 is the greatest set closed under b -> g(b) among length-one images.
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (Letter b = 0; b < n; ++b)
            if (in[b] && !in[g[b].front()]) {
                in[b] = false;
                shrunk = true;
            }
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (Letter b = 0; b < n; ++b) {
            if (in[b]) continue;
            if (std::all_of(g[b].begin(), g[b].end(), [&](Letter c) { return in[c]; })) {
                in[b] = true;
                grew = true;
            }
        }
    }
    return in;
}

}  // namespace

Projection projection_g(const Morphism& h, const Limits& limits)
{
    auto mortal = mortal_letters(h);
    auto s = survivors(h, mortal);
    Morphism hat = power(h, h.size(), limits.max_len);
    std::vector<Word> images;
    images.reserve(s.to_original.size());
    for (Letter b : s.to_original) images.push_back(erase_mortal(s, hat.image(b)));
    return Projection{Morphism(std::move(s.alphabet), std::move(images)),
                      std::move(s.to_original)};
}

LetterSet finite_letters(const Morphism& h)
{
    // One application of h already has finite orbits exactly where h^{|A|} does,
    // so the projection of h itself drives the chain; no power is materialized.
    auto mortal = mortal_letters(h);
    auto s = survivors(h, mortal);
    std::vector<Word> g;
    g.reserve(s.to_original.size());
    for (Letter b : s.to_original) g.push_back(erase_mortal(s, h.image(b)));
    auto in = finite_under_nonerasing(g);

    LetterSet finite = mortal;
    for (Letter i = 0; i < in.size(); ++i)
        if (in[i]) finite.insert(s.to_original[i]);
    return finite;
}

LetterSet recurrent_letters(const Morphism& h, Letter a)
{
    auto tail = prolongable_tail(h, a);
    if (!tail) throw PreconditionError("recurrent_letters: morphism is not prolongable on the letter");
    auto g = occurrence_graph(h);
    std::vector<graph::Vertex> sources(tail->begin(), tail->end());
    auto fed = graph::cycle_fed(g.successors, sources);
    LetterSet out;
    for (Letter b = 0; b < h.size(); ++b)
        if (fed[b]) out.insert(b);
    return out;
}

LetterSet occurring_letters(const Morphism& h, Letter from)
{
    auto g = occurrence_graph(h);
    graph::Vertex src[] = {from};
    auto seen = graph::reachable(g.successors, src);
    LetterSet out;
    for (Letter b = 0; b < h.size(); ++b)
        if (seen[b]) out.insert(b);
    return out;
}

LetterClassification classification(const Morphism& h, Letter a)
{
    LetterClassification c;
    c.mortal = mortal_letters(h);
    c.finite = finite_letters(h);
    for (Letter b = 0; b < h.size(); ++b)
        if (!c.finite.contains(b)) c.infinite.insert(b);
    c.recurrent = recurrent_letters(h, a);
    std::set_intersection(c.infinite.begin(), c.infinite.end(), c.recurrent.begin(),
                          c.recurrent.end(), std::inserter(c.a1, c.a1.end()));
    c.occurring = occurring_letters(h, a);
    return c;
}

}  // namespace d0l
