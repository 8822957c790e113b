#include "d0l/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace d0l::oracle {

Word expand_prefix(const D0LSystem& system, std::size_t length)
{
    const auto& h = system.morphism();
    const Word& u = system.axiom();
    Word w = d0l::apply(h, u);
    if (w.size() <= u.size() || !std::equal(u.begin(), u.end(), w.begin()))
        throw PreconditionError("expand_prefix: the axiom is not a proper prefix of its image");
    // w = h^k(u) and w[0, done) = h^{k-1}(u). Then h^{k+1}(u) = w h(w[done, |w|)).
    std::size_t done = u.size();
    while (w.size() < length) {
        const std::size_t end = w.size();
        for (std::size_t i = done; i < end && w.size() < length; ++i) {
            const auto& img = h.image(w[i]);
            w.insert(w.end(), img.begin(), img.end());
        }
        if (w.size() == end) throw PreconditionError("expand_prefix: the word stopped growing");
        done = end;
    }
    w.resize(length);
    return w;
}

std::size_t naive_p_periodic_from(std::span<const Letter> w, std::size_t p)
{
    std::size_t best = 0;
    for (std::size_t n = 0; n + p < w.size(); ++n)
        if (w[n] != w[n + p]) best = n + 1;
    return best;
}

std::vector<LetterSet> naive_k_sets(std::span<const Letter> w, std::size_t p, std::size_t begin,
                                    std::size_t end)
{
    std::vector<LetterSet> sets(p);
    for (std::size_t n = begin; n < end && n < w.size(); ++n) sets[n % p].insert(w[n]);
    return sets;
}

Gaps naive_gaps(std::span<const Letter> w, Letter pivot)
{
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == pivot) at.push_back(i);
    if (at.size() < 2) throw PreconditionError("naive_gaps needs two pivot occurrences");
    Gaps g;
    g.prefix.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at[0]));
    for (std::size_t k = 1; k < at.size(); ++k)
        g.interior.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(at[k - 1] + 1),
                                w.begin() + static_cast<std::ptrdiff_t>(at[k]));
    return g;
}

PrefixReport prefix_report(const D0LSystem& system, std::size_t length, std::size_t p,
                           std::optional<Letter> pivot)
{
    PrefixReport r;
    r.prefix = expand_prefix(system, length);
    const std::size_t d = system.morphism().size();
    r.letter_counts.assign(d, 0);
    r.residue_counts.assign(d, std::vector<std::size_t>(p, 0));
    for (std::size_t i = 0; i < r.prefix.size(); ++i) {
        ++r.letter_counts[r.prefix[i]];
        if (p > 0) ++r.residue_counts[r.prefix[i]][i % p];
    }
    if (pivot && r.letter_counts[*pivot] >= 2) r.gaps = naive_gaps(r.prefix, *pivot);
    return r;
}

namespace {

std::uint64_t state_residue(const std::vector<std::uint64_t>& parikh, std::size_t p)
{
    std::uint64_t sum = 0;
    for (auto x : parikh) sum = (sum + x) % p;
    return sum;
}

}  // namespace

std::set<std::pair<Letter, std::uint64_t>> NaiveResidueGraph::projected_initial() const
{
    std::set<std::pair<Letter, std::uint64_t>> out;
    for (auto s : initial) out.emplace(states[s].first, state_residue(states[s].second, p));
    return out;
}

std::set<std::pair<Letter, std::uint64_t>> NaiveResidueGraph::projected_recurrent() const
{
    std::set<std::pair<Letter, std::uint64_t>> out;
    for (auto s : recurrent) out.emplace(states[s].first, state_residue(states[s].second, p));
    return out;
}

NaiveResidueGraph naive_residue_graph(const D0LSystem& system, std::size_t p,
                                      std::size_t max_states)
{
    if (p == 0) throw PreconditionError("modulus must be positive");
    if (!is_letter_prolongable(system)) throw PreconditionError("needs a prolongable letter axiom");
    const auto& h = system.morphism();
    const std::size_t d = h.size();
    const Letter a = system.axiom().front();

    NaiveResidueGraph g{p, {}, {}, {}, {}};
    std::map<std::pair<Letter, std::vector<std::uint64_t>>, std::size_t> index;
    std::deque<std::size_t> queue;
    auto intern = [&](Letter c, std::vector<std::uint64_t> v) {
        auto key = std::make_pair(c, v);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (g.states.size() >= max_states) throw ResourceLimit("naive residue graph too large");
        std::size_t id = g.states.size();
        index.emplace(key, id);
        g.states.push_back(std::move(key));
        g.edges.emplace_back();
        queue.push_back(id);
        return id;
    };
    // Parikh vector of h(w) is sum over letters x of w of parikh(h(x)).
    auto grow = [&](const std::vector<std::uint64_t>& v) {
        std::vector<std::uint64_t> out(d, 0);
        for (Letter x = 0; x < d; ++x)
            for (Letter y : h.image(x)) out[y] = (out[y] + v[x]) % p;
        return out;
    };

    const std::vector<std::uint64_t> zero(d, 0);
    {
        std::vector<std::uint64_t> v = zero;
        const auto& img = h.image(a);
        for (std::size_t m = 0; m < img.size(); ++m) {
            if (m >= 1) g.initial.insert(intern(img[m], v));
            v[img[m]] = (v[img[m]] + 1) % p;
        }
    }
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        const Letter c = g.states[s].first;
        std::vector<std::uint64_t> v = grow(g.states[s].second);
        for (Letter x : h.image(c)) {
            std::size_t t = intern(x, v);
            g.edges[s].insert(t);
            v[x] = (v[x] + 1) % p;
        }
    }

    // A state recurs iff it lies on, or below, a cycle. Each state checks
    // separately whether it can return to itself.
    const std::size_t n = g.states.size();
    auto reach_from = [&](const std::set<std::size_t>& seeds) {
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> work(seeds.begin(), seeds.end());
        for (auto s : seeds) seen[s] = true;
        while (!work.empty()) {
            auto s = work.front();
            work.pop_front();
            for (auto t : g.edges[s])
                if (!seen[t]) {
                    seen[t] = true;
                    work.push_back(t);
                }
        }
        return seen;
    };
    std::set<std::size_t> on_cycle;
    for (std::size_t s = 0; s < n; ++s) {
        auto seen = reach_from(g.edges[s]);
        if (seen[s]) on_cycle.insert(s);
    }
    auto below = reach_from(on_cycle);
    for (std::size_t s = 0; s < n; ++s)
        if (below[s]) g.recurrent.insert(s);
    return g;
}

bool naive_equal_at(const Morphism& h, const Word& u, const Word& v, std::size_t n,
                    std::size_t cap)
{
    Word x = u, y = v;
    for (std::size_t k = 0; k < n; ++k) {
        Word nx, ny;
        for (Letter c : x) nx.insert(nx.end(), h.image(c).begin(), h.image(c).end());
        for (Letter c : y) ny.insert(ny.end(), h.image(c).begin(), h.image(c).end());
        if (nx.size() > cap || ny.size() > cap) throw ResourceLimit("naive expansion over cap");
        x.swap(nx);
        y.swap(ny);
    }
    return x == y;
}

}  // namespace d0l::oracle
