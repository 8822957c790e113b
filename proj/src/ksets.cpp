#include "d0l/ksets.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include <boost/functional/hash.hpp>

namespace d0l {

namespace {

template <class T>
struct RangeHash {
    std::size_t operator()(const std::vector<T>& v) const
    {
        return boost::hash_range(v.begin(), v.end());
    }
};

__extension__ typedef unsigned __int128 Wide;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % p);
}

std::vector<std::uint64_t> mat_mul_mod(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b, std::size_t d,
                                       std::uint64_t p)
{
    std::vector<std::uint64_t> out(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const std::uint64_t x = a[i * d + k];
            if (x == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
                out[i * d + j] = (out[i * d + j] + mul_mod(x, b[k * d + j], p)) % p;
        }
    return out;
}

void require_modulus(std::uint64_t p)
{
    if (p == 0) throw PreconditionError("modulus must be at least 1");
}

}  // namespace

MatrixCycle find_matrix_cycle(const Morphism& h, std::uint64_t p, const Limits& limits)
{
    require_modulus(p);
    const std::size_t d = h.size();
    std::vector<std::uint64_t> m(d * d, 0);
    for (Letter j = 0; j < d; ++j)
        for (Letter i : h.image(j)) m[i * d + j] = (m[i * d + j] + 1) % p;

    std::unordered_map<std::vector<std::uint64_t>, std::size_t, RangeHash<std::uint64_t>> seen;
    auto power = m;
    std::size_t exponent = 1;
    MatrixCycle cycle{p, 0, 0, {}};
    for (;;) {
        auto [it, inserted] = seen.emplace(power, exponent);
        if (!inserted) {
            cycle.r = it->second;
            cycle.q = exponent - it->second;
            break;
        }
        if (seen.size() > limits.max_states)
            throw ResourceLimit("incidence matrix powers mod " + std::to_string(p) +
                                " did not repeat within the state budget");
        power = mat_mul_mod(power, m, d, p);
        ++exponent;
    }

    const std::size_t horizon = cycle.r + cycle.q;
    cycle.residues.assign(horizon + 1, std::vector<std::uint64_t>(d, 1 % p));
    for (std::size_t t = 1; t <= horizon; ++t)
        for (Letter b = 0; b < d; ++b) {
            std::uint64_t sum = 0;
            for (Letter c : h.image(b)) sum = (sum + cycle.residues[t - 1][c]) % p;
            cycle.residues[t][b] = sum;
        }
    return cycle;
}

ResidueSet residue_occurrences(const Morphism& h, Letter b, std::size_t t, std::uint64_t p)
{
    require_modulus(p);
    const std::size_t d = h.size();
    // present[c][(e * p) + j]: letter e occurs in h^k(c) at an offset == j.
    std::vector<std::vector<bool>> present(d, std::vector<bool>(d * p, false));
    std::vector<std::uint64_t> len(d, 1 % p);  // |h^k(c)| mod p
    for (Letter c = 0; c < d; ++c) present[c][c * p] = true;

    for (std::size_t k = 0; k < t; ++k) {
        std::vector<std::vector<bool>> next(d, std::vector<bool>(d * p, false));
        std::vector<std::uint64_t> next_len(d, 0);
        for (Letter c = 0; c < d; ++c) {
            std::uint64_t offset = 0;
            for (Letter x : h.image(c)) {
                for (Letter e = 0; e < d; ++e)
                    for (std::uint64_t j = 0; j < p; ++j)
                        if (present[x][e * p + j]) next[c][e * p + (j + offset) % p] = true;
                offset = (offset + len[x]) % p;
            }
            next_len[c] = offset;
        }
        present.swap(next);
        len.swap(next_len);
    }

    ResidueSet out;
    for (Letter e = 0; e < d; ++e)
        for (std::uint64_t j = 0; j < p; ++j)
            if (present[b][e * p + j]) out.emplace(e, j);
    return out;
}

ResidueSet ResidueGraph::projected_initial() const
{
    ResidueSet out;
    for (auto v : initial_) out.emplace(nodes_[v].letter, nodes_[v].residue());
    return out;
}

ResidueSet ResidueGraph::projected_recurrent() const
{
    ResidueSet out;
    for (auto v : recurrent_) out.emplace(nodes_[v].letter, nodes_[v].residue());
    return out;
}

std::set<std::pair<ResidueVertex, ResidueVertex>> ResidueGraph::projected_edges() const
{
    std::set<std::pair<ResidueVertex, ResidueVertex>> out;
    for (graph::Vertex v = 0; v < nodes_.size(); ++v)
        for (auto w : edges_[v])
            out.emplace(ResidueVertex{nodes_[v].letter, nodes_[v].residue()},
                        ResidueVertex{nodes_[w].letter, nodes_[w].residue()});
    return out;
}

ResidueGraph build_residue_graph(const D0LSystem& system, std::uint64_t p, const Limits& limits)
{
    require_modulus(p);
    if (p > std::numeric_limits<std::uint32_t>::max())
        throw PreconditionError("modulus too large for residue signatures");
    if (!is_letter_prolongable(system))
        throw PreconditionError("residue graph needs a single-letter prolongable axiom");

    const auto& h = system.morphism();
    const Letter a = system.axiom().front();

    ResidueGraph g;
    g.cycle_ = find_matrix_cycle(h, p, limits);
    const std::size_t r = g.cycle_.r;
    const std::size_t width = r + g.cycle_.q;
    const auto& residues = g.cycle_.residues;

    // offsets[c][m][t] = |h^t(h(c)_0 .. h(c)_{m-1})| mod p
    std::vector<std::vector<std::vector<std::uint32_t>>> offsets(h.size());
    for (Letter c = 0; c < h.size(); ++c) {
        const auto& img = h.image(c);
        std::vector<std::uint32_t> acc(width, 0);
        for (Letter x : img) {
            offsets[c].push_back(acc);
            for (std::size_t t = 0; t < width; ++t)
                acc[t] = static_cast<std::uint32_t>((acc[t] + residues[t][x]) % p);
        }
    }

    std::unordered_map<std::vector<std::uint32_t>, graph::Vertex, RangeHash<std::uint32_t>> ids;
    std::vector<graph::Vertex> frontier;
    const std::size_t vertex_cost = 1 + width / 8;
    std::size_t spent = 0;
    auto intern = [&](Letter letter, std::vector<std::uint32_t> signature) {
        std::vector<std::uint32_t> key;
        key.reserve(width + 1);
        key.push_back(letter);
        key.insert(key.end(), signature.begin(), signature.end());
        auto [it, inserted] = ids.emplace(std::move(key), static_cast<graph::Vertex>(g.nodes_.size()));
        if (inserted) {
            spent += vertex_cost;
            if (spent > limits.max_states)
                throw ResourceLimit("residue graph mod " + std::to_string(p) +
                                    " exceeds the state budget");
            g.nodes_.push_back({letter, std::move(signature)});
            g.edges_.emplace_back();
            frontier.push_back(it->second);
        }
        return it->second;
    };
    // Child signature: s'[t] = s[t+1] + offset[t], with s[width] == s[r].
    auto child = [&](const std::vector<std::uint32_t>& s, const std::vector<std::uint32_t>& off) {
        std::vector<std::uint32_t> out(width);
        for (std::size_t t = 0; t < width; ++t) {
            const std::uint64_t shifted = t + 1 < width ? s[t + 1] : s[r];
            out[t] = static_cast<std::uint32_t>((shifted + off[t]) % p);
        }
        return out;
    };

    const std::vector<std::uint32_t> root(width, 0);
    for (std::size_t m = 1; m < h.image(a).size(); ++m)
        g.initial_.push_back(intern(h.image(a)[m], child(root, offsets[a][m])));
    std::sort(g.initial_.begin(), g.initial_.end());
    g.initial_.erase(std::unique(g.initial_.begin(), g.initial_.end()), g.initial_.end());

    while (!frontier.empty()) {
        graph::Vertex v = frontier.back();
        frontier.pop_back();
        const Letter c = g.nodes_[v].letter;
        const auto& img = h.image(c);
        for (std::size_t m = 0; m < img.size(); ++m) {
            auto signature = child(g.nodes_[v].signature, offsets[c][m]);
            graph::Vertex w = intern(img[m], std::move(signature));
            auto& out = g.edges_[v];
            if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
        }
    }

    auto fed = graph::cycle_fed(g.edges_, g.initial_);
    for (graph::Vertex v = 0; v < g.nodes_.size(); ++v)
        if (fed[v]) g.recurrent_.push_back(v);
    return g;
}

ResidueSet recurrent_vertices(const ResidueGraph& graph) { return graph.projected_recurrent(); }

KSetReport k_sets(const D0LSystem& system, std::uint64_t p, const Limits& limits)
{
    auto g = build_residue_graph(system, p, limits);
    KSetReport report{p, g.cycle().r, g.cycle().q, std::vector<LetterSet>(p)};
    for (const auto& [letter, k] : g.projected_recurrent()) report.sets[k].insert(letter);
    return report;
}

Coding::Coding()
{
    for (std::size_t i = 0; i < map_.size(); ++i) map_[i] = static_cast<char>(i);
}

void Coding::set(char from, char to) { map_[static_cast<unsigned char>(from)] = to; }

Coding identity_coding() { return Coding{}; }

Coding parse_coding(std::string_view text, const Alphabet& alphabet)
{
    Coding coding;
    std::vector<bool> seen(alphabet.size(), false);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::size_t i = 0;
        auto skip = [&] {
            while (i < line.size() && blank(line[i])) ++i;
        };
        skip();
        if (i == line.size() || line[i] == '#') continue;
        const char from = line[i];
        const std::size_t from_col = ++i;
        skip();
        if (line.substr(i, 2) != "->")
            throw ParseError(ParseErrorKind::syntax, line_no, i + 1, "expected '->'");
        i += 2;
        skip();
        if (i == line.size() || !is_letter_symbol(line[i]))
            throw ParseError(ParseErrorKind::syntax, line_no, i + 1,
                             "coding image must be a single letter");
        const char to = line[i++];
        skip();
        if (i != line.size())
            throw ParseError(ParseErrorKind::syntax, line_no, i + 1,
                             "coding image must be a single letter");

        auto id = alphabet.find(from);
        if (!id)
            throw ParseError(ParseErrorKind::unknown_letter, line_no, from_col,
                             std::string("'") + from + "' is not a letter of the system");
        if (seen[*id])
            throw ParseError(ParseErrorKind::duplicate_rule, line_no, from_col,
                             std::string("second coding rule for '") + from + "'");
        seen[*id] = true;
        coding.set(from, to);
    }
    for (Letter b = 0; b < alphabet.size(); ++b)
        if (!seen[b])
            throw ParseError(ParseErrorKind::unknown_letter, line_no, 1,
                             std::string("no coding rule for '") + alphabet.symbol(b) + "'");
    return coding;
}

bool is_ultimately_p_periodic(const KSetReport& report, const Alphabet& alphabet,
                              const Coding& coding)
{
    for (const auto& set : report.sets) {
        if (set.empty()) continue;
        const char image = coding(alphabet.symbol(*set.begin()));
        for (Letter c : set)
            if (coding(alphabet.symbol(c)) != image) return false;
    }
    return true;
}

bool is_ultimately_p_periodic(const D0LSystem& system, const Coding& coding, std::uint64_t p,
                              const Limits& limits)
{
    return is_ultimately_p_periodic(k_sets(system, p, limits), system.alphabet(), coding);
}

}  // namespace d0l
