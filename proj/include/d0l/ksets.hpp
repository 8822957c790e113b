#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "d0l/core.hpp"
#include "d0l/graph.hpp"

namespace d0l {

/// M^r == M^{r+q} entrywise mod p, hence |h^r(b)| == |h^{r+q}(b)| (mod p) for every b.
struct MatrixCycle {
    std::uint64_t p;
    std::size_t r;
    std::size_t q;
    /// residues[t][b] = |h^t(b)| mod p for t <= r + q.
    std::vector<std::vector<std::uint64_t>> residues;
};

/// Least r >= 1, then least q >= 1, by first-repeat detection on M^n mod p.
MatrixCycle find_matrix_cycle(const Morphism& h, std::uint64_t p, const Limits& limits = {});

/// (letter, residue mod p)
using ResidueVertex = std::pair<Letter, std::uint64_t>;
using ResidueSet = std::set<ResidueVertex>;

/// {(c, j) : c occurs in h^t(b) at an offset == j (mod p)}, by dynamic programming over t.
ResidueSet residue_occurrences(const Morphism& h, Letter b, std::size_t t, std::uint64_t p);

/// Residue graph of a fixed point, refined by prefix-length signatures.
///
/// A position P of x = h^omega(a) with letter c is represented by the vertex
/// (c, s) where s[t] = |h^t(x_0..x_{P-1})| mod p for t < r + q; s[0] is the
/// residue of P. Since M^{r+q} == M^r, s[r+q] == s[r], so the signature
/// determines every later length residue and the vertex set is finite.
/// The letters of h(c) at offsets m produce the children
/// (h(c)_m, s[t+1] + |h^t(h(c)_0..h(c)_{m-1})|). Initial vertices are the
/// children of position 0 other than position 0 itself.
class ResidueGraph {
public:
    struct Node {
        Letter letter;
        std::vector<std::uint32_t> signature;

        std::uint64_t residue() const { return signature.front(); }
        bool operator==(const Node&) const = default;
    };

    std::uint64_t p() const noexcept { return cycle_.p; }
    const MatrixCycle& cycle() const noexcept { return cycle_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const graph::Adjacency& edges() const noexcept { return edges_; }
    const std::vector<graph::Vertex>& initial() const noexcept { return initial_; }
    const std::vector<graph::Vertex>& recurrent() const noexcept { return recurrent_; }

    ResidueSet projected_initial() const;
    ResidueSet projected_recurrent() const;
    std::set<std::pair<ResidueVertex, ResidueVertex>> projected_edges() const;

private:
    friend ResidueGraph build_residue_graph(const D0LSystem&, std::uint64_t, const Limits&);

    MatrixCycle cycle_;
    std::vector<Node> nodes_;
    graph::Adjacency edges_;
    std::vector<graph::Vertex> initial_;
    std::vector<graph::Vertex> recurrent_;
};

/// Pre: single-letter prolongable system. ResourceLimit once the vertex cost (see Limits) exceeds limits.max_states.
ResidueGraph build_residue_graph(const D0LSystem& system, std::uint64_t p,
                                 const Limits& limits = {});

/// (letter, residue) pairs of vertices fed by infinitely many walks from initial vertices.
ResidueSet recurrent_vertices(const ResidueGraph& graph);

struct KSetReport {
    std::uint64_t p;
    std::size_t r;
    std::size_t q;
    /// sets[k] = letters occurring infinitely often at positions == k (mod p).
    std::vector<LetterSet> sets;
};

KSetReport k_sets(const D0LSystem& system, std::uint64_t p, const Limits& limits = {});

/// Letter-to-letter map on symbols; symbols without a rule map to themselves.
class Coding {
public:
    Coding();

    void set(char from, char to);
    char operator()(char symbol) const { return map_[static_cast<unsigned char>(symbol)]; }

private:
    std::array<char, 256> map_;
};

Coding identity_coding();

/// Rules "x -> y" with single-letter right-hand sides; every letter of `alphabet` needs a rule.
Coding parse_coding(std::string_view text, const Alphabet& alphabet);

/// True iff within every k-set all letters have the same coded symbol.
bool is_ultimately_p_periodic(const D0LSystem& system, const Coding& coding, std::uint64_t p,
                              const Limits& limits = {});
bool is_ultimately_p_periodic(const KSetReport& report, const Alphabet& alphabet,
                              const Coding& coding);

}  // namespace d0l
