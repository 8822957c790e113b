#pragma once

#include <vector>

#include "d0l/core.hpp"
#include "d0l/graph.hpp"

namespace d0l {

/// Vertices are letters; b -> c when c occurs in h(b).
struct OccurrenceGraph {
    graph::Adjacency successors;
    /// multiplicity[b][c] = occurrences of c in h(b).
    std::vector<std::vector<std::size_t>> multiplicity;
};

OccurrenceGraph occurrence_graph(const Morphism& h);

/// Letters b with h^n(b) empty for some n (least fixpoint from the erased letters).
LetterSet mortal_letters(const Morphism& h);

/// Non-erasing morphism g over the non-mortal letters B, g(b) = h^{|A|}(b) with mortal letters removed.
struct Projection {
    Morphism g;
    /// g's letter i is original letter to_original[i].
    std::vector<Letter> to_original;
};

Projection projection_g(const Morphism& h, const Limits& limits = {});

/// Letters whose orbit {h^n(b)} is finite.
LetterSet finite_letters(const Morphism& h);

/// Letters occurring infinitely often in h^omega(a); h must be prolongable on a.
LetterSet recurrent_letters(const Morphism& h, Letter a);

/// Letters reachable from `from` in the occurrence graph, `from` included.
LetterSet occurring_letters(const Morphism& h, Letter from);

struct LetterClassification {
    LetterSet mortal;
    LetterSet finite;
    LetterSet infinite;
    LetterSet recurrent;
    LetterSet a1;  // infinite and recurrent
    LetterSet occurring;
};

LetterClassification classification(const Morphism& h, Letter a);

}  // namespace d0l
