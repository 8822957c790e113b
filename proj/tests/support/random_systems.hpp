#pragma once

#include <random>
#include <string>

#include "d0l/core.hpp"

namespace d0l::testing {

D0LSystem corpus(const std::string& name);
std::vector<std::string> corpus_names();

/// Parses rules written as "a:ab,b:b" with the first rule's letter as axiom.
D0LSystem make(const std::string& axiom, const std::vector<std::string>& rules);

struct RandomShape {
    std::size_t max_letters = 4;
    std::size_t max_image = 4;
    bool erasing = false;
};

/// A random system with a single-letter axiom on which it is prolongable.
D0LSystem random_prolongable(std::mt19937_64& rng, const RandomShape& shape = {});
/// A random morphism over 1..max_letters letters.
Morphism random_morphism(std::mt19937_64& rng, const RandomShape& shape = {});
Word random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_length);

/// Same system with letter ids permuted and symbols replaced by other ones.
D0LSystem renamed(const D0LSystem& system, std::mt19937_64& rng);
/// h^2 with the same axiom.
D0LSystem squared(const D0LSystem& system);

}  // namespace d0l::testing
