#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "d0l/errors.hpp"
#include "d0l/limits.hpp"

namespace d0l {

/// Dense letter id, 0..|A|-1 within one alphabet.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using LetterSet = std::set<Letter>;
using BigInt = boost::multiprecision::cpp_int;

/// Bijection between single-character symbols and dense letter ids.
class Alphabet {
public:
    Alphabet();

    /// Interns `symbol`, returning the existing id when already present.
    Letter add(char symbol);
    std::optional<Letter> find(char symbol) const;
    bool contains(char symbol) const { return find(symbol).has_value(); }
    char symbol(Letter letter) const { return symbols_.at(letter); }
    std::size_t size() const noexcept { return symbols_.size(); }
    const std::vector<char>& symbols() const noexcept { return symbols_; }

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<char> symbols_;
    std::array<std::int32_t, 256> index_;
};

/// Printable, non-whitespace, and not reserved by the file format.
bool is_letter_symbol(char c);

std::string to_string(const Alphabet& alphabet, std::span<const Letter> word);
/// Symbols of `letters` in id order.
std::string to_string(const Alphabet& alphabet, const LetterSet& letters);
/// Throws PreconditionError on a symbol outside the alphabet.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// A total map from letters to words over the same alphabet. Erasing images are allowed.
class Morphism {
public:
    Morphism(Alphabet alphabet, std::vector<Word> images);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return images_.size(); }
    const Word& image(Letter letter) const { return images_.at(letter); }
    const std::vector<Word>& images() const noexcept { return images_; }

    bool operator==(const Morphism& other) const = default;

private:
    Alphabet alphabet_;
    std::vector<Word> images_;
};

/// Morphism plus a nonempty axiom.
class D0LSystem {
public:
    D0LSystem(Morphism morphism, Word axiom);

    const Morphism& morphism() const noexcept { return morphism_; }
    const Word& axiom() const noexcept { return axiom_; }
    const Alphabet& alphabet() const noexcept { return morphism_.alphabet(); }

    bool operator==(const D0LSystem& other) const = default;

private:
    Morphism morphism_;
    Word axiom_;
};

D0LSystem parse_system(std::string_view text);
/// Inverse of parse_system: axiom line then one rule per letter in id order.
std::string format_system(const D0LSystem& system);

Word apply(const Morphism& h, std::span<const Letter> word);
/// h^n(word); ResourceLimit once any intermediate word would exceed `cap` letters.
Word iterate(const Morphism& h, std::span<const Letter> word, std::size_t n, std::size_t cap);
/// The morphism h^n, images materialized under `cap`.
Morphism power(const Morphism& h, std::size_t n, std::size_t cap);

/// The tail y of h(a) = a y when h is prolongable on a: y nonempty with a non-mortal letter.
std::optional<Word> prolongable_tail(const Morphism& h, Letter a);
bool is_prolongable(const Morphism& h, Letter a);
/// Single-letter axiom on which the morphism is prolongable.
bool is_letter_prolongable(const D0LSystem& system);

/// Entry (i, j) counts occurrences of letter i in h(letter j).
class IncidenceMatrix {
public:
    explicit IncidenceMatrix(std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }
    BigInt& at(std::size_t i, std::size_t j) { return entries_[i * dimension_ + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return entries_[i * dimension_ + j]; }

    IncidenceMatrix operator*(const IncidenceMatrix& rhs) const;
    bool operator==(const IncidenceMatrix& other) const = default;

private:
    std::size_t dimension_;
    std::vector<BigInt> entries_;
};

IncidenceMatrix incidence_matrix(const Morphism& h);

/// |h^n(b)| for every letter b, by n rounds of the column-sum recurrence.
std::vector<BigInt> image_lengths(const Morphism& h, std::size_t n);
BigInt image_length(const Morphism& h, Letter b, std::size_t n);
BigInt image_length(const Morphism& h, std::span<const Letter> word, std::size_t n);

/// Left-to-right enumeration of h^n(word) without materializing it.
class ImageCursor {
public:
    ImageCursor(const Morphism& h, std::span<const Letter> word, std::size_t n);

    /// Next letter, or nullopt at the end.
    std::optional<Letter> next();
    std::uint64_t steps() const noexcept { return steps_; }

private:
    struct Frame {
        std::span<const Letter> word;
        std::size_t index;
        std::size_t depth;
    };

    bool alive(Letter letter, std::size_t depth) const;

    const Morphism* h_;
    // alive_[t][b] == (h^t(b) != empty) for t <= horizon_; constant beyond.
    std::vector<std::vector<bool>> alive_;
    std::size_t horizon_;
    std::vector<Frame> stack_;
    std::uint64_t steps_ = 0;
};

/// Is h^m(u) a prefix of h^n(v)? Both sides are walked as stacks of
/// (letter, depth) blocks and identical blocks are skipped without expansion.
/// `steps` accumulates across calls; exceeding limits.step_budget throws.
bool image_is_prefix(const Morphism& h, std::span<const Letter> u, std::size_t m,
                     std::span<const Letter> v, std::size_t n, std::uint64_t& steps,
                     const Limits& limits = {});

/// h^n(u) == h^n(v). Exact lengths first, then the block walk above.
bool lazy_equal(const Morphism& h, std::span<const Letter> u, std::span<const Letter> v,
                std::size_t n, const Limits& limits = {});

/// On-demand letters of h^omega(a) for a prolongable single-letter axiom.
/// Single consumer; letters never change once produced.
class FixedPointStream {
public:
    explicit FixedPointStream(D0LSystem system);

    Letter at(std::size_t position);
    std::span<const Letter> prefix(std::size_t length);
    const D0LSystem& system() const noexcept { return system_; }

private:
    void grow_to(std::size_t length);

    D0LSystem system_;
    Word buffer_;
    std::size_t expanded_ = 1;
};

FixedPointStream stream_fixed_point(const D0LSystem& system);

}  // namespace d0l
