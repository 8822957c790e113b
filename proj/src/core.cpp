#include "d0l/core.hpp"

#include <algorithm>
#include <sstream>

#include "d0l/classify.hpp"

namespace d0l {

const char* to_string(ParseErrorKind kind)
{
    switch (kind) {
    case ParseErrorKind::syntax: return "syntax error";
    case ParseErrorKind::duplicate_rule: return "duplicate rule";
    case ParseErrorKind::unknown_letter: return "unknown letter";
    case ParseErrorKind::missing_axiom: return "missing axiom";
    }
    return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         to_string(kind) + (kind == ParseErrorKind::unknown_letter ? " " : ": ") + what),
      kind_(kind), line_(line), column_(column)
{
}

// ---------------------------------------------------------------------------
// Alphabet and words

Alphabet::Alphabet() { index_.fill(-1); }

Letter Alphabet::add(char symbol)
{
    auto& slot = index_[static_cast<unsigned char>(symbol)];
    if (slot < 0) {
        slot = static_cast<std::int32_t>(symbols_.size());
        symbols_.push_back(symbol);
    }
    return static_cast<Letter>(slot);
}

std::optional<Letter> Alphabet::find(char symbol) const
{
    const auto slot = index_[static_cast<unsigned char>(symbol)];
    if (slot < 0) return std::nullopt;
    return static_cast<Letter>(slot);
}

bool is_letter_symbol(char c)
{
    const auto u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x7f && c != '#';
}

std::string to_string(const Alphabet& alphabet, std::span<const Letter> word)
{
    std::string out;
    out.reserve(word.size());
    for (Letter l : word) out.push_back(alphabet.symbol(l));
    return out;
}

std::string to_string(const Alphabet& alphabet, const LetterSet& letters)
{
    std::string out;
    for (Letter l : letters) out.push_back(alphabet.symbol(l));
    return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text)
{
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        auto id = alphabet.find(c);
        if (!id) throw PreconditionError(std::string("symbol '") + c + "' is not in the alphabet");
        w.push_back(*id);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Morphisms and systems

Morphism::Morphism(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images))
{
    if (images_.size() != alphabet_.size())
        throw PreconditionError("morphism must have exactly one image per letter");
    for (const auto& w : images_)
        for (Letter l : w)
            if (l >= alphabet_.size()) throw PreconditionError("image letter outside alphabet");
}

D0LSystem::D0LSystem(Morphism morphism, Word axiom)
    : morphism_(std::move(morphism)), axiom_(std::move(axiom))
{
    if (axiom_.empty()) throw PreconditionError("axiom must be nonempty");
    for (Letter l : axiom_)
        if (l >= morphism_.size()) throw PreconditionError("axiom letter outside alphabet");
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

// Splits a line into whitespace-separated tokens with their columns.
std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_blank(line[i])) ++i;
        if (i == line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !is_blank(line[i])) ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

struct PendingWord {
    std::string symbols;
    std::size_t line;
    std::size_t column;
};

void check_word_symbols(const Token& token, std::size_t line)
{
    for (std::size_t k = 0; k < token.text.size(); ++k)
        if (!is_letter_symbol(token.text[k]))
            throw ParseError(ParseErrorKind::syntax, line, token.column + k,
                             "invalid letter symbol");
}

}  // namespace

D0LSystem parse_system(std::string_view text)
{
    std::optional<PendingWord> axiom;
    std::vector<std::pair<char, PendingWord>> rules;
    Alphabet alphabet;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;

        auto tokens = tokenize(line);
        if (tokens.empty() || tokens.front().text.front() == '#') continue;

        const Token& head = tokens.front();
        if (head.text.starts_with("axiom")) {
            // "axiom:" with optional blanks before the colon; the word may follow the colon directly.
            std::size_t colon = line.find(':', head.column - 1);
            std::string_view between = line.substr(head.column - 1 + 5,
                                                   colon == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : colon - (head.column - 1 + 5));
            bool only_blanks = std::all_of(between.begin(), between.end(), is_blank);
            if (colon == std::string_view::npos || !only_blanks)
                throw ParseError(ParseErrorKind::syntax, line_no, head.column + 5,
                                 "expected ':' after 'axiom'");
            if (axiom)
                throw ParseError(ParseErrorKind::syntax, line_no, head.column,
                                 "more than one axiom line");
            auto rest = tokenize(line.substr(colon + 1));
            if (rest.empty())
                throw ParseError(ParseErrorKind::syntax, line_no, colon + 2, "empty axiom");
            if (rest.size() > 1)
                throw ParseError(ParseErrorKind::syntax, line_no, colon + 1 + rest[1].column,
                                 "unexpected token after axiom word");
            Token word{rest[0].text, colon + 1 + rest[0].column};
            check_word_symbols(word, line_no);
            axiom = PendingWord{std::string(word.text), line_no, word.column};
            continue;
        }

        // "<letter> -> <word>"; the arrow may be glued to either side.
        std::size_t col = head.column - 1;
        char letter = line[col];
        if (!is_letter_symbol(letter))
            throw ParseError(ParseErrorKind::syntax, line_no, col + 1, "invalid letter symbol");
        std::size_t i = col + 1;
        while (i < line.size() && is_blank(line[i])) ++i;
        if (line.substr(i, 2) != "->")
            throw ParseError(ParseErrorKind::syntax, line_no, i + 1, "expected '->'");
        auto rest = tokenize(line.substr(i + 2));
        if (rest.size() > 1)
            throw ParseError(ParseErrorKind::syntax, line_no, i + 2 + rest[1].column,
                             "unexpected token after image word");
        PendingWord image{"", line_no, i + 3};
        if (!rest.empty()) {
            Token word{rest[0].text, i + 2 + rest[0].column};
            check_word_symbols(word, line_no);
            image = PendingWord{std::string(word.text), line_no, word.column};
        }
        if (alphabet.contains(letter))
            throw ParseError(ParseErrorKind::duplicate_rule, line_no, col + 1,
                             std::string("second rule for '") + letter + "'");
        alphabet.add(letter);
        rules.emplace_back(letter, std::move(image));
    }

    if (!axiom)
        throw ParseError(ParseErrorKind::missing_axiom, line_no, 1, "no 'axiom:' line");

    auto resolve = [&](const PendingWord& w) {
        Word out;
        out.reserve(w.symbols.size());
        for (std::size_t k = 0; k < w.symbols.size(); ++k) {
            auto id = alphabet.find(w.symbols[k]);
            if (!id)
                throw ParseError(ParseErrorKind::unknown_letter, w.line, w.column + k,
                                 std::string(1, w.symbols[k]) + " (no rule)");
            out.push_back(*id);
        }
        return out;
    };

    // Report unknown letters in file order.
    std::vector<const PendingWord*> order;
    order.push_back(&*axiom);
    for (const auto& [_, w] : rules) order.push_back(&w);
    std::stable_sort(order.begin(), order.end(), [](const PendingWord* a, const PendingWord* b) {
        return a->line < b->line;
    });
    for (const auto* w : order) resolve(*w);

    std::vector<Word> images;
    images.reserve(rules.size());
    for (const auto& [_, w] : rules) images.push_back(resolve(w));
    Word start = resolve(*axiom);
    return D0LSystem(Morphism(std::move(alphabet), std::move(images)), std::move(start));
}

std::string format_system(const D0LSystem& system)
{
    const auto& alphabet = system.alphabet();
    std::ostringstream out;
    out << "axiom: " << to_string(alphabet, system.axiom()) << '\n';
    for (Letter b = 0; b < alphabet.size(); ++b) {
        out << alphabet.symbol(b) << " ->";
        const auto& img = system.morphism().image(b);
        if (!img.empty()) out << ' ' << to_string(alphabet, img);
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Application and powers

Word apply(const Morphism& h, std::span<const Letter> word)
{
    std::size_t total = 0;
    for (Letter l : word) total += h.image(l).size();
    Word out;
    out.reserve(total);
    for (Letter l : word) {
        const auto& img = h.image(l);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

Word iterate(const Morphism& h, std::span<const Letter> word, std::size_t n, std::size_t cap)
{
    Word current(word.begin(), word.end());
    if (current.size() > cap) throw ResourceLimit("word exceeds materialization cap");
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t next = 0;
        for (Letter l : current) {
            next += h.image(l).size();
            if (next > cap)
                throw ResourceLimit("h^" + std::to_string(i + 1) + " image exceeds " +
                                    std::to_string(cap) + " letters");
        }
        current = d0l::apply(h, current);
    }
    return current;
}

Morphism power(const Morphism& h, std::size_t n, std::size_t cap)
{
    std::vector<Word> images;
    images.reserve(h.size());
    for (Letter b = 0; b < h.size(); ++b) {
        Word single{b};
        images.push_back(iterate(h, single, n, cap));
    }
    return Morphism(h.alphabet(), std::move(images));
}

std::optional<Word> prolongable_tail(const Morphism& h, Letter a)
{
    const auto& img = h.image(a);
    if (img.size() < 2 || img.front() != a) return std::nullopt;
    auto mortal = mortal_letters(h);
    Word tail(img.begin() + 1, img.end());
    bool survives = std::any_of(tail.begin(), tail.end(),
                                [&](Letter l) { return !mortal.contains(l); });
    if (!survives) return std::nullopt;
    return tail;
}

bool is_prolongable(const Morphism& h, Letter a) { return prolongable_tail(h, a).has_value(); }

bool is_letter_prolongable(const D0LSystem& system)
{
    return system.axiom().size() == 1 && is_prolongable(system.morphism(), system.axiom().front());
}

// ---------------------------------------------------------------------------
// Lengths

IncidenceMatrix::IncidenceMatrix(std::size_t dimension)
    : dimension_(dimension), entries_(dimension * dimension)
{
}

IncidenceMatrix IncidenceMatrix::operator*(const IncidenceMatrix& rhs) const
{
    if (rhs.dimension_ != dimension_) throw PreconditionError("matrix dimension mismatch");
    IncidenceMatrix out(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i)
        for (std::size_t k = 0; k < dimension_; ++k) {
            const BigInt& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < dimension_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IncidenceMatrix incidence_matrix(const Morphism& h)
{
    IncidenceMatrix m(h.size());
    for (Letter j = 0; j < h.size(); ++j)
        for (Letter i : h.image(j)) m.at(i, j) += 1;
    return m;
}

std::vector<BigInt> image_lengths(const Morphism& h, std::size_t n)
{
    std::vector<BigInt> lengths(h.size(), BigInt(1));
    std::vector<BigInt> next(h.size());
    for (std::size_t t = 0; t < n; ++t) {
        for (Letter b = 0; b < h.size(); ++b) {
            BigInt sum = 0;
            for (Letter c : h.image(b)) sum += lengths[c];
            next[b] = std::move(sum);
        }
        lengths.swap(next);
    }
    return lengths;
}

BigInt image_length(const Morphism& h, Letter b, std::size_t n) { return image_lengths(h, n)[b]; }

BigInt image_length(const Morphism& h, std::span<const Letter> word, std::size_t n)
{
    auto lengths = image_lengths(h, n);
    BigInt total = 0;
    for (Letter l : word) total += lengths[l];
    return total;
}

// ---------------------------------------------------------------------------
// Streaming image enumeration

ImageCursor::ImageCursor(const Morphism& h, std::span<const Letter> word, std::size_t n)
    : h_(&h), horizon_(std::min(n, h.size() + 1))
{
    // Emptiness of h^t(b) is decided by t = |A|; past that the table is constant.
    alive_.assign(horizon_ + 1, std::vector<bool>(h.size(), true));
    for (std::size_t t = 1; t <= horizon_; ++t)
        for (Letter b = 0; b < h.size(); ++b) {
            const auto& img = h.image(b);
            alive_[t][b] = std::any_of(img.begin(), img.end(),
                                       [&](Letter c) { return alive_[t - 1][c]; });
        }
    stack_.push_back({word, 0, n});
}

bool ImageCursor::alive(Letter letter, std::size_t depth) const
{
    return alive_[std::min(depth, horizon_)][letter];
}

std::optional<Letter> ImageCursor::next()
{
    while (!stack_.empty()) {
        ++steps_;
        Frame& top = stack_.back();
        if (top.index == top.word.size()) {
            stack_.pop_back();
            continue;
        }
        Letter c = top.word[top.index++];
        if (top.depth == 0) return c;
        if (!alive(c, top.depth)) continue;
        std::size_t depth = top.depth - 1;
        stack_.push_back({std::span<const Letter>(h_->image(c)), 0, depth});
    }
    return std::nullopt;
}

bool image_is_prefix(const Morphism& h, std::span<const Letter> u, std::size_t m,
                     std::span<const Letter> v, std::size_t n, std::uint64_t& steps,
                     const Limits& limits)
{
    struct Block {
        Letter letter;
        std::size_t depth;
        bool operator==(const Block&) const = default;
    };

    // table[t][b] = |h^t(b)|
    std::vector<std::vector<BigInt>> table{std::vector<BigInt>(h.size(), BigInt(1))};
    for (std::size_t t = 1; t <= std::max(m, n); ++t) {
        std::vector<BigInt> next(h.size());
        for (Letter b = 0; b < h.size(); ++b)
            for (Letter c : h.image(b)) next[b] += table[t - 1][c];
        table.push_back(std::move(next));
    }
    auto length = [&](const Block& x) -> const BigInt& { return table[x.depth][x.letter]; };

    auto load = [](std::span<const Letter> w, std::size_t depth) {
        std::vector<Block> stack;
        for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back({*it, depth});
        return stack;
    };
    auto expand = [&](std::vector<Block>& stack) {
        Block top = stack.back();
        stack.pop_back();
        const Word& image = h.image(top.letter);
        for (auto it = image.rbegin(); it != image.rend(); ++it) stack.push_back({*it, top.depth - 1});
    };
    auto drop_empty = [&](std::vector<Block>& stack) {
        while (!stack.empty() && length(stack.back()) == 0) stack.pop_back();
    };

    auto left = load(u, m), right = load(v, n);
    for (;;) {
        drop_empty(left);
        drop_empty(right);
        if (left.empty()) return true;
        if (right.empty()) return false;
        if (++steps > limits.step_budget) throw ResourceLimit("streaming comparison exceeded the step budget");
        const Block a = left.back(), b = right.back();
        if (a == b) {
            left.pop_back();
            right.pop_back();
            continue;
        }
        if (a.depth == 0 && b.depth == 0) return false;
        const BigInt& la = length(a);
        const BigInt& lb = length(b);
        if (la >= lb && a.depth > 0) expand(left);
        if (lb >= la && b.depth > 0) expand(right);
    }
}

bool lazy_equal(const Morphism& h, std::span<const Letter> u, std::span<const Letter> v,
                std::size_t n, const Limits& limits)
{
    auto lengths = image_lengths(h, n);
    BigInt lu = 0, lv = 0;
    for (Letter l : u) lu += lengths[l];
    for (Letter l : v) lv += lengths[l];
    if (lu != lv) return false;
    std::uint64_t steps = 0;
    return image_is_prefix(h, u, n, v, n, steps, limits);
}

// ---------------------------------------------------------------------------
// Fixed point stream

FixedPointStream::FixedPointStream(D0LSystem system) : system_(std::move(system))
{
    if (!is_letter_prolongable(system_))
        throw PreconditionError("fixed point needs a single-letter prolongable axiom");
    buffer_ = system_.morphism().image(system_.axiom().front());
}

void FixedPointStream::grow_to(std::size_t length)
{
    const auto& h = system_.morphism();
    // buffer_ = h(x_0) h(x_1) ... h(x_{expanded_-1}) is always a prefix of x = h(x);
    // prolongability keeps expanded_ strictly behind the buffer end.
    while (buffer_.size() < length) {
        const auto& img = h.image(buffer_[expanded_++]);
        buffer_.insert(buffer_.end(), img.begin(), img.end());
    }
}

Letter FixedPointStream::at(std::size_t position)
{
    grow_to(position + 1);
    return buffer_[position];
}

std::span<const Letter> FixedPointStream::prefix(std::size_t length)
{
    grow_to(length);
    return std::span<const Letter>(buffer_).first(length);
}

FixedPointStream stream_fixed_point(const D0LSystem& system) { return FixedPointStream(system); }

}  // namespace d0l
