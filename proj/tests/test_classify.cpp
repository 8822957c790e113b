#include <doctest.h>

#include "d0l/classify.hpp"
#include "d0l/oracle.hpp"
#include "random_systems.hpp"

using namespace d0l;
using d0l::testing::corpus;
using d0l::testing::make;

namespace {

std::string letters(const D0LSystem& s, const LetterSet& set) { return to_string(s.alphabet(), set); }

}  // namespace

TEST_CASE("mortal letters")
{
    auto s8 = corpus("S8");
    CHECK(letters(s8, mortal_letters(s8.morphism())) == "m");
    CHECK(mortal_letters(corpus("S1").morphism()).empty());
    auto chain = make("a", {"a:ab", "b:m", "m:"});
    CHECK(letters(chain, mortal_letters(chain.morphism())) == "bm");
}

TEST_CASE("projection erases mortal letters from the power image")
{
    auto s8 = corpus("S8");
    auto g = projection_g(s8.morphism());
    REQUIRE(g.g.size() == 2);
    CHECK(to_string(g.g.alphabet(), g.g.image(0)) == "abbb");
    CHECK(to_string(g.g.alphabet(), g.g.image(1)) == "b");

    auto s2 = corpus("S2");
    auto g2 = projection_g(s2.morphism());
    CHECK(g2.g == power(s2.morphism(), 2, 1000));

    auto chain = make("a", {"a:ab", "b:m", "m:"});
    auto g3 = projection_g(chain.morphism());
    REQUIRE(g3.g.size() == 1);
    CHECK(to_string(g3.g.alphabet(), g3.g.image(0)) == "a");
}

TEST_CASE("finite letters")
{
    auto s1 = corpus("S1");
    CHECK(letters(s1, finite_letters(s1.morphism())) == "b");
    CHECK(finite_letters(corpus("S2").morphism()).empty());
    auto s5 = corpus("S5");
    CHECK(letters(s5, finite_letters(s5.morphism())) == "c");
    auto s8 = corpus("S8");
    CHECK(letters(s8, finite_letters(s8.morphism())) == "mb");
    // A letter whose image is a finite letter followed by a mortal one.
    auto mixed = make("a", {"a:ab", "b:cm", "c:c", "m:"});
    CHECK(letters(mixed, finite_letters(mixed.morphism())) == "bcm");
}

TEST_CASE("recurrent letters")
{
    auto s1 = corpus("S1");
    CHECK(letters(s1, recurrent_letters(s1.morphism(), 0)) == "b");
    auto s2 = corpus("S2");
    CHECK(letters(s2, recurrent_letters(s2.morphism(), 0)) == "ab");
    auto s6 = corpus("S6");
    CHECK(letters(s6, recurrent_letters(s6.morphism(), 0)) == "bc");
    CHECK_THROWS_AS(recurrent_letters(make("a", {"a:ba", "b:b"}).morphism(), 0), PreconditionError);
}

TEST_CASE("classification assembles the partition")
{
    auto s1 = corpus("S1");
    auto c1 = classification(s1.morphism(), 0);
    CHECK(letters(s1, c1.infinite) == "a");
    CHECK(letters(s1, c1.recurrent) == "b");
    CHECK(c1.a1.empty());

    auto s2 = corpus("S2");
    CHECK(letters(s2, classification(s2.morphism(), 0).a1) == "ab");

    auto s5 = corpus("S5");
    auto c5 = classification(s5.morphism(), 0);
    CHECK(letters(s5, c5.infinite) == "ab");
    CHECK(letters(s5, c5.recurrent) == "bc");
    CHECK(letters(s5, c5.a1) == "b");
    CHECK(letters(s5, c5.occurring) == "abc");
}

TEST_CASE("property: classification agrees with brute force")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Morphism h = d0l::testing::random_morphism(rng, {4, 3, true});
        const std::size_t n = h.size();
        auto mortal = mortal_letters(h);
        auto finite = finite_letters(h);
        for (Letter b = 0; b < n; ++b) {
            CHECK(mortal.contains(b) == iterate(h, Word{b}, n, 1'000'000).empty());
            // Orbit of b repeats within the first 2|A|+8 iterates iff b is finite.
            std::vector<Word> orbit;
            bool repeat = false;
            Word x{b};
            for (std::size_t k = 0; k <= 2 * n + 8 && !repeat; ++k) {
                repeat = std::find(orbit.begin(), orbit.end(), x) != orbit.end();
                orbit.push_back(x);
                if (x.size() > 5000) break;
                x = iterate(h, x, 1, 1'000'000);
            }
            CHECK(finite.contains(b) == repeat);
        }
        CHECK(std::includes(finite.begin(), finite.end(), mortal.begin(), mortal.end()));
        auto g = projection_g(h);
        for (const auto& img : g.g.images()) CHECK(!img.empty());
    }
}

TEST_CASE("property: recurrent letters keep appearing in long prefixes")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto s = d0l::testing::random_prolongable(rng, {4, 3, true});
        auto c = classification(s.morphism(), 0);
        auto rep_small = oracle::prefix_report(s, 1'000, 1, std::nullopt);
        auto rep_mid = oracle::prefix_report(s, 10'000, 1, std::nullopt);
        auto rep_big = oracle::prefix_report(s, 100'000, 1, std::nullopt);
        for (Letter b = 0; b < s.morphism().size(); ++b) {
            if (c.recurrent.contains(b)) CHECK(rep_big.letter_counts[b] > rep_small.letter_counts[b]);
            else if (c.occurring.contains(b)) CHECK(rep_big.letter_counts[b] == rep_mid.letter_counts[b]);
            else CHECK(rep_big.letter_counts[b] == 0);
        }
    }
}
