#include <doctest.h>

#include "d0l/classify.hpp"
#include "d0l/normalize.hpp"
#include "d0l/oracle.hpp"
#include "random_systems.hpp"

using namespace d0l;
using d0l::testing::corpus;
using d0l::testing::make;

TEST_CASE("find_prefix_pair")
{
    CHECK(find_prefix_pair(corpus("S7")) == PrefixPair{0, 1});
    CHECK(find_prefix_pair(make("b", {"b:bb"})) == PrefixPair{0, 1});
    CHECK_FALSE(find_prefix_pair(make("b", {"a:a", "b:ab"})).has_value());
    // Every later iterate of "b" starts with a, so the search needs p = 1.
    auto shifted = make("b", {"a:ab", "b:a"});
    auto pair = find_prefix_pair(shifted);
    REQUIRE(pair);
    CHECK(*pair == PrefixPair{1, 1});
}

TEST_CASE("find_prefix_pair compares without materializing long words")
{
    Limits tight;
    tight.max_len = 50;
    auto s2 = make("b", {"a:ab", "b:ba"});
    auto pair = find_prefix_pair(s2, tight);
    REQUIRE(pair);
    CHECK(*pair == PrefixPair{0, 1});
}

TEST_CASE("quick_limit_status")
{
    CHECK(quick_limit_status(make("b", {"b:b"})) == QuickStatus::no_infinite_word);
    CHECK(quick_limit_status(corpus("S1")) == QuickStatus::nonempty_possible);
    CHECK(quick_limit_status(corpus("S8")) == QuickStatus::nonempty_possible);
    CHECK(quick_limit_status(make("bc", {"b:c", "c:b"})) == QuickStatus::no_infinite_word);
}

TEST_CASE("to_letter_axiom")
{
    auto s7 = corpus("S7");
    auto sys = to_letter_axiom(s7.morphism(), s7.axiom());
    REQUIRE(sys.axiom().size() == 1);
    const Letter s = sys.axiom().front();
    CHECK_FALSE(s7.alphabet().contains(sys.alphabet().symbol(s)));
    CHECK(to_string(sys.alphabet(), sys.morphism().image(s)) == std::string{sys.alphabet().symbol(s), 'b'});

    auto s1 = corpus("S1");
    CHECK(to_letter_axiom(s1.morphism(), s1.axiom()) == s1);

    auto bb = make("b", {"b:bb"});
    auto forced = to_letter_axiom(bb.morphism(), bb.axiom(), true);
    const Letter f = forced.axiom().front();
    CHECK(to_string(forced.alphabet(), forced.morphism().image(f)) ==
          std::string{forced.alphabet().symbol(f), 'b'});

    CHECK_THROWS_AS(to_letter_axiom(s1.morphism(), Word{1}), PreconditionError);
}

TEST_CASE("decompose")
{
    auto s1 = corpus("S1");
    auto f1 = decompose(s1);
    CHECK(f1.status == LimitStatus::nonempty_limit);
    REQUIRE(f1.members.size() == 1);
    CHECK(f1.members[0].system == s1);
    CHECK_FALSE(f1.members[0].fresh);

    auto f7 = decompose(corpus("S7"));
    REQUIRE(f7.members.size() == 1);
    CHECK(f7.pair == PrefixPair{0, 1});
    CHECK(f7.members[0].fresh);
    CHECK(f7.members[0].source == "ab");

    auto unknown = decompose(make("b", {"a:a", "b:ab"}));
    CHECK(unknown.status == LimitStatus::unknown_limit);
    CHECK(unknown.members.empty());

    auto none = decompose(make("b", {"b:b"}));
    CHECK(none.status == LimitStatus::no_infinite_word);
}

TEST_CASE("decompose yields several members for an alternating limit")
{
    // h(a) = ba and h^2(a) = abba, so the limit alternates between two words.
    auto alt = make("a", {"a:ba", "b:ab"});
    auto family = decompose(alt);
    CHECK(family.status == LimitStatus::nonempty_limit);
    REQUIRE(family.pair);
    CHECK(family.pair->q == 2);
    CHECK(family.members.size() == 2);
}

TEST_CASE("restrict_to_occurring")
{
    auto extra = make("a", {"a:ab", "b:b", "d:dd"});
    auto r = restrict_to_occurring(extra);
    CHECK(r.alphabet().size() == 2);
    CHECK(r == corpus("S1"));
    CHECK(restrict_to_occurring(corpus("S2")) == corpus("S2"));
    CHECK(restrict_to_occurring(corpus("S5")) == corpus("S5"));
}

TEST_CASE("property: family members stream the limit words")
{
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto h = d0l::testing::random_morphism(rng, {3, 3, true});
        Word u = d0l::testing::random_word(rng, h.size(), 3);
        if (u.empty()) continue;
        D0LSystem system(h, u);
        NormalizedFamily family;
        try {
            family = decompose(system);
        } catch (const ResourceLimit&) {
            continue;
        }
        if (family.status != LimitStatus::nonempty_limit) continue;
        const auto [p, q] = *family.pair;
        Word hp = iterate(h, u, p, 1'000'000);
        Word hpq = iterate(h, u, p + q, 1'000'000);
        CHECK(hp.size() < hpq.size());
        CHECK(std::equal(hp.begin(), hp.end(), hpq.begin()));
        CHECK(family.members.size() <= q);

        Morphism hq = power(h, q, 1'000'000);
        for (const auto& m : family.members) {
            CHECK(is_letter_prolongable(m.system));
            // The limit of (h^q, h^{p+i}(u)) computed by plain iteration.
            D0LSystem source(hq, parse_word(h.alphabet(), m.source));
            Word limit = oracle::expand_prefix(source, 1000);
            Word member = oracle::expand_prefix(m.system, 1000);
            std::string text = to_string(m.system.alphabet(), member);
            if (m.fresh) text.replace(0, 1, m.source);
            CHECK(text.substr(0, 1000) == to_string(h.alphabet(), limit));
            ++checked;
        }
    }
    CHECK(checked > 30);
}
