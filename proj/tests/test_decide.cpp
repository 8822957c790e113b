#include <doctest.h>

#include "d0l/decide.hpp"
#include "d0l/ksets.hpp"
#include "random_systems.hpp"

using namespace d0l;
using d0l::testing::corpus;
using d0l::testing::make;

namespace {

std::string text(const D0LSystem& s, std::span<const Letter> w) { return to_string(s.alphabet(), w); }

Word word(const D0LSystem& s, std::string_view t) { return parse_word(s.alphabet(), t); }

Letter id(const D0LSystem& s, char c) { return *s.alphabet().find(c); }

Verdict only(const Decision& d)
{
    REQUIRE(d.members.size() == 1);
    return d.members.front().verdict;
}

}  // namespace

TEST_CASE("eventually_equal")
{
    auto h = make("a", {"a:c", "b:c", "c:c"}).morphism();
    CHECK(eventually_equal(h, Word{0}, Word{1}));
    auto s2 = corpus("S2");
    CHECK(eventually_equal(s2.morphism(), word(s2, "abba"), word(s2, "abba")));
    CHECK_FALSE(eventually_equal(s2.morphism(), word(s2, "ab"), word(s2, "ba")));
}

TEST_CASE("eventual cycle when no infinite letter recurs")
{
    auto s1 = corpus("S1");
    auto c1 = periodic_case_no_infinite_recurrent(s1);
    CHECK(c1.n == 0);
    CHECK(c1.p == 1);
    CHECK(text(s1, c1.transient) == "a");
    CHECK(text(s1, c1.cycle) == "b");

    auto s6 = corpus("S6");
    auto c6 = periodic_case_no_infinite_recurrent(s6);
    CHECK(c6.n == 0);
    CHECK(c6.p == 2);
    CHECK(text(s6, c6.cycle) == "bc");

    auto s8 = corpus("S8");
    auto c8 = periodic_case_no_infinite_recurrent(s8);
    CHECK(c8.n == 1);
    CHECK(c8.p == 1);
    CHECK(text(s8, c8.transient) == "amb");
    CHECK(text(s8, c8.cycle) == "b");

    CHECK_THROWS_AS(periodic_case_no_infinite_recurrent(corpus("S2")), PreconditionError);
}

TEST_CASE("pivot reachability")
{
    auto s2 = corpus("S2");
    auto c2 = classification(s2.morphism(), 0);
    CHECK_FALSE(check_pivot_reachability(s2, c2, id(s2, 'b')).has_value());

    auto split = make("a", {"a:aBC", "B:BB", "C:CC"});
    auto cs = classification(split.morphism(), 0);
    auto witness = check_pivot_reachability(split, cs, id(split, 'B'));
    REQUIRE(witness);
    CHECK(*witness == id(split, 'C'));

    auto s4 = corpus("S4");
    auto c4 = classification(s4.morphism(), 0);
    CHECK_FALSE(check_pivot_reachability(s4, c4, id(s4, 'b')).has_value());
    CHECK_THROWS_AS(check_pivot_reachability(s4, c4, id(s4, 'a')), PreconditionError);
}

TEST_CASE("pumping")
{
    auto s5 = corpus("S5");
    auto c5 = classification(s5.morphism(), 0);
    auto w = check_pumping(s5, c5, id(s5, 'b'));
    REQUIRE(w);
    CHECK(w->letter == id(s5, 'b'));
    CHECK(w->exponent == 1);
    CHECK(w->side == Side::left);
    CHECK(text(s5, w->flank) == "c");
    CHECK(w->offset == 1);

    auto s2 = corpus("S2");
    CHECK_FALSE(check_pumping(s2, classification(s2.morphism(), 0), id(s2, 'b')).has_value());
    auto s4 = corpus("S4");
    CHECK_FALSE(check_pumping(s4, classification(s4.morphism(), 0), id(s4, 'b')).has_value());
}

TEST_CASE("pumping needs the whole flank to be finite")
{
    // b -> a c b: the left flank "ac" holds the infinite letter a, so it does not pump.
    auto s = make("a", {"a:ab", "b:acb", "c:c"});
    auto c = classification(s.morphism(), 0);
    REQUIRE(c.a1.contains(id(s, 'b')));
    CHECK_FALSE(check_pumping(s, c, id(s, 'b')).has_value());
}

TEST_CASE("certified gaps")
{
    auto s4 = corpus("S4");
    auto g4 = certified_gaps(s4, id(s4, 'b'));
    CHECK(g4.n_star == 1);
    REQUIRE(g4.u_hat.size() == 1);
    CHECK(g4.u_hat[0].empty());
    CHECK(g4.u_finite);

    auto s2 = corpus("S2");
    auto g2 = certified_gaps(s2, id(s2, 'b'));
    CHECK(g2.n_star == 2);
    REQUIRE(g2.u_hat.size() == 1);
    CHECK(text(s2, g2.u_hat[0]) == "aa");

    auto tm2 = d0l::testing::squared(s2);
    auto g = certified_gaps(tm2, id(tm2, 'b'));
    CHECK(g.n_star == 1);
    REQUIRE(g.u_hat.size() == 1);
    CHECK(text(tm2, g.u_hat[0]) == "aa");

    auto s3 = corpus("S3");
    auto g3 = certified_gaps(s3, id(s3, 'a'));
    CHECK(g3.n_star == 2);
    REQUIRE(g3.u_hat.size() == 1);
    CHECK(text(s3, g3.u_hat[0]) == "b");

    auto sampled = certified_gaps(s2, id(s2, 'b'), {}, 200);
    CHECK(sampled.sampled_gaps.size() == 3);
}

TEST_CASE("commutation test")
{
    auto s2 = corpus("S2");
    std::vector<Word> single{word(s2, "aa")};
    CHECK_FALSE(commutation_test(s2, id(s2, 'b'), single).has_value());

    auto s10 = corpus("S10");
    std::vector<Word> gaps{word(s10, "x"), word(s10, "y")};
    auto pair = commutation_test(s10, id(s10, 'b'), gaps);
    REQUIRE(pair);
    CHECK(text(s10, pair->first) == "x");
    CHECK(text(s10, pair->second) == "y");
    CHECK_FALSE(lazy_equal(s10.morphism(), word(s10, "bxby"), word(s10, "bybx"), 4));

    auto g10 = certified_gaps(s10, id(s10, 'b'));
    CHECK(g10.n_star == 1);
    REQUIRE(g10.u_hat.size() == 1);
    CHECK(text(s10, g10.u_hat[0]) == "x");
}

TEST_CASE("primitive root")
{
    CHECK(primitive_root(std::string_view("abab")) == "ab");
    CHECK(primitive_root(std::string_view("abc")) == "abc");
    CHECK(primitive_root(std::string_view("aaaaaa")) == "a");
    CHECK(primitive_root(std::string_view("abaab")) == "abaab");
    CHECK(primitive_root(std::string_view("abaaba")) == "aba");
    CHECK_THROWS_AS(primitive_root(std::string_view("")), PreconditionError);
}

TEST_CASE("z candidate")
{
    auto s4 = corpus("S4");
    std::vector<Word> eps{Word{}};
    CHECK(text(s4, z_candidate(s4, id(s4, 'b'), eps).z) == "b");

    auto s2 = corpus("S2");
    std::vector<Word> aa{word(s2, "aa")};
    auto z2 = z_candidate(s2, id(s2, 'b'), aa);
    CHECK(text(s2, z2.z) == "baababbaabba");
    CHECK(z2.z.size() == 12);
    CHECK_FALSE(z2.mismatch.has_value());

    auto bb = make("a", {"a:ab", "b:bb"});
    CHECK(text(bb, z_candidate(bb, id(bb, 'b'), eps).z) == "b");

    auto s3 = corpus("S3");
    std::vector<Word> b{word(s3, "b")};
    CHECK(text(s3, z_candidate(s3, id(s3, 'a'), b).z) == "abaab");

    std::vector<Word> two{word(s2, "aa"), word(s2, "")};
    auto mismatch = z_candidate(s2, id(s2, 'b'), two);
    REQUIRE(mismatch.mismatch);
    CHECK(mismatch.mismatch->empty());
}

TEST_CASE("minimal period")
{
    CHECK(minimal_period(corpus("S4"), 1) == 1);
    CHECK(minimal_period(corpus("S6"), 2) == 2);
    CHECK(minimal_period(corpus("S6"), 6) == 2);
    CHECK(minimal_period(corpus("S11"), 2) == 1);
    CHECK_THROWS_AS(minimal_period(corpus("S6"), 3), PreconditionError);
}

TEST_CASE("preperiod estimate")
{
    CHECK(preperiod_estimate(corpus("S1"), 1) == Preperiod{1, true});
    CHECK(preperiod_estimate(corpus("S8"), 1) == Preperiod{2, true});
    CHECK(preperiod_estimate(corpus("S6"), 2) == Preperiod{1, true});
    CHECK(preperiod_estimate(corpus("S4"), 1) == Preperiod{1, false});
}

TEST_CASE("corpus verdicts")
{
    auto v1 = only(decide_ultimate_periodicity(corpus("S1")));
    CHECK(v1.kind == VerdictKind::ultimately_periodic);
    CHECK(v1.minimal_period == 1u);
    CHECK(v1.preperiod == Preperiod{1, true});

    auto v2 = only(decide_ultimate_periodicity(corpus("S2")));
    CHECK(v2.kind == VerdictKind::not_ultimately_periodic);
    REQUIRE(std::holds_alternative<witness::ZTestFailure>(v2.witness));
    CHECK(std::get<witness::ZTestFailure>(v2.witness).z.size() == 12);

    auto v3 = only(decide_ultimate_periodicity(corpus("S3")));
    CHECK(v3.kind == VerdictKind::not_ultimately_periodic);
    CHECK(std::holds_alternative<witness::ZTestFailure>(v3.witness));

    auto v4 = only(decide_ultimate_periodicity(corpus("S4")));
    CHECK(v4.kind == VerdictKind::ultimately_periodic);
    CHECK(v4.period == 1u);
    CHECK(v4.minimal_period == 1u);
    CHECK(v4.preperiod == Preperiod{1, false});

    auto s5 = corpus("S5");
    auto v5 = only(decide_ultimate_periodicity(s5));
    CHECK(v5.kind == VerdictKind::not_ultimately_periodic);
    REQUIRE(std::holds_alternative<witness::Pumping>(v5.witness));
    CHECK(std::get<witness::Pumping>(v5.witness).data.letter == id(s5, 'b'));

    auto v6 = only(decide_ultimate_periodicity(corpus("S6")));
    CHECK(v6.kind == VerdictKind::ultimately_periodic);
    CHECK(v6.minimal_period == 2u);
    CHECK(v6.preperiod == Preperiod{1, true});

    auto d7 = decide_ultimate_periodicity(corpus("S7"));
    REQUIRE(d7.members.size() == 1);
    CHECK(d7.members[0].verdict.kind == VerdictKind::ultimately_periodic);
    CHECK(d7.members[0].verdict.preperiod == Preperiod{1, true});

    auto v8 = only(decide_ultimate_periodicity(corpus("S8")));
    CHECK(v8.kind == VerdictKind::ultimately_periodic);
    CHECK(v8.minimal_period == 1u);
    CHECK(v8.preperiod == Preperiod{2, true});

    auto v10 = only(decide_ultimate_periodicity(corpus("S10")));
    CHECK(v10.kind == VerdictKind::not_ultimately_periodic);

    auto v11 = only(decide_ultimate_periodicity(corpus("S11")));
    CHECK(v11.kind == VerdictKind::ultimately_periodic);
    CHECK(v11.minimal_period == 1u);
}

TEST_CASE("limit status verdicts")
{
    auto none = decide_ultimate_periodicity(make("b", {"b:b"}));
    CHECK(none.status == LimitStatus::no_infinite_word);
    CHECK(only(none).kind == VerdictKind::no_infinite_word);

    auto unknown = decide_ultimate_periodicity(make("b", {"a:a", "b:ab"}));
    CHECK(only(unknown).kind == VerdictKind::unknown_limit);
}

TEST_CASE("multi-member family is decided per member")
{
    auto d = decide_ultimate_periodicity(make("a", {"a:ba", "b:ab"}));
    REQUIRE(d.members.size() == 2);
    for (const auto& m : d.members) CHECK(m.verdict.kind == VerdictKind::not_ultimately_periodic);
}

TEST_CASE("resource caps become a verdict kind")
{
    Limits tight;
    tight.max_len = 5;
    auto v = only(decide_ultimate_periodicity(corpus("S2"), {}, tight));
    CHECK(v.kind == VerdictKind::resource_limit);
    CHECK_FALSE(v.message.empty());
}

TEST_CASE("pivot override")
{
    auto s2 = corpus("S2");
    auto v = decide_member(s2, DecideOptions{'b'});
    CHECK(v.pivot == id(s2, 'b'));
    REQUIRE(std::holds_alternative<witness::ZTestFailure>(v.witness));
    CHECK(text(s2, std::get<witness::ZTestFailure>(v.witness).z) == "baababbaabba");
    auto ignored = decide_member(s2, DecideOptions{'q'});
    CHECK(ignored.pivot == id(s2, 'a'));
}
