#include <doctest.h>

#include "checks.hpp"
#include "d0l/decide.hpp"
#include "d0l/ksets.hpp"
#include "d0l/oracle.hpp"
#include "random_systems.hpp"

using namespace d0l;
using namespace d0l::testing;

namespace {

std::string_view expansion_of(const MemberDecision& m)
{
    return m.member && m.member->fresh ? std::string_view(m.member->source) : std::string_view{};
}

}  // namespace

TEST_CASE("verdicts agree with a long prefix on random systems")
{
    std::mt19937_64 rng(1234);
    int periodic = 0, aperiodic = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto s = random_prolongable(rng, {3, 3, true});
        auto d = decide_ultimate_periodicity(s);
        REQUIRE(d.members.size() == 1);
        const auto& m = d.members[0];
        const auto& v = m.verdict;
        if (v.kind == VerdictKind::resource_limit) continue;
        REQUIRE(m.restricted);
        CHECK_MESSAGE(!recheck_witness(*m.restricted, v), format_system(s));
        CHECK_MESSAGE(!check_positive(*m.restricted, v, expansion_of(m)), format_system(s));
        if (v.kind == VerdictKind::ultimately_periodic) ++periodic;
        if (v.kind == VerdictKind::not_ultimately_periodic) {
            ++aperiodic;
            // An aperiodic word cannot have a short period from a short preperiod on.
            Word w = oracle::expand_prefix(s, 4000);
            for (std::size_t p = 1; p <= 6; ++p) CHECK(oracle::naive_p_periodic_from(w, p) > 100);
        }
    }
    CHECK(periodic > 10);
    CHECK(aperiodic > 10);
}

TEST_CASE("certified gaps appear in the word and the observed gap set stays small")
{
    std::mt19937_64 rng(4321);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
        auto s = restrict_to_occurring(random_prolongable(rng, {3, 3, false}));
        auto classes = classification(s.morphism(), 0);
        if (classes.a1.empty()) continue;
        const Letter pivot = *classes.a1.begin();
        if (check_pivot_reachability(s, classes, pivot) || check_pumping(s, classes, pivot)) continue;
        auto g = certified_gaps(s, pivot, {}, 20'000);
        auto observed = oracle::naive_gaps(oracle::expand_prefix(s, 20'000), pivot);
        std::vector<Word> distinct;
        for (const auto& u : observed.interior)
            if (std::find(distinct.begin(), distinct.end(), u) == distinct.end()) distinct.push_back(u);
        for (const auto& u : g.u_hat) CHECK(std::find(distinct.begin(), distinct.end(), u) != distinct.end());
        CHECK(distinct.size() < 200);
        CHECK(distinct == g.sampled_gaps);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("every pivot gives the same verdict kind")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = restrict_to_occurring(random_prolongable(rng, {4, 3, false}));
        auto classes = classification(s.morphism(), 0);
        std::optional<VerdictKind> kind;
        for (Letter b : classes.a1) {
            auto v = decide_member(s, DecideOptions{s.alphabet().symbol(b)});
            if (v.kind == VerdictKind::resource_limit) continue;
            CHECK(v.pivot == b);
            if (!kind) kind = v.kind;
            CHECK_MESSAGE(v.kind == *kind, format_system(s));
            CHECK(!recheck_witness(s, v));
        }
    }
}

TEST_CASE("squaring and renaming keep the verdict")
{
    std::mt19937_64 rng(91);
    int compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_prolongable(rng, {4, 3, false});
        auto base = decide_ultimate_periodicity(s).members.at(0).verdict;
        auto sq = decide_ultimate_periodicity(squared(s)).members.at(0).verdict;
        auto rn = decide_ultimate_periodicity(renamed(s, rng)).members.at(0).verdict;
        // A capped run carries no verdict to compare.
        const auto capped = VerdictKind::resource_limit;
        if (base.kind == capped || sq.kind == capped || rn.kind == capped) continue;
        ++compared;
        CHECK_MESSAGE(sq.kind == base.kind, format_system(s));
        CHECK(sq.minimal_period == base.minimal_period);
        CHECK(rn.kind == base.kind);
        CHECK(rn.minimal_period == base.minimal_period);
        CHECK(rn.preperiod == base.preperiod);
    }
    CHECK(compared >= 60);
}

TEST_CASE("equality at some n implies equality at |A|")
{
    std::mt19937_64 rng(2024);
    int found = 0;
    for (int trial = 0; trial < 20'000 && found < 200; ++trial) {
        auto h = random_morphism(rng, {4, 3, true});
        Word u = random_word(rng, h.size(), 4);
        Word v = random_word(rng, h.size(), 4);
        if (u == v) continue;
        std::optional<std::size_t> equal_at;
        for (std::size_t n = 1; n <= 8 && !equal_at; ++n) {
            try {
                if (oracle::naive_equal_at(h, u, v, n, 200'000)) equal_at = n;
            } catch (const ResourceLimit&) {
                break;
            }
        }
        if (!equal_at) continue;
        ++found;
        CHECK(lazy_equal(h, u, v, h.size()));
        CHECK(eventually_equal(h, u, v));
    }
    CHECK(found >= 100);
}
