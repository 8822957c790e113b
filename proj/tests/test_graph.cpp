#include <doctest.h>

#include "d0l/graph.hpp"

using namespace d0l::graph;

TEST_CASE("reachable follows edges from all sources")
{
    Adjacency g{{1}, {2}, {}, {0}};
    Vertex src[] = {0};
    auto seen = reachable(g, src);
    CHECK(seen == std::vector<bool>{true, true, true, false});
}

TEST_CASE("strongly connected components group mutual reachability")
{
    Adjacency g{{1}, {2}, {0, 3}, {4}, {3}, {}};
    auto c = strongly_connected_components(g);
    CHECK(c[0] == c[1]);
    CHECK(c[1] == c[2]);
    CHECK(c[3] == c[4]);
    CHECK(c[0] != c[3]);
    CHECK(c[5] != c[3]);
    CHECK(c[5] != c[0]);
}

TEST_CASE("cyclic vertices include self-loops but not singletons")
{
    Adjacency g{{0}, {2}, {}, {4}, {3}};
    CHECK(cyclic_vertices(g) == std::vector<bool>{true, false, false, true, true});
}

TEST_CASE("cycle_fed marks vertices at or after a cycle reachable from the sources")
{
    // 0 -> 1 -> 2 <-> 3 -> 4, and an unrelated cycle 5 <-> 6 -> 7
    Adjacency g{{1}, {2}, {3}, {2, 4}, {}, {6}, {5, 7}, {}};
    Vertex src[] = {0};
    auto fed = cycle_fed(g, src);
    CHECK(fed == std::vector<bool>{false, false, true, true, true, false, false, false});
    Vertex none[] = {4};
    auto empty = cycle_fed(g, none);
    CHECK(std::none_of(empty.begin(), empty.end(), [](bool b) { return b; }));
}

TEST_CASE("deep chains do not overflow the stack")
{
    const std::size_t n = 200'000;
    Adjacency g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g[v].push_back(v + 1);
    g[n - 1].push_back(0);
    auto c = strongly_connected_components(g);
    CHECK(std::all_of(c.begin(), c.end(), [&](auto x) { return x == c[0]; }));
}
