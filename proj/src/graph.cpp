#include "d0l/graph.hpp"

#include <algorithm>
#include <limits>

namespace d0l::graph {

std::vector<bool> reachable(const Adjacency& graph, std::span<const Vertex> sources)
{
    std::vector<bool> seen(graph.size(), false);
    std::vector<Vertex> stack;
    for (Vertex s : sources)
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : graph[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return seen;
}

std::vector<std::uint32_t> strongly_connected_components(const Adjacency& graph)
{
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = graph.size();
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0), component(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::uint32_t next_index = 0, next_component = 0;

    struct Frame {
        Vertex v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = graph[f.v];
            if (f.edge < succ.size()) {
                Vertex w = succ[f.edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            Vertex v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component[w] = next_component;
                } while (w != v);
                ++next_component;
            }
        }
    }
    return component;
}

std::vector<bool> cyclic_vertices(const Adjacency& graph)
{
    auto component = strongly_connected_components(graph);
    std::vector<std::size_t> size(graph.size(), 0);
    for (auto c : component) ++size[c];
    std::vector<bool> cyclic(graph.size(), false);
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (size[component[v]] > 1) {
            cyclic[v] = true;
            continue;
        }
        cyclic[v] = std::find(graph[v].begin(), graph[v].end(), v) != graph[v].end();
    }
    return cyclic;
}

std::vector<bool> cycle_fed(const Adjacency& graph, std::span<const Vertex> sources)
{
    auto from_sources = reachable(graph, sources);
    auto cyclic = cyclic_vertices(graph);
    std::vector<Vertex> seeds;
    for (Vertex v = 0; v < graph.size(); ++v)
        if (from_sources[v] && cyclic[v]) seeds.push_back(v);
    return reachable(graph, seeds);
}

}  // namespace d0l::graph
