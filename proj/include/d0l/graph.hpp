#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace d0l::graph {

using Vertex = std::uint32_t;
using Adjacency = std::vector<std::vector<Vertex>>;

/// Vertices reachable from `sources` by walks of length >= 0.
std::vector<bool> reachable(const Adjacency& graph, std::span<const Vertex> sources);

/// Component id per vertex (Tarjan, iterative); ids are in reverse topological order.
std::vector<std::uint32_t> strongly_connected_components(const Adjacency& graph);

/// Vertices lying on some directed cycle (nontrivial component or self-loop).
std::vector<bool> cyclic_vertices(const Adjacency& graph);

/// Vertices that infinitely many walks from `sources` end in: those reachable
/// from a cyclic vertex that is itself reachable from a source.
std::vector<bool> cycle_fed(const Adjacency& graph, std::span<const Vertex> sources);

}  // namespace d0l::graph
