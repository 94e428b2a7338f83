#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace debgraph::cycles {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Every elementary circuit of the digraph (Johnson's algorithm), each
// starting at its smallest vertex. Parallel edges are ignored.
std::vector<std::vector<std::size_t>> elementary_circuits(const Adjacency& adj);

// Rotation of a name cycle that is lexicographically smallest.
std::vector<std::string> canonical_rotation(std::vector<std::string> cycle);

// Canonical rotations, sorted and deduplicated.
std::vector<std::vector<std::string>>
canonical_cycles(const std::vector<std::vector<std::size_t>>& circuits,
                 const std::vector<std::string>& names);

} // namespace debgraph::cycles
