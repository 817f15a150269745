#pragma once
// Exact branch-and-bound solvers for the tiny NP-hard subproblems: minimum
// hitting set over edge sets and minimum clique cover (chromatic number of
// the complement graph).  Deterministic tie-breaking throughout.

#include <cstdint>
#include <utility>
#include <vector>

#include "factor/presentation.hpp"

namespace factor {

// Minimum hitting set of bit-mask sets (each set must be nonempty).
// Returns (size, chosen mask); among minimum-size solutions returns the one
// whose sorted element tuple is lexicographically smallest.
// An empty collection yields (0, 0); a collection containing an empty set has
// no hitting set and returns (-1, 0).
std::pair<int, std::uint64_t> min_hitting_set(std::vector<std::uint64_t> sets);

// Minimum partition of {0..n-1} into cliques of the graph `adj`
// (adj[i] = neighbor bit mask over indices < 64).  Returns (k, partition);
// the partition is deterministic for fixed input.
std::pair<int, std::vector<std::vector<int>>> min_clique_cover(
    int n, const std::vector<std::uint64_t>& adj);

// Strongly connected components of a digraph on 0..n-1 (iterative Tarjan,
// roots visited in index order).  Returned in completion order (reverse
// topological); every vertex appears in exactly one component.
std::vector<std::vector<int>> strongly_connected_components(
    int n, const std::vector<std::vector<int>>& adj);

}  // namespace factor
