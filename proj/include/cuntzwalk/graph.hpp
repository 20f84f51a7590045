#pragma once

#include <cstddef>
#include <vector>

namespace cuntz {

/// Adjacency lists of a finite digraph on nodes 0..n-1.
using Digraph = std::vector<std::vector<std::size_t>>;

struct SccDecomposition {
  /// component[v] is the component id of node v.
  std::vector<std::size_t> component;
  /// Members of each component, ascending.
  std::vector<std::vector<std::size_t>> members;
  /// True when no edge leaves the component.
  std::vector<bool> is_sink;
};

/// Strongly connected components (iterative Tarjan). Component ids are
/// renumbered so that components are ordered by their smallest member.
SccDecomposition strongly_connected_components(const Digraph& g);

/// Sink components, each as an ascending member list, ordered by smallest member.
std::vector<std::vector<std::size_t>> sink_components(const Digraph& g);

/// Nodes reachable from `start`, including `start`, ascending.
std::vector<std::size_t> reachable_from(const Digraph& g, std::size_t start);

bool strongly_connected(const Digraph& g);

}  // namespace cuntz
