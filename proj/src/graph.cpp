#include "cuntzwalk/graph.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace cuntz {

SccDecomposition strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), low(n, 0), raw(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
  std::size_t counter = 0, raw_count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0 && index[v] == unvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < g[v].size()) {
        const std::size_t w = g[v][edge++];
        if (index[w] == unvisited) {
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }

  // Renumber by smallest member; nodes are scanned in ascending order.
  std::vector<std::size_t> renumber(raw_count, unvisited);
  SccDecomposition out;
  out.component.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (renumber[raw[v]] == unvisited) {
      renumber[raw[v]] = out.members.size();
      out.members.emplace_back();
    }
    out.component[v] = renumber[raw[v]];
    out.members[out.component[v]].push_back(v);
  }
  out.is_sink.assign(out.members.size(), true);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : g[v]) {
      if (out.component[w] != out.component[v]) out.is_sink[out.component[v]] = false;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> sink_components(const Digraph& g) {
  auto scc = strongly_connected_components(g);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < scc.members.size(); ++c) {
    if (scc.is_sink[c]) out.push_back(std::move(scc.members[c]));
  }
  return out;
}

std::vector<std::size_t> reachable_from(const Digraph& g, std::size_t start) {
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> frontier{start};
  seen[start] = true;
  while (!frontier.empty()) {
    const std::size_t v = frontier.back();
    frontier.pop_back();
    for (std::size_t w : g[v]) {
      if (!seen[w]) {
        seen[w] = true;
        frontier.push_back(w);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

bool strongly_connected(const Digraph& g) {
  if (g.empty()) return true;
  return strongly_connected_components(g).members.size() == 1;
}

}  // namespace cuntz
