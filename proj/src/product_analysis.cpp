#include "cuntzwalk/product_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>

namespace cuntz {

ProductGraph::ProductGraph(const LabeledWalk& first, const LabeledWalk& second)
    : first_(first), second_(second), labels_(label_correspondence(first, second)) {
  const std::size_t nodes = num_nodes();
  successor_.assign(nodes, std::vector<std::size_t>(num_labels(), npos));
  graph_.assign(nodes, {});
  for (std::size_t id = 0; id < nodes; ++id) {
    const NodePair p = node(id);
    for (LabelIndex l = 0; l < num_labels(); ++l) {
      auto a = first_.target(p.first, l);
      auto b = second_.target(p.second, labels_[l]);
      if (!a || !b) continue;
      const std::size_t to = node_id({*a, *b});
      successor_[id][l] = to;
      if (std::find(graph_[id].begin(), graph_[id].end(), to) == graph_[id].end()) {
        graph_[id].push_back(to);
      }
    }
  }
}

std::size_t ProductGraph::node_id(NodePair p) const {
  if (p.first >= first_.num_vertices() || p.second >= second_.num_vertices()) {
    throw InputError("product node out of range");
  }
  return p.first * second_.num_vertices() + p.second;
}

NodePair ProductGraph::node(std::size_t id) const {
  if (id >= num_nodes()) throw InputError("product node id out of range");
  return {id / second_.num_vertices(), id % second_.num_vertices()};
}

std::optional<NodePair> ProductGraph::successor(NodePair p, LabelIndex l) const {
  const std::size_t to = successor_[node_id(p)].at(l);
  if (to == npos) return std::nullopt;
  return node(to);
}

std::string ProductGraph::describe(NodePair p) const {
  return "(" + first_.vertex_id(p.first) + "," + second_.vertex_id(p.second) + ")";
}

ProductGraph product_graph(const LabeledWalk& first, const LabeledWalk& second) {
  return ProductGraph(first, second);
}

std::vector<NodePair> orbit(const ProductGraph& pg, NodePair start) {
  std::vector<NodePair> out;
  for (auto id : reachable_from(pg.digraph(), pg.node_id(start))) out.push_back(pg.node(id));
  return out;
}

std::size_t MinimalSetReport::balanced_count() const {
  return static_cast<std::size_t>(
      std::count_if(sets.begin(), sets.end(), [](const MinimalSet& m) { return m.balanced; }));
}

std::vector<NodePair> MinimalSetReport::representatives() const {
  std::vector<NodePair> out;
  for (const auto& m : sets) out.push_back(m.representative);
  return out;
}

std::optional<std::size_t> MinimalSetReport::set_of(NodePair p) const {
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (std::binary_search(sets[k].nodes.begin(), sets[k].nodes.end(), p)) return k;
  }
  return std::nullopt;
}

MinimalSetReport minimal_invariant_sets(const ProductGraph& pg) {
  MinimalSetReport report;
  for (const auto& members : sink_components(pg.digraph())) {
    MinimalSet m;
    for (auto id : members) m.nodes.push_back(pg.node(id));
    // Node ids are ordered like the pairs, so the first member is the smallest.
    m.representative = m.nodes.front();
    report.sets.push_back(std::move(m));
  }
  return report;
}

namespace {

// Loop representative -> ... -> representative through the BFS tree of `parent`.
std::vector<LoopStep> tree_path(const std::map<NodePair, LoopStep>& parent, NodePair root,
                                NodePair to) {
  std::vector<LoopStep> path;
  for (NodePair at = to; at != root;) {
    const LoopStep& step = parent.at(at);
    path.push_back(step);
    at = step.node;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Shortest path from `from` to `to` inside the set (which is strongly connected).
std::vector<LoopStep> path_within(const ProductGraph& pg, const std::vector<NodePair>& nodes,
                                  NodePair from, NodePair to) {
  if (from == to) return {};
  std::map<NodePair, LoopStep> parent;
  std::deque<NodePair> queue{from};
  parent[from] = {from, 0};
  while (!queue.empty()) {
    const NodePair u = queue.front();
    queue.pop_front();
    for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
      auto v = pg.successor(u, l);
      if (!v || parent.count(*v) || !std::binary_search(nodes.begin(), nodes.end(), *v)) continue;
      parent[*v] = {u, l};
      if (*v == to) {
        parent.erase(from);
        return tree_path(parent, from, to);
      }
      queue.push_back(*v);
    }
  }
  throw Error("minimal set is not strongly connected");
}

Complex loop_holonomy(const ProductGraph& pg, const std::vector<LoopStep>& loop) {
  Complex h{1.0, 0.0};
  for (const auto& s : loop) h *= pg.alpha_first(s.node, s.label) / pg.alpha_second(s.node, s.label);
  return h;
}

void classify_one(const ProductGraph& pg, MinimalSet& m, double tol) {
  m.classified = true;
  m.balanced = false;
  m.witness.reset();
  m.potential.clear();

  for (const auto& p : m.nodes) {
    for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
      const double a = std::abs(pg.alpha_first(p, l));
      const double b = std::abs(pg.alpha_second(p, l));
      if (std::abs(a - b) > tol || ((a == 0.0) != (b == 0.0))) {
        BalanceWitness w;
        w.kind = BalanceWitness::Kind::ModulusMismatch;
        w.node = p;
        w.label = l;
        m.witness = std::move(w);
        return;
      }
    }
  }

  // Potential over a BFS tree rooted at the representative.
  const NodePair root = m.representative;
  std::map<NodePair, Complex> theta{{root, Complex{1.0, 0.0}}};
  std::map<NodePair, LoopStep> parent;
  std::deque<NodePair> queue{root};
  while (!queue.empty()) {
    const NodePair u = queue.front();
    queue.pop_front();
    for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
      auto v = pg.successor(u, l);
      if (!v || theta.count(*v)) continue;
      theta[*v] = theta[u] * pg.alpha_second(u, l) / pg.alpha_first(u, l);
      parent[*v] = {u, l};
      queue.push_back(*v);
    }
  }

  for (const auto& u : m.nodes) {
    for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
      auto v = pg.successor(u, l);
      if (!v) continue;
      const Complex predicted = theta.at(u) * pg.alpha_second(u, l) / pg.alpha_first(u, l);
      if (std::abs(predicted - theta.at(*v)) <= tol) continue;

      // root -> u -> v -> root and root -> v -> root; their holonomies differ,
      // so at least one is not 1.
      const auto back = path_within(pg, m.nodes, *v, root);
      auto through_edge = tree_path(parent, root, u);
      through_edge.push_back({u, l});
      through_edge.insert(through_edge.end(), back.begin(), back.end());
      auto direct = tree_path(parent, root, *v);
      direct.insert(direct.end(), back.begin(), back.end());

      BalanceWitness w;
      w.kind = BalanceWitness::Kind::Holonomy;
      const Complex h1 = loop_holonomy(pg, through_edge);
      if (std::abs(h1 - 1.0) > tol) {
        w.loop = std::move(through_edge);
        w.holonomy = h1;
      } else {
        w.loop = std::move(direct);
        w.holonomy = loop_holonomy(pg, w.loop);
      }
      w.node = u;
      w.label = l;
      m.witness = std::move(w);
      return;
    }
  }

  m.balanced = true;
  for (const auto& p : m.nodes) m.potential.push_back(theta.at(p));
}

}  // namespace

void classify_balanced(const ProductGraph& pg, MinimalSetReport& report, double tol) {
  for (auto& m : report.sets) classify_one(pg, m, tol);
}

MinimalSetReport analyze_product(const ProductGraph& pg, double tol) {
  auto report = minimal_invariant_sets(pg);
  classify_balanced(pg, report, tol);
  return report;
}

std::vector<double> first_passage(const ProductGraph& pg, const MinimalSetReport& report,
                                  NodePair start, std::size_t n_max) {
  std::vector<bool> designated(pg.num_nodes(), false);
  for (const auto& m : report.sets) designated[pg.node_id(m.representative)] = true;

  std::vector<double> mass(pg.num_nodes(), 0.0);
  const std::size_t s = pg.node_id(start);
  if (!designated[s]) mass[s] = 1.0;

  std::vector<double> out;
  for (std::size_t n = 0;; ++n) {
    double total = 0.0;
    for (double x : mass) total += x;
    out.push_back(total);
    if (n == n_max) break;

    std::vector<double> next(pg.num_nodes(), 0.0);
    for (std::size_t id = 0; id < pg.num_nodes(); ++id) {
      if (mass[id] == 0.0) continue;
      const NodePair p = pg.node(id);
      for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
        auto q = pg.successor(p, l);
        if (!q) continue;
        const std::size_t to = pg.node_id(*q);
        if (designated[to]) continue;
        next[to] += mass[id] * std::abs(pg.alpha_first(p, l)) * std::abs(pg.alpha_second(p, l));
      }
    }
    mass = std::move(next);
  }
  return out;
}

bool is_connected(const LabeledWalk& walk) {
  Digraph g(walk.num_vertices());
  for (const auto& e : walk.edges()) g[e.from].push_back(e.to);
  return strongly_connected(g);
}

bool is_separating(const LabeledWalk& walk) {
  const ProductGraph pg(walk, walk);

  // alive = pairs admitting a common word of the current length. The set only
  // shrinks, so it settles within |V|^2 rounds.
  std::vector<bool> alive(pg.num_nodes(), true);
  for (std::size_t round = 0; round <= pg.num_nodes(); ++round) {
    std::vector<bool> next(pg.num_nodes(), false);
    bool changed = false;
    for (std::size_t id = 0; id < pg.num_nodes(); ++id) {
      if (!alive[id]) continue;
      for (auto to : pg.digraph()[id]) {
        if (alive[to]) {
          next[id] = true;
          break;
        }
      }
      changed = changed || !next[id];
    }
    alive = std::move(next);
    if (!changed) break;
  }
  for (std::size_t id = 0; id < pg.num_nodes(); ++id) {
    const NodePair p = pg.node(id);
    if (p.first != p.second && alive[id]) return false;
  }
  return true;
}

IrreducibilityVerdict irreducibility_verdict(const LabeledWalk& walk) {
  return is_connected(walk) && is_separating(walk) ? IrreducibilityVerdict::Irreducible
                                                   : IrreducibilityVerdict::Inconclusive;
}

}  // namespace cuntz
