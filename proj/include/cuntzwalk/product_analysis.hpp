#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuntzwalk/graph.hpp"
#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

/// Transition structure on V x V'. Node (i, i') has id i * |V'| + i', and
/// (i, i') ->_label (i.label, i'.label) whenever both amplitudes are nonzero.
/// Labels are indexed by the first walk; the second walk is matched by id.
class ProductGraph {
 public:
  ProductGraph(const LabeledWalk& first, const LabeledWalk& second);

  const LabeledWalk& first() const { return first_; }
  const LabeledWalk& second() const { return second_; }
  std::size_t num_nodes() const { return first_.num_vertices() * second_.num_vertices(); }
  std::size_t num_labels() const { return first_.num_labels(); }

  std::size_t node_id(NodePair p) const;
  NodePair node(std::size_t id) const;

  std::optional<NodePair> successor(NodePair p, LabelIndex l) const;
  /// alpha_{i,label} and alpha'_{i',label} for a node.
  Complex alpha_first(NodePair p, LabelIndex l) const { return first_.alpha(p.first, l); }
  Complex alpha_second(NodePair p, LabelIndex l) const { return second_.alpha(p.second, labels_[l]); }

  const Digraph& digraph() const { return graph_; }

  std::string describe(NodePair p) const;

 private:
  LabeledWalk first_;
  LabeledWalk second_;
  std::vector<LabelIndex> labels_;
  std::vector<std::vector<std::size_t>> successor_;  // [node][label] or npos
  Digraph graph_;
};

ProductGraph product_graph(const LabeledWalk& first, const LabeledWalk& second);

/// Forward closure of a node, including the node, in ascending order.
std::vector<NodePair> orbit(const ProductGraph& pg, NodePair start);

/// One step (node, label) of a loop inside a minimal set.
struct LoopStep {
  NodePair node;
  LabelIndex label = 0;
};

/// Why a minimal set is not balanced.
struct BalanceWitness {
  enum class Kind { ModulusMismatch, Holonomy };
  Kind kind = Kind::ModulusMismatch;
  /// For ModulusMismatch: the offending node and label.
  NodePair node;
  LabelIndex label = 0;
  /// For Holonomy: a loop whose amplitude products differ.
  std::vector<LoopStep> loop;
  /// prod alpha / prod alpha' along the loop.
  Complex holonomy;
};

struct MinimalSet {
  /// Ascending member list.
  std::vector<NodePair> nodes;
  /// Lexicographically smallest member.
  NodePair representative;
  bool balanced = false;
  std::optional<BalanceWitness> witness;
  /// For balanced sets: theta on `nodes` with theta(representative) = 1 and
  /// theta(i.l, i'.l) = theta(i, i') alpha'_{i',l} / alpha_{i,l}. This is the
  /// propagation forced by the fixed-point equation once the moduli agree.
  std::vector<Complex> potential;
  bool classified = false;
};

struct MinimalSetReport {
  /// Ordered by representative.
  std::vector<MinimalSet> sets;

  std::size_t balanced_count() const;
  std::vector<NodePair> representatives() const;
  /// Index of the set containing p, if any.
  std::optional<std::size_t> set_of(NodePair p) const;
};

/// Sink strongly connected components of the product graph.
MinimalSetReport minimal_invariant_sets(const ProductGraph& pg);

/// Fills in the balanced flags, witnesses and potentials.
void classify_balanced(const ProductGraph& pg, MinimalSetReport& report, double tol = 1e-9);

/// minimal_invariant_sets followed by classify_balanced.
MinimalSetReport analyze_product(const ProductGraph& pg, double tol = 1e-9);

/// P((i,i'); n) for n = 0..n_max: total weight |alpha_w||alpha'_w| of words w
/// of length n whose path from the start never visits a designated
/// representative, the start included.
std::vector<double> first_passage(const ProductGraph& pg, const MinimalSetReport& report,
                                  NodePair start, std::size_t n_max);

/// The possible-transition digraph of the walk is strongly connected.
bool is_connected(const LabeledWalk& walk);

/// For every pair of distinct vertices some length n admits no word that is
/// possible from both.
bool is_separating(const LabeledWalk& walk);

enum class IrreducibilityVerdict {
  Irreducible,   // connected and separating: sufficient for irreducibility
  Inconclusive,  // the sufficient test does not apply
};

IrreducibilityVerdict irreducibility_verdict(const LabeledWalk& walk);

}  // namespace cuntz
