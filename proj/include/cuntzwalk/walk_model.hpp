#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cuntzwalk/types.hpp"

namespace cuntz {

/// One labeled edge as supplied by a caller, identified by vertex/label ids.
struct EdgeSpec {
  std::string from;
  std::string label;
  std::string to;
  Complex alpha;
};

/// A stored edge i ->_label j with nonzero amplitude.
struct Edge {
  VertexIndex from = 0;
  LabelIndex label = 0;
  VertexIndex to = 0;
  Complex alpha;
};

/// Finite labeled weighted graph ("random walk").
///
/// Vertices and labels are opaque string ids; dense indices follow input
/// order. The amplitude table is total: a missing edge is an exact zero, and
/// any supplied amplitude with modulus below kZeroThreshold is dropped.
///
/// Construction only enforces structural sanity (known ids, no duplicate
/// (vertex, label) edge). Row normalization and the injectivity conditions
/// are reported by validate_walk().
class LabeledWalk {
 public:
  LabeledWalk(std::vector<std::string> vertices, std::vector<std::string> labels,
              std::span<const EdgeSpec> edges);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_labels() const { return labels_.size(); }

  const std::vector<std::string>& vertex_ids() const { return vertices_; }
  const std::vector<std::string>& label_ids() const { return labels_; }
  const std::string& vertex_id(VertexIndex i) const;
  const std::string& label_id(LabelIndex l) const;

  VertexIndex vertex_index(std::string_view id) const;
  LabelIndex label_index(std::string_view id) const;

  /// alpha_{i,label}; zero when there is no edge.
  Complex alpha(VertexIndex i, LabelIndex l) const;

  /// i . label, present exactly when alpha_{i,label} != 0.
  std::optional<VertexIndex> target(VertexIndex i, LabelIndex l) const;

  /// All vertices i with i ->_label j. A valid walk has at most one.
  std::vector<VertexIndex> sources(VertexIndex j, LabelIndex l) const;

  /// Edges in (from, label) order.
  std::vector<Edge> edges() const;

  friend bool operator==(const LabeledWalk&, const LabeledWalk&) = default;

 private:
  std::size_t slot(VertexIndex i, LabelIndex l) const { return i * labels_.size() + l; }
  void check_vertex(VertexIndex i) const;
  void check_label(LabelIndex l) const;

  std::vector<std::string> vertices_;
  std::vector<std::string> labels_;
  std::vector<Complex> alpha_;
  std::vector<std::size_t> target_;
  std::map<std::string, VertexIndex, std::less<>> vertex_lookup_;
  std::map<std::string, LabelIndex, std::less<>> label_lookup_;
};

enum class ViolationKind {
  RowNormalization,  // sum_label |alpha|^2 != 1
  OutInjectivity,    // two labels from one vertex reach the same vertex
  InInjectivity,     // two vertices reach one vertex with the same label
};

struct Violation {
  ViolationKind kind;
  VertexIndex vertex = 0;
  LabelIndex label = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Checks every walk invariant; never throws.
ValidationReport validate_walk(const LabeledWalk& walk, double tol = kNormalizationTolerance);

/// Throws InvalidWalk unless the walk defines a row coisometry, i.e. rows are
/// normalized and in-injectivity holds. Out-injectivity is not needed for the
/// coisometry, its dilation, or the intertwiner theory, so it is not required
/// here (the cyclic walk on Z/2Z with labels +1, -1 has parallel edges).
void require_coisometric(const LabeledWalk& walk, double tol = kNormalizationTolerance);

/// Follows a word from vertex i. Returns (i . word, alpha_{i,word}) when every
/// step has nonzero amplitude, nothing otherwise. The empty word gives (i, 1).
std::optional<std::pair<VertexIndex, Complex>> walk_step(const LabeledWalk& walk, VertexIndex i,
                                                         std::span<const LabelIndex> word);

/// Label index map from `walk` to `other`, matching label ids. Throws
/// AlphabetMismatch when the id sets differ.
std::vector<LabelIndex> label_correspondence(const LabeledWalk& walk, const LabeledWalk& other);

/// Cayley graph of a finite group: vertices are the group elements, labels the
/// generators, g ->_s s*g with amplitude phase(s)/sqrt(#generators).
///
/// `table[a][b]` is the product a*b. Phases are keyed by generator element and
/// must have unit modulus. Element names default to "0", "1", ...
LabeledWalk cayley_walk(const std::vector<std::vector<std::size_t>>& table,
                        const std::vector<std::size_t>& generators,
                        const std::map<std::size_t, Complex>& phases = {},
                        std::vector<std::string> element_names = {});

}  // namespace cuntz
