#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cuntzwalk/coisometry.hpp"
#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

/// A word over the digits {0, ..., N-1} that does not end in 0.
using DigitWord = std::vector<std::size_t>;

/// k w, with the convention that 0 followed by the empty word is empty.
DigitWord prepend_digit(std::size_t k, const DigitWord& w);

/// w' with k w' = w. The empty word strips to itself under k = 0 and is
/// absent for every other k.
std::optional<DigitWord> strip_digit(const DigitWord& w, std::size_t k);

/// Truncated basis {(i, w) : |w| <= level} of l2[V x words].
///
/// Order: word length, then lexicographic word, then vertex. Each level is
/// therefore an index prefix: the level-<=m vectors are the first
/// dimension(m) indices. There are N^m words of length <= m.
class DilationSpace {
 public:
  DilationSpace(std::size_t num_vertices, std::size_t num_digits);

  std::size_t num_vertices() const { return vertices_; }
  std::size_t num_digits() const { return digits_; }

  /// Number of basis vectors (i, w) with |w| <= level.
  std::size_t dimension(std::size_t level) const;

  std::size_t index(VertexIndex i, const DigitWord& w) const;
  VertexIndex vertex_of(std::size_t index) const { return index % vertices_; }
  DigitWord word_of(std::size_t index) const;

  /// Position of w in the (length, lexicographic) enumeration of words.
  std::size_t word_rank(const DigitWord& w) const;
  DigitWord word_at(std::size_t rank) const;

 private:
  std::size_t vertices_;
  std::size_t digits_;
};

/// Unitary matrix whose first column is `column` exactly.
///
/// Uses the phase-adjusted Householder reflector sending e_0 to the column.
/// Throws InputError when the column is not a unit vector within 1e-9.
DenseMatrix complete_unitary(const DenseVector& column);

/// (j, label) with no edge labeled `label` entering j.
struct Arrival {
  VertexIndex vertex = 0;
  LabelIndex label = 0;
  friend auto operator<=>(const Arrival&, const Arrival&) = default;
};

/// (i, k) with n_i <= k <= N-1, a digit left unused by the completion C_i.
struct Spare {
  VertexIndex vertex = 0;
  std::size_t digit = 0;
  friend auto operator<=>(const Spare&, const Spare&) = default;
};

/// The pairing phi of unmatched arrivals with spare digits.
class DilationAssembler {
 public:
  /// Pairs both sets in lexicographic order of their input indices.
  static DilationAssembler lexicographic(const LabeledWalk& walk);

  /// Arbitrary pairing. Every arrival must appear exactly once and every
  /// image must be a spare slot, but the map need not be injective; a
  /// non-bijective pairing is accepted so that its failure can be observed.
  static DilationAssembler from_pairs(const LabeledWalk& walk,
                                      std::vector<std::pair<Arrival, Spare>> pairs);

  const std::vector<std::pair<Arrival, Spare>>& pairs() const { return pairs_; }
  bool is_bijective() const { return bijective_; }

  /// phi(j, label); nothing when (j, label) is not an arrival.
  std::optional<Spare> image(VertexIndex j, LabelIndex l) const;
  std::vector<Arrival> preimages(VertexIndex i, std::size_t k) const;

  static std::vector<Arrival> arrivals(const LabeledWalk& walk);
  static std::vector<Spare> spares(const LabeledWalk& walk);

 private:
  std::vector<std::pair<Arrival, Spare>> pairs_;
  bool bijective_ = false;
};

struct DilationOptions {
  /// One n_i x n_i matrix per vertex. Only shapes are checked, so a
  /// non-unitary completion may be injected on purpose.
  std::optional<std::vector<DenseMatrix>> completions;
  std::optional<DilationAssembler> assembler;
};

/// Truncation of the Cuntz dilation at depth L.
///
/// s(label) maps level <= L into level <= L+1 and s_star(label) maps level
/// <= L+1 into level <= L. Both are exact compressions of the infinite
/// operators because S shifts word length up by at most one and S^* down by
/// at most one.
struct DilationOperators {
  LabeledWalk walk;
  DilationSpace space;
  std::size_t depth = 0;
  /// Labels with nonzero amplitude at each vertex, ascending (Lambda_i).
  std::vector<std::vector<LabelIndex>> out_labels;
  std::vector<DenseMatrix> completions;
  DilationAssembler assembler;
  std::vector<SparseMatrix> s;
  std::vector<SparseMatrix> s_star;

  std::size_t dimension() const { return space.dimension(depth); }
  std::size_t num_labels() const { return s.size(); }

  /// S_word applied to a vector of level <= depth - |word|.
  DenseVector apply_word(std::span<const LabelIndex> word, const DenseVector& v) const;
  DenseVector basis_vector(VertexIndex i, const DigitWord& w) const;
};

DilationOperators build_dilation(const LabeledWalk& walk, std::size_t depth,
                                 const DilationOptions& options = {});

struct CuntzReport {
  /// max |S_mu^* S_label - delta I| on level <= L.
  double isometry_residual = 0.0;
  /// max |sum S_label S_label^* - I| on level <= L.
  double range_residual = 0.0;
  /// max |P_K S_label^* P_K - V_label^*|.
  double compression_residual = 0.0;
  /// max |s_star - s^dagger|.
  double adjoint_residual = 0.0;
  double tolerance = 0.0;

  double worst() const;
  bool passed() const { return worst() <= tolerance; }
};

CuntzReport verify_cuntz(const DilationOperators& ops, double tol = 1e-10);

/// Rank of {S_w (i, empty) : |w| <= level} inside the level-<=level space.
/// level defaults to the build depth.
std::size_t cyclicity_rank(const DilationOperators& ops, std::optional<std::size_t> level = {});

/// P_{K_m} = sum_{|w|=m} S_w P_K S_w^* on the level-<=L space.
DenseMatrix km_projection(const DilationOperators& ops, std::size_t m);

/// Words in the first-return set of vertex i with length <= n_max: paths of
/// length >= 1 that end at a designated vertex, with no designated vertex
/// at any intermediate step.
std::vector<Word> first_return_words(const LabeledWalk& walk, VertexIndex i,
                                     std::span<const VertexIndex> designated, std::size_t n_max);

/// ||(i, empty) - sum_{|w| <= n} alpha_{i,w} S_w (i.w, empty)||^2 over the
/// first-return set, for n = 1..n_max. Requires n_max <= depth.
std::vector<double> first_return_residuals(const DilationOperators& ops, VertexIndex i,
                                           std::span<const VertexIndex> designated,
                                           std::size_t n_max);

/// 1 - sum_{|w| <= n} |alpha_{i,w}|^2 over the first-return set, n = 1..n_max,
/// by dynamic programming with designated vertices absorbing.
std::vector<double> first_return_deficit(const LabeledWalk& walk, VertexIndex i,
                                         std::span<const VertexIndex> designated,
                                         std::size_t n_max);

}  // namespace cuntz
