#pragma once

#include <vector>

#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

/// The row coisometry (V_label) on l2[V] attached to a walk.
///
/// V_label maps basis vector j to conj(alpha_{i,label}) i when i ->_label j
/// and to 0 otherwise, so V_label^* maps i to alpha_{i,label} (i . label).
///
/// Matrix convention for operators T from l2[V] to l2[V']: the entry
/// T_{i,i'} = <T i, i'> is stored at (row i', column i).
class Coisometry {
 public:
  explicit Coisometry(const LabeledWalk& walk);

  const LabeledWalk& walk() const { return walk_; }
  std::size_t dimension() const { return walk_.num_vertices(); }
  std::size_t num_labels() const { return v_.size(); }

  const SparseMatrix& v(LabelIndex l) const { return v_.at(l); }
  const SparseMatrix& v_star(LabelIndex l) const { return v_star_.at(l); }

  /// max |(sum V V^*) - I| entrywise.
  double identity_residual() const;

 private:
  LabeledWalk walk_;
  std::vector<SparseMatrix> v_;
  std::vector<SparseMatrix> v_star_;
};

/// Throws InvalidWalk when the walk is not coisometric.
Coisometry build_coisometry(const LabeledWalk& walk);

/// sigma(T) = sum_label V'_label T V_label^*, labels paired by id.
/// T has shape |V'| x |V| (rows indexed by target's vertices).
DenseMatrix apply_sigma(const Coisometry& source, const Coisometry& target, const DenseMatrix& t);

}  // namespace cuntz
