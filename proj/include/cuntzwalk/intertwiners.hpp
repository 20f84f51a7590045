#pragma once

#include <cstddef>
#include <vector>

#include "cuntzwalk/coisometry.hpp"
#include "cuntzwalk/product_analysis.hpp"
#include "cuntzwalk/walk_model.hpp"

namespace cuntz {

/// Fixed points of sigma(T) = sum V'_l T V_l^*, one basis element per balanced
/// minimal invariant set of source x target.
///
/// Matrices have shape |V'| x |V| with T_{i,i'} at (row i', column i).
struct IntertwinerSpace {
  LabeledWalk source;
  LabeledWalk target;
  MinimalSetReport report;
  /// Indices into report.sets of the balanced sets, in report order.
  std::vector<std::size_t> balanced_sets;
  /// basis[k] is 1 at the representative of balanced_sets[k] and 0 at every
  /// other representative.
  std::vector<DenseMatrix> basis;

  std::size_t dimension() const { return basis.size(); }
};

struct IntertwinerOptions {
  double balance_tol = 1e-9;
  /// Skip the sparse LU and use plain fixed-point iteration on transient pairs.
  bool force_iteration = false;
  std::size_t max_iterations = 100000;
  double iteration_tol = 1e-12;
};

IntertwinerSpace intertwiner_basis(const LabeledWalk& source, const LabeledWalk& target,
                                   const IntertwinerOptions& options = {});

struct FixedPointSpace {
  std::size_t dimension = 0;
  /// Orthonormal in the Frobenius inner product.
  std::vector<DenseMatrix> basis;
  /// Singular values of Id - sigma, descending.
  std::vector<double> singular_values;
};

struct OracleOptions {
  double threshold = 1e-8;
  std::size_t max_unknowns = 400;
};

/// Null space of Id - sigma on |V'| x |V| matrices from a dense SVD.
/// Throws InputError when |V||V'| exceeds max_unknowns.
FixedPointSpace fixed_point_oracle(const LabeledWalk& source, const LabeledWalk& target,
                                   const OracleOptions& options = {});

/// Largest relative distance from an element of either family to the span of
/// the other (Frobenius norm). Zero when the spans coincide.
double span_residual(const std::vector<DenseMatrix>& a, const std::vector<DenseMatrix>& b);

/// T1 * T2 in the commutant: the limit of sigma^n(T1 T2). Throws
/// ConvergenceError when successive iterates still differ by more than tol
/// after max_iterations steps.
DenseMatrix commutant_product(const LabeledWalk& walk, const DenseMatrix& t1, const DenseMatrix& t2,
                              double tol = 1e-12, std::size_t max_iterations = 100000);

/// For n = 1..n_max, max over pairs (i, i') of
///   |T_{i,i'} - sum_{w in F(i,i'), |w| <= n} alpha_{i,w} conj(alpha'_{i',w}) T_{i.w,i'.w}|
/// where F(i,i') are the first arrivals at the representatives of `report`.
std::vector<double> first_arrival_deviation(const ProductGraph& pg, const MinimalSetReport& report,
                                            const DenseMatrix& t, std::size_t n_max);

/// Agreement between the structured basis and the oracle.
struct OracleComparison {
  std::size_t structured_dimension = 0;
  std::size_t oracle_dimension = 0;
  std::size_t balanced_count = 0;
  double span_residual = 0.0;
  /// max |sigma(T) - T| over the structured basis.
  double fixed_point_residual = 0.0;

  bool agree(double tol = 1e-8) const;
};

OracleComparison compare_with_oracle(const IntertwinerSpace& space, const FixedPointSpace& oracle);

}  // namespace cuntz
