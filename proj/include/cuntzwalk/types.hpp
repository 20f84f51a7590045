#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cuntz {

using Complex = std::complex<double>;
using VertexIndex = std::size_t;
using LabelIndex = std::size_t;

/// A word over the label alphabet, stored as label indices.
using Word = std::vector<LabelIndex>;

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
/// Column-compressed complex sparse matrix.
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Amplitudes with modulus below this value are stored as exact zeros.
inline constexpr double kZeroThreshold = 1e-12;

/// Default tolerance for the row-normalization check.
inline constexpr double kNormalizationTolerance = 1e-9;

/// An element (i, i') of V x V'.
struct NodePair {
  VertexIndex first = 0;
  VertexIndex second = 0;

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: schema violations, unknown identifiers, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A walk that does not define a row coisometry.
class InvalidWalk : public Error {
 public:
  using Error::Error;
};

/// The two walks do not share a label alphabet.
class AlphabetMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// An iteration failed to settle within its cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuntz
