#include "cuntzwalk/coisometry.hpp"

#include <complex>

namespace cuntz {

Coisometry::Coisometry(const LabeledWalk& walk) : walk_(walk) {
  require_coisometric(walk_);
  const auto n = static_cast<Eigen::Index>(walk_.num_vertices());
  for (LabelIndex l = 0; l < walk_.num_labels(); ++l) {
    std::vector<Eigen::Triplet<Complex>> entries;
    for (VertexIndex i = 0; i < walk_.num_vertices(); ++i) {
      if (auto j = walk_.target(i, l)) {
        entries.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*j),
                             std::conj(walk_.alpha(i, l)));
      }
    }
    SparseMatrix v(n, n);
    v.setFromTriplets(entries.begin(), entries.end());
    v.makeCompressed();
    SparseMatrix vs = v.adjoint();
    vs.makeCompressed();
    v_.push_back(std::move(v));
    v_star_.push_back(std::move(vs));
  }
}

double Coisometry::identity_residual() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  DenseMatrix sum = DenseMatrix::Zero(n, n);
  for (std::size_t l = 0; l < v_.size(); ++l) sum += DenseMatrix(v_[l] * v_star_[l]);
  return (sum - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

Coisometry build_coisometry(const LabeledWalk& walk) { return Coisometry(walk); }

DenseMatrix apply_sigma(const Coisometry& source, const Coisometry& target, const DenseMatrix& t) {
  if (t.rows() != static_cast<Eigen::Index>(target.dimension()) ||
      t.cols() != static_cast<Eigen::Index>(source.dimension())) {
    throw InputError("sigma: matrix shape does not match the walks");
  }
  const auto labels = label_correspondence(source.walk(), target.walk());
  DenseMatrix out = DenseMatrix::Zero(t.rows(), t.cols());
  for (LabelIndex l = 0; l < labels.size(); ++l) {
    out += target.v(labels[l]) * (t * source.v_star(l));
  }
  return out;
}

}  // namespace cuntz
