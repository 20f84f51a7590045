#include "cuntzwalk/intertwiners.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/SparseLU>

namespace cuntz {

namespace {

Eigen::Index row_of(NodePair p) { return static_cast<Eigen::Index>(p.second); }
Eigen::Index col_of(NodePair p) { return static_cast<Eigen::Index>(p.first); }

// Coefficient of T_{j,j'} in (sigma T)_{i,i'} summed over labels: entry
// (from, to) of the transfer matrix on pairs.
std::vector<std::vector<std::pair<std::size_t, Complex>>> transfer(const ProductGraph& pg) {
  std::vector<std::vector<std::pair<std::size_t, Complex>>> out(pg.num_nodes());
  for (std::size_t id = 0; id < pg.num_nodes(); ++id) {
    const NodePair p = pg.node(id);
    for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
      auto q = pg.successor(p, l);
      if (!q) continue;
      const Complex a = pg.alpha_first(p, l) * std::conj(pg.alpha_second(p, l));
      const std::size_t to = pg.node_id(*q);
      auto it = std::find_if(out[id].begin(), out[id].end(),
                             [to](const auto& e) { return e.first == to; });
      if (it == out[id].end()) {
        out[id].emplace_back(to, a);
      } else {
        it->second += a;
      }
    }
  }
  return out;
}

DenseVector vectorize(const DenseMatrix& m) {
  return Eigen::Map<const DenseVector>(m.data(), m.size());
}

}  // namespace

IntertwinerSpace intertwiner_basis(const LabeledWalk& source, const LabeledWalk& target,
                                   const IntertwinerOptions& options) {
  require_coisometric(source);
  require_coisometric(target);
  const ProductGraph pg(source, target);
  IntertwinerSpace space{source, target, analyze_product(pg, options.balance_tol), {}, {}};

  const std::size_t nodes = pg.num_nodes();
  std::vector<bool> fixed(nodes, false);
  for (const auto& m : space.report.sets) {
    for (const auto& p : m.nodes) fixed[pg.node_id(p)] = true;
  }
  std::vector<std::size_t> transient, position(nodes, npos);
  for (std::size_t id = 0; id < nodes; ++id) {
    if (!fixed[id]) {
      position[id] = transient.size();
      transient.push_back(id);
    }
  }
  const auto a = transfer(pg);
  const auto t = static_cast<Eigen::Index>(transient.size());

  // I - A restricted to transient pairs; invertible because mass started on a
  // transient pair leaks into the minimal sets.
  SparseMatrix system(t, t);
  {
    std::vector<Eigen::Triplet<Complex>> entries;
    for (Eigen::Index r = 0; r < t; ++r) {
      entries.emplace_back(r, r, 1.0);
      for (const auto& [to, coeff] : a[transient[static_cast<std::size_t>(r)]]) {
        if (position[to] != npos) {
          entries.emplace_back(r, static_cast<Eigen::Index>(position[to]), -coeff);
        }
      }
    }
    system.setFromTriplets(entries.begin(), entries.end());
    system.makeCompressed();
  }
  Eigen::SparseLU<SparseMatrix> lu;
  bool use_lu = !options.force_iteration && t > 0;
  if (use_lu) {
    lu.analyzePattern(system);
    lu.factorize(system);
    use_lu = lu.info() == Eigen::Success;
  }

  for (std::size_t k = 0; k < space.report.sets.size(); ++k) {
    const MinimalSet& m = space.report.sets[k];
    if (!m.balanced) continue;

    std::vector<Complex> value(nodes, Complex{0.0, 0.0});
    for (std::size_t p = 0; p < m.nodes.size(); ++p) value[pg.node_id(m.nodes[p])] = m.potential[p];

    DenseVector rhs = DenseVector::Zero(t);
    for (Eigen::Index r = 0; r < t; ++r) {
      for (const auto& [to, coeff] : a[transient[static_cast<std::size_t>(r)]]) {
        if (position[to] == npos) rhs(r) += coeff * value[to];
      }
    }

    DenseVector x = DenseVector::Zero(t);
    if (t > 0 && use_lu) {
      x = lu.solve(rhs);
    } else if (t > 0) {
      std::size_t iter = 0;
      for (;; ++iter) {
        if (iter == options.max_iterations) {
          throw ConvergenceError("transient solve did not settle");
        }
        DenseVector next = rhs;
        for (Eigen::Index r = 0; r < t; ++r) {
          for (const auto& [to, coeff] : a[transient[static_cast<std::size_t>(r)]]) {
            if (position[to] != npos) next(r) += coeff * x(static_cast<Eigen::Index>(position[to]));
          }
        }
        const double step = (next - x).cwiseAbs().maxCoeff();
        x = std::move(next);
        if (step <= options.iteration_tol) break;
      }
    }
    for (Eigen::Index r = 0; r < t; ++r) value[transient[static_cast<std::size_t>(r)]] = x(r);

    DenseMatrix basis = DenseMatrix::Zero(static_cast<Eigen::Index>(target.num_vertices()),
                                          static_cast<Eigen::Index>(source.num_vertices()));
    for (std::size_t id = 0; id < nodes; ++id) {
      const NodePair p = pg.node(id);
      basis(row_of(p), col_of(p)) = value[id];
    }
    space.balanced_sets.push_back(k);
    space.basis.push_back(std::move(basis));
  }
  return space;
}

FixedPointSpace fixed_point_oracle(const LabeledWalk& source, const LabeledWalk& target,
                                   const OracleOptions& options) {
  const Coisometry c(source);
  const Coisometry c2(target);
  const auto rows = static_cast<Eigen::Index>(target.num_vertices());
  const auto cols = static_cast<Eigen::Index>(source.num_vertices());
  const Eigen::Index unknowns = rows * cols;
  if (static_cast<std::size_t>(unknowns) > options.max_unknowns) {
    throw InputError("fixed-point oracle limited to " + std::to_string(options.max_unknowns) +
                     " unknowns, got " + std::to_string(unknowns));
  }

  // Column k of (Id - sigma) is vec(E_k - sigma(E_k)) in column-major order.
  DenseMatrix op(unknowns, unknowns);
  for (Eigen::Index k = 0; k < unknowns; ++k) {
    DenseMatrix e = DenseMatrix::Zero(rows, cols);
    e(k % rows, k / rows) = 1.0;
    op.col(k) = vectorize(e - apply_sigma(c, c2, e));
  }

  // JacobiSVD rather than BDCSVD: the divide-and-conquer path returns NaN
  // vectors on some highly degenerate operators, e.g. pairs of unitary walks.
  Eigen::JacobiSVD<DenseMatrix> svd(op, Eigen::ComputeFullV);
  if (!svd.singularValues().allFinite() || !svd.matrixV().allFinite()) {
    throw ConvergenceError("singular value decomposition of Id - sigma did not converge");
  }
  FixedPointSpace out;
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) out.singular_values.push_back(sv(k));
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > options.threshold) continue;
    const DenseVector v = svd.matrixV().col(k);
    out.basis.push_back(Eigen::Map<const DenseMatrix>(v.data(), rows, cols));
  }
  out.dimension = out.basis.size();
  return out;
}

double span_residual(const std::vector<DenseMatrix>& a, const std::vector<DenseMatrix>& b) {
  auto one_way = [](const std::vector<DenseMatrix>& from, const std::vector<DenseMatrix>& onto) {
    if (from.empty()) return 0.0;
    if (onto.empty()) return 1.0;
    const Eigen::Index len = onto.front().size();
    DenseMatrix cols(len, static_cast<Eigen::Index>(onto.size()));
    for (std::size_t k = 0; k < onto.size(); ++k) {
      if (onto[k].size() != len) throw InputError("span comparison of differently shaped matrices");
      cols.col(static_cast<Eigen::Index>(k)) = vectorize(onto[k]);
    }
    Eigen::ColPivHouseholderQR<DenseMatrix> qr(cols);
    qr.setThreshold(1e-10);
    const DenseMatrix q = DenseMatrix(qr.householderQ()).leftCols(qr.rank());
    double worst = 0.0;
    for (const auto& m : from) {
      if (m.size() != len) throw InputError("span comparison of differently shaped matrices");
      const DenseVector v = vectorize(m);
      const double norm = v.norm();
      if (norm == 0.0) continue;
      worst = std::max(worst, (v - q * (q.adjoint() * v)).norm() / norm);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

DenseMatrix commutant_product(const LabeledWalk& walk, const DenseMatrix& t1, const DenseMatrix& t2,
                              double tol, std::size_t max_iterations) {
  const Coisometry c(walk);
  const auto n = static_cast<Eigen::Index>(walk.num_vertices());
  if (t1.rows() != n || t1.cols() != n || t2.rows() != n || t2.cols() != n) {
    throw InputError("commutant elements must be square of the walk's size");
  }
  DenseMatrix m = t1 * t2;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    DenseMatrix next = apply_sigma(c, c, m);
    const double step = (next - m).cwiseAbs().maxCoeff();
    m = std::move(next);
    if (step <= tol) return m;
  }
  throw ConvergenceError("sigma iterates of the product did not settle; are both factors fixed points?");
}

std::vector<double> first_arrival_deviation(const ProductGraph& pg, const MinimalSetReport& report,
                                            const DenseMatrix& t, std::size_t n_max) {
  if (t.rows() != static_cast<Eigen::Index>(pg.second().num_vertices()) ||
      t.cols() != static_cast<Eigen::Index>(pg.first().num_vertices())) {
    throw InputError("matrix shape does not match the walks");
  }
  const std::size_t nodes = pg.num_nodes();
  std::vector<bool> designated(nodes, false);
  for (const auto& m : report.sets) designated[pg.node_id(m.representative)] = true;
  const auto a = transfer(pg);

  auto entry = [&](std::size_t id) {
    const NodePair p = pg.node(id);
    return t(row_of(p), col_of(p));
  };

  // f[x] = sum over first arrivals from x of length <= n, built backwards.
  std::vector<Complex> f(nodes, Complex{0.0, 0.0});
  std::vector<double> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<Complex> next(nodes, Complex{0.0, 0.0});
    for (std::size_t x = 0; x < nodes; ++x) {
      for (const auto& [y, coeff] : a[x]) next[x] += coeff * (designated[y] ? entry(y) : f[y]);
    }
    f = std::move(next);
    double worst = 0.0;
    for (std::size_t x = 0; x < nodes; ++x) worst = std::max(worst, std::abs(entry(x) - f[x]));
    out.push_back(worst);
  }
  return out;
}

bool OracleComparison::agree(double tol) const {
  return structured_dimension == oracle_dimension && structured_dimension == balanced_count &&
         span_residual <= tol && fixed_point_residual <= tol;
}

OracleComparison compare_with_oracle(const IntertwinerSpace& space, const FixedPointSpace& oracle) {
  OracleComparison out;
  out.structured_dimension = space.dimension();
  out.oracle_dimension = oracle.dimension;
  out.balanced_count = space.report.balanced_count();
  out.span_residual = span_residual(space.basis, oracle.basis);
  const Coisometry c(space.source);
  const Coisometry c2(space.target);
  for (const auto& t : space.basis) {
    out.fixed_point_residual =
        std::max(out.fixed_point_residual, (apply_sigma(c, c2, t) - t).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace cuntz
