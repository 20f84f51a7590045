#include "cuntzwalk/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>

namespace cuntz {

namespace {

// Truncations beyond this many basis vectors are refused.
constexpr std::size_t kMaxDimension = std::size_t{1} << 24;

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kMaxDimension / a) {
    throw InputError("dilation truncation too large (more than 2^24 basis vectors)");
  }
  return a * b;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) out = checked_mul(out, base);
  return out;
}

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

SparseMatrix sparse_identity(std::size_t rows, std::size_t cols) {
  SparseMatrix id(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    entries.emplace_back(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k), 1.0);
  }
  id.setFromTriplets(entries.begin(), entries.end());
  return id;
}

std::vector<std::vector<LabelIndex>> labels_out_of(const LabeledWalk& walk) {
  std::vector<std::vector<LabelIndex>> out(walk.num_vertices());
  for (VertexIndex i = 0; i < walk.num_vertices(); ++i) {
    for (LabelIndex l = 0; l < walk.num_labels(); ++l) {
      if (walk.target(i, l)) out[i].push_back(l);
    }
  }
  return out;
}

std::size_t position(const std::vector<LabelIndex>& labels, LabelIndex l) {
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
}

}  // namespace

DigitWord prepend_digit(std::size_t k, const DigitWord& w) {
  if (k == 0 && w.empty()) return {};
  DigitWord out;
  out.reserve(w.size() + 1);
  out.push_back(k);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::optional<DigitWord> strip_digit(const DigitWord& w, std::size_t k) {
  if (w.empty()) {
    if (k == 0) return DigitWord{};
    return std::nullopt;
  }
  if (w.front() != k) return std::nullopt;
  return DigitWord(w.begin() + 1, w.end());
}

DilationSpace::DilationSpace(std::size_t num_vertices, std::size_t num_digits)
    : vertices_(num_vertices), digits_(num_digits) {
  if (vertices_ == 0 || digits_ == 0) throw InputError("dilation space needs vertices and digits");
}

std::size_t DilationSpace::dimension(std::size_t level) const {
  return checked_mul(vertices_, power(digits_, level));
}

std::size_t DilationSpace::word_rank(const DigitWord& w) const {
  if (w.empty()) return 0;
  for (auto d : w) {
    if (d >= digits_) throw InputError("digit out of range");
  }
  if (w.back() == 0) throw InputError("dilation words may not end in 0");
  std::size_t prefix = 0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) prefix = checked_mul(prefix, digits_) + w[k];
  return power(digits_, w.size() - 1) + prefix * (digits_ - 1) + (w.back() - 1);
}

DigitWord DilationSpace::word_at(std::size_t rank) const {
  if (rank == 0) return {};
  if (digits_ < 2) throw InputError("word rank out of range");
  std::size_t length = 1, offset = 1;
  while (rank >= offset * digits_) {
    offset *= digits_;
    ++length;
  }
  std::size_t r = rank - offset;
  DigitWord w(length);
  w[length - 1] = r % (digits_ - 1) + 1;
  r /= digits_ - 1;
  for (std::size_t k = length - 1; k-- > 0;) {
    w[k] = r % digits_;
    r /= digits_;
  }
  return w;
}

std::size_t DilationSpace::index(VertexIndex i, const DigitWord& w) const {
  if (i >= vertices_) throw InputError("vertex out of range");
  return checked_mul(word_rank(w), vertices_) + i;
}

DigitWord DilationSpace::word_of(std::size_t index) const { return word_at(index / vertices_); }

DenseMatrix complete_unitary(const DenseVector& column) {
  const Eigen::Index n = column.size();
  if (n == 0) throw InputError("cannot complete an empty column");
  if (std::abs(column.norm() - 1.0) > 1e-9) throw InputError("completion column is not a unit vector");

  const double a0 = std::abs(column(0));
  const Complex theta = a0 > 0.0 ? column(0) / a0 : Complex{1.0, 0.0};
  DenseVector v = -std::conj(theta) * column;
  v(0) += 1.0;
  const double vv = v.squaredNorm();

  DenseMatrix u = DenseMatrix::Identity(n, n);
  if (vv > 1e-30) u -= (2.0 / vv) * (v * v.adjoint());
  u *= theta;
  u.col(0) = column;
  return u;
}

std::vector<Arrival> DilationAssembler::arrivals(const LabeledWalk& walk) {
  std::vector<Arrival> out;
  for (VertexIndex j = 0; j < walk.num_vertices(); ++j) {
    for (LabelIndex l = 0; l < walk.num_labels(); ++l) {
      if (walk.sources(j, l).empty()) out.push_back({j, l});
    }
  }
  return out;
}

std::vector<Spare> DilationAssembler::spares(const LabeledWalk& walk) {
  const auto out_labels = labels_out_of(walk);
  std::vector<Spare> out;
  for (VertexIndex i = 0; i < walk.num_vertices(); ++i) {
    for (std::size_t k = out_labels[i].size(); k < walk.num_labels(); ++k) out.push_back({i, k});
  }
  return out;
}

DilationAssembler DilationAssembler::lexicographic(const LabeledWalk& walk) {
  const auto from = arrivals(walk);
  const auto to = spares(walk);
  if (from.size() != to.size()) {
    // Cannot happen for a finite in-injective walk: both sides count N|V| - #edges.
    throw InvalidWalk("unmatched arrival and spare counts");
  }
  std::vector<std::pair<Arrival, Spare>> pairs;
  for (std::size_t k = 0; k < from.size(); ++k) pairs.emplace_back(from[k], to[k]);
  return from_pairs(walk, std::move(pairs));
}

DilationAssembler DilationAssembler::from_pairs(const LabeledWalk& walk,
                                                std::vector<std::pair<Arrival, Spare>> pairs) {
  const auto from = arrivals(walk);
  const auto to = spares(walk);
  const std::set<Arrival> domain(from.begin(), from.end());
  const std::set<Spare> codomain(to.begin(), to.end());

  std::set<Arrival> seen;
  std::set<Spare> hit;
  for (const auto& [a, s] : pairs) {
    if (!domain.count(a)) throw InputError("pairing source is not an unmatched arrival");
    if (!codomain.count(s)) throw InputError("pairing target is not a spare digit");
    if (!seen.insert(a).second) throw InputError("pairing lists an arrival twice");
    hit.insert(s);
  }
  if (seen.size() != domain.size()) throw InputError("pairing does not cover every arrival");

  DilationAssembler out;
  std::sort(pairs.begin(), pairs.end());
  out.pairs_ = std::move(pairs);
  out.bijective_ = hit.size() == codomain.size();
  return out;
}

std::optional<Spare> DilationAssembler::image(VertexIndex j, LabelIndex l) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Arrival{j, l},
                             [](const auto& p, const Arrival& a) { return p.first < a; });
  if (it == pairs_.end() || it->first != Arrival{j, l}) return std::nullopt;
  return it->second;
}

std::vector<Arrival> DilationAssembler::preimages(VertexIndex i, std::size_t k) const {
  std::vector<Arrival> out;
  for (const auto& [a, s] : pairs_) {
    if (s == Spare{i, k}) out.push_back(a);
  }
  return out;
}

DenseVector DilationOperators::apply_word(std::span<const LabelIndex> word,
                                          const DenseVector& v) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  if (v.size() != dim) throw InputError("vector does not live on the truncated space");
  DenseVector out = v;
  for (std::size_t k = word.size(); k-- > 0;) {
    // Exact as long as the input level plus |word| stays within the depth.
    out = (s.at(word[k]) * out).head(dim);
  }
  return out;
}

DenseVector DilationOperators::basis_vector(VertexIndex i, const DigitWord& w) const {
  DenseVector e = DenseVector::Zero(static_cast<Eigen::Index>(dimension()));
  e(static_cast<Eigen::Index>(space.index(i, w))) = 1.0;
  return e;
}

DilationOperators build_dilation(const LabeledWalk& walk, std::size_t depth,
                                 const DilationOptions& options) {
  require_coisometric(walk);
  if (depth < 1) throw InputError("dilation depth must be at least 1");

  const std::size_t n = walk.num_vertices();
  const std::size_t labels = walk.num_labels();
  DilationSpace space(n, labels);
  const std::size_t dim_lo = space.dimension(depth);
  const std::size_t dim_hi = space.dimension(depth + 1);
  auto out_labels = labels_out_of(walk);

  std::vector<DenseMatrix> completions;
  if (options.completions) {
    completions = *options.completions;
    if (completions.size() != n) throw InputError("need one completion per vertex");
    for (VertexIndex i = 0; i < n; ++i) {
      const auto ni = static_cast<Eigen::Index>(out_labels[i].size());
      if (completions[i].rows() != ni || completions[i].cols() != ni) {
        throw InputError("completion for vertex '" + walk.vertex_id(i) + "' has the wrong shape");
      }
    }
  } else {
    for (VertexIndex i = 0; i < n; ++i) {
      DenseVector column(static_cast<Eigen::Index>(out_labels[i].size()));
      for (std::size_t p = 0; p < out_labels[i].size(); ++p) {
        column(static_cast<Eigen::Index>(p)) = walk.alpha(i, out_labels[i][p]);
      }
      completions.push_back(complete_unitary(column));
    }
  }

  DilationAssembler assembler =
      options.assembler ? *options.assembler : DilationAssembler::lexicographic(walk);

  using Triplets = std::vector<Eigen::Triplet<Complex>>;
  std::vector<Triplets> s_entries(labels), s_star_entries(labels);

  // S_label on columns (j, w), |w| <= depth.
  for (std::size_t col = 0; col < dim_lo; ++col) {
    const VertexIndex j = space.vertex_of(col);
    const DigitWord w = space.word_of(col);
    for (LabelIndex l = 0; l < labels; ++l) {
      const auto from = walk.sources(j, l);
      if (!from.empty()) {
        const VertexIndex i = from.front();
        const std::size_t p = position(out_labels[i], l);
        for (std::size_t k = 0; k < out_labels[i].size(); ++k) {
          const Complex c = std::conj(completions[i](static_cast<Eigen::Index>(p),
                                                     static_cast<Eigen::Index>(k)));
          if (c == Complex{0.0, 0.0}) continue;
          s_entries[l].emplace_back(static_cast<Eigen::Index>(space.index(i, prepend_digit(k, w))),
                                    static_cast<Eigen::Index>(col), c);
        }
      } else {
        const auto target = assembler.image(j, l);
        if (!target) throw InputError("pairing has no image for an unmatched arrival");
        s_entries[l].emplace_back(
            static_cast<Eigen::Index>(space.index(target->vertex, prepend_digit(target->digit, w))),
            static_cast<Eigen::Index>(col), 1.0);
      }
    }
  }

  // S_label^* on columns (i, u), |u| <= depth + 1, with u = k w.
  for (std::size_t col = 0; col < dim_hi; ++col) {
    const VertexIndex i = space.vertex_of(col);
    const DigitWord u = space.word_of(col);
    const std::size_t k = u.empty() ? 0 : u.front();
    const DigitWord w = u.empty() ? DigitWord{} : DigitWord(u.begin() + 1, u.end());
    if (k < out_labels[i].size()) {
      for (std::size_t p = 0; p < out_labels[i].size(); ++p) {
        const LabelIndex l = out_labels[i][p];
        const Complex c =
            completions[i](static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k));
        if (c == Complex{0.0, 0.0}) continue;
        s_star_entries[l].emplace_back(
            static_cast<Eigen::Index>(space.index(*walk.target(i, l), w)),
            static_cast<Eigen::Index>(col), c);
      }
    } else {
      for (const auto& a : assembler.preimages(i, k)) {
        s_star_entries[a.label].emplace_back(static_cast<Eigen::Index>(space.index(a.vertex, w)),
                                             static_cast<Eigen::Index>(col), 1.0);
      }
    }
  }

  std::vector<SparseMatrix> s, s_star;
  for (LabelIndex l = 0; l < labels; ++l) {
    SparseMatrix up(static_cast<Eigen::Index>(dim_hi), static_cast<Eigen::Index>(dim_lo));
    up.setFromTriplets(s_entries[l].begin(), s_entries[l].end());
    up.makeCompressed();
    SparseMatrix down(static_cast<Eigen::Index>(dim_lo), static_cast<Eigen::Index>(dim_hi));
    down.setFromTriplets(s_star_entries[l].begin(), s_star_entries[l].end());
    down.makeCompressed();
    s.push_back(std::move(up));
    s_star.push_back(std::move(down));
  }

  return DilationOperators{walk,
                           space,
                           depth,
                           std::move(out_labels),
                           std::move(completions),
                           std::move(assembler),
                           std::move(s),
                           std::move(s_star)};
}

double CuntzReport::worst() const {
  return std::max({isometry_residual, range_residual, compression_residual, adjoint_residual});
}

CuntzReport verify_cuntz(const DilationOperators& ops, double tol) {
  CuntzReport report;
  report.tolerance = tol;
  const std::size_t dim_lo = ops.dimension();
  const std::size_t dim_hi = ops.space.dimension(ops.depth + 1);
  const std::size_t labels = ops.num_labels();
  const SparseMatrix id_lo = sparse_identity(dim_lo, dim_lo);

  for (LabelIndex mu = 0; mu < labels; ++mu) {
    for (LabelIndex l = 0; l < labels; ++l) {
      SparseMatrix prod = ops.s_star[mu] * ops.s[l];
      if (mu == l) prod -= id_lo;
      report.isometry_residual = std::max(report.isometry_residual, max_abs(prod));
    }
  }

  SparseMatrix sum(static_cast<Eigen::Index>(dim_hi), static_cast<Eigen::Index>(dim_lo));
  for (LabelIndex l = 0; l < labels; ++l) {
    SparseMatrix down = ops.s_star[l].leftCols(static_cast<Eigen::Index>(dim_lo));
    sum += SparseMatrix(ops.s[l] * down);
  }
  sum -= sparse_identity(dim_hi, dim_lo);
  report.range_residual = max_abs(sum);

  const Coisometry v(ops.walk);
  const auto n = static_cast<Eigen::Index>(ops.walk.num_vertices());
  for (LabelIndex l = 0; l < labels; ++l) {
    const DenseMatrix block = DenseMatrix(ops.s_star[l]).topLeftCorner(n, n);
    report.compression_residual = std::max(
        report.compression_residual, (block - DenseMatrix(v.v_star(l))).cwiseAbs().maxCoeff());
    SparseMatrix adj = ops.s[l].adjoint();
    adj -= ops.s_star[l];
    report.adjoint_residual = std::max(report.adjoint_residual, max_abs(adj));
  }
  return report;
}

std::size_t cyclicity_rank(const DilationOperators& ops, std::optional<std::size_t> level) {
  const std::size_t top = level.value_or(ops.depth);
  if (top > ops.depth) throw InputError("cyclicity level exceeds the dilation depth");
  const std::size_t n = ops.walk.num_vertices();
  const auto dim = static_cast<Eigen::Index>(ops.dimension());

  std::vector<DenseVector> vectors;
  std::vector<DenseVector> frontier;
  for (VertexIndex i = 0; i < n; ++i) frontier.push_back(ops.basis_vector(i, {}));
  for (std::size_t len = 0;; ++len) {
    vectors.insert(vectors.end(), frontier.begin(), frontier.end());
    if (len == top) break;
    std::vector<DenseVector> next;
    for (const auto& v : frontier) {
      for (LabelIndex l = 0; l < ops.num_labels(); ++l) {
        next.push_back((ops.s[l] * v).head(dim));
      }
    }
    frontier = std::move(next);
  }

  const auto target_dim = static_cast<Eigen::Index>(ops.space.dimension(top));
  DenseMatrix m(target_dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) = vectors[c].head(target_dim);
  }
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<std::size_t>(qr.rank());
}

DenseMatrix km_projection(const DilationOperators& ops, std::size_t m) {
  if (m > ops.depth) throw InputError("K_m projection needs m <= depth");
  const std::size_t n = ops.walk.num_vertices();
  const auto dim = static_cast<Eigen::Index>(ops.dimension());

  // Columns S_w (i, empty) for all words of length m.
  std::vector<DenseMatrix> blocks{DenseMatrix::Identity(dim, static_cast<Eigen::Index>(n))};
  for (std::size_t len = 0; len < m; ++len) {
    std::vector<DenseMatrix> next;
    for (const auto& b : blocks) {
      for (LabelIndex l = 0; l < ops.num_labels(); ++l) {
        next.push_back(DenseMatrix(ops.s[l] * b).topRows(dim));
      }
    }
    blocks = std::move(next);
  }
  DenseMatrix p = DenseMatrix::Zero(dim, dim);
  for (const auto& b : blocks) p += b * b.adjoint();
  return p;
}

std::vector<Word> first_return_words(const LabeledWalk& walk, VertexIndex i,
                                     std::span<const VertexIndex> designated, std::size_t n_max) {
  std::vector<bool> absorbing(walk.num_vertices(), false);
  for (auto d : designated) absorbing.at(d) = true;

  std::vector<Word> out;
  std::vector<std::pair<VertexIndex, Word>> stack{{i, {}}};
  while (!stack.empty()) {
    auto [at, word] = std::move(stack.back());
    stack.pop_back();
    if (word.size() == n_max) continue;
    for (LabelIndex l = walk.num_labels(); l-- > 0;) {
      auto next = walk.target(at, l);
      if (!next) continue;
      Word longer = word;
      longer.push_back(l);
      if (absorbing[*next]) {
        out.push_back(std::move(longer));
      } else {
        stack.emplace_back(*next, std::move(longer));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<double> first_return_residuals(const DilationOperators& ops, VertexIndex i,
                                           std::span<const VertexIndex> designated,
                                           std::size_t n_max) {
  if (n_max > ops.depth) throw InputError("first-return horizon exceeds the dilation depth");
  const auto words = first_return_words(ops.walk, i, designated, n_max);

  DenseVector residual = ops.basis_vector(i, {});
  std::vector<double> out;
  std::size_t next = 0;
  for (std::size_t len = 1; len <= n_max; ++len) {
    for (; next < words.size() && words[next].size() == len; ++next) {
      const auto step = walk_step(ops.walk, i, words[next]);
      residual -= step->second * ops.apply_word(words[next], ops.basis_vector(step->first, {}));
    }
    out.push_back(residual.squaredNorm());
  }
  return out;
}

std::vector<double> first_return_deficit(const LabeledWalk& walk, VertexIndex i,
                                         std::span<const VertexIndex> designated,
                                         std::size_t n_max) {
  const std::size_t n = walk.num_vertices();
  std::vector<bool> absorbing(n, false);
  for (auto d : designated) absorbing.at(d) = true;

  std::vector<double> mass(n, 0.0);
  mass.at(i) = 1.0;
  double arrived = 0.0;
  std::vector<double> out;
  for (std::size_t step = 1; step <= n_max; ++step) {
    std::vector<double> next(n, 0.0);
    for (VertexIndex v = 0; v < n; ++v) {
      if (mass[v] == 0.0) continue;
      for (LabelIndex l = 0; l < walk.num_labels(); ++l) {
        auto to = walk.target(v, l);
        if (!to) continue;
        const double flow = mass[v] * std::norm(walk.alpha(v, l));
        if (absorbing[*to]) {
          arrived += flow;
        } else {
          next[*to] += flow;
        }
      }
    }
    mass = std::move(next);
    out.push_back(1.0 - arrived);
  }
  return out;
}

}  // namespace cuntz
