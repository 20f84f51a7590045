#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "cuntzwalk/coisometry.hpp"
#include "cuntzwalk/fixtures.hpp"
#include "cuntzwalk/intertwiners.hpp"
#include "cuntzwalk/walk_io.hpp"
#include "support/oracles.hpp"
#include "support/random_walks.hpp"

using namespace cuntz;

namespace {

Complex at(const DenseMatrix& t, const LabeledWalk& src, const LabeledWalk& dst, const char* i,
           const char* j) {
  return t(static_cast<Eigen::Index>(dst.vertex_index(j)), static_cast<Eigen::Index>(src.vertex_index(i)));
}

// Structural invariants every basis element must satisfy.
void check_structure(const IntertwinerSpace& space) {
  const ProductGraph pg(space.source, space.target);
  const Coisometry c(space.source);
  const Coisometry c2(space.target);
  const auto reps = space.report.representatives();
  for (std::size_t k = 0; k < space.basis.size(); ++k) {
    const DenseMatrix& t = space.basis[k];
    CHECK((apply_sigma(c, c2, t) - t).cwiseAbs().maxCoeff() <= 1e-10);
    const auto own = space.report.sets[space.balanced_sets[k]].representative;
    for (const auto& r : reps) {
      const Complex v = t(static_cast<Eigen::Index>(r.second), static_cast<Eigen::Index>(r.first));
      CHECK(std::abs(v - (r == own ? 1.0 : 0.0)) <= 1e-12);
    }
    for (std::size_t s = 0; s < space.report.sets.size(); ++s) {
      const auto& m = space.report.sets[s];
      const auto entry = [&](NodePair p) {
        return t(static_cast<Eigen::Index>(p.second), static_cast<Eigen::Index>(p.first));
      };
      const double modulus = std::abs(entry(m.nodes.front()));
      for (const auto& p : m.nodes) {
        if (!m.balanced) {
          CHECK(std::abs(entry(p)) <= 1e-12);
          continue;
        }
        CHECK(std::abs(std::abs(entry(p)) - modulus) <= 1e-10);
        for (LabelIndex l = 0; l < pg.num_labels(); ++l) {
          const auto q = pg.successor(p, l);
          if (!q) continue;
          const Complex want = entry(p) * pg.alpha_second(p, l) / pg.alpha_first(p, l);
          CHECK(std::abs(entry(*q) - want) <= 1e-10);
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("branching pair has the expected intertwiner pattern") {
  const auto v = fixtures::branching_walk();
  const auto v2 = fixtures::branching_walk_two_cycle();
  const auto space = intertwiner_basis(v, v2);
  REQUIRE(space.dimension() == 2);
  check_structure(space);
  // T = [(a+b)/2 at (0,0); a at (1,1), (2,2), (3,3); b at (4,4) and (4,5)].
  for (const auto& t : space.basis) {
    const Complex a = at(t, v, v2, "1", "1");
    const Complex b = at(t, v, v2, "4", "4");
    DenseMatrix want = DenseMatrix::Zero(6, 5);
    want(0, 0) = (a + b) / 2.0;
    for (int k = 1; k <= 3; ++k) want(k, k) = a;
    want(4, 4) = b;
    want(5, 4) = b;
    CHECK((t - want).cwiseAbs().maxCoeff() <= 1e-9);
  }
  const auto oracle = fixed_point_oracle(v, v2);
  CHECK(oracle.dimension == 2);
  CHECK(span_residual(space.basis, oracle.basis) <= 1e-8);
}

TEST_CASE("branching commutants") {
  const auto v = fixtures::branching_walk();
  const auto s1 = intertwiner_basis(v, v);
  CHECK(s1.dimension() == 2);
  check_structure(s1);
  for (const auto& t : s1.basis) {
    const Complex a = at(t, v, v, "1", "1");
    const Complex b = at(t, v, v, "4", "4");
    DenseMatrix want = DenseMatrix::Zero(5, 5);
    want(0, 0) = (a + b) / 2.0;
    for (int k = 1; k <= 3; ++k) want(k, k) = a;
    want(4, 4) = b;
    CHECK((t - want).cwiseAbs().maxCoeff() <= 1e-9);
  }

  const auto v2 = fixtures::branching_walk_two_cycle();
  const auto s2 = intertwiner_basis(v2, v2);
  CHECK(s2.dimension() == 3);
  check_structure(s2);
  for (const auto& t : s2.basis) {
    const Complex a = at(t, v2, v2, "1", "1");
    const Complex b = at(t, v2, v2, "4", "4");
    const Complex c = at(t, v2, v2, "4", "5");
    DenseMatrix want = DenseMatrix::Zero(6, 6);
    want(0, 0) = (a + b) / 2.0;
    for (int k = 1; k <= 3; ++k) want(k, k) = a;
    want(4, 4) = b;
    want(5, 5) = b;
    want(4, 5) = c;
    want(5, 4) = c;
    CHECK((t - want).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("phases decide the triangle commutant") {
  const auto phased = intertwiner_basis(fixtures::phased_triangle_walk(), fixtures::phased_triangle_walk());
  REQUIRE(phased.dimension() == 1);
  CHECK((phased.basis.front() - DenseMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
  const auto flat = intertwiner_basis(fixtures::uniform_triangle_walk(), fixtures::uniform_triangle_walk());
  CHECK(flat.dimension() == 3);
  check_structure(flat);
  CHECK(fixed_point_oracle(fixtures::uniform_triangle_walk(), fixtures::uniform_triangle_walk()).dimension == 3);
}

TEST_CASE("cyclic walks intertwine in gcd dimensions") {
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 3}, {4, 6}, {6, 9}}) {
    CAPTURE(m);
    CAPTURE(n);
    const auto a = fixtures::cyclic_walk(m);
    const auto b = fixtures::cyclic_walk(n);
    const auto space = intertwiner_basis(a, b);
    CHECK(space.dimension() == std::gcd(m, n));
    check_structure(space);
    const auto cmp = compare_with_oracle(space, fixed_point_oracle(a, b));
    CHECK(cmp.agree());
    CHECK(testing::fixed_point_dimension(a, b) == std::gcd(m, n));
  }
}

TEST_CASE("plain iteration agrees with the sparse solve") {
  IntertwinerOptions iterate;
  iterate.force_iteration = true;
  for (const auto& [name, w] : fixtures::all_walks()) {
    CAPTURE(name);
    const auto lu = intertwiner_basis(w, w);
    const auto it = intertwiner_basis(w, w, iterate);
    REQUIRE(lu.dimension() == it.dimension());
    for (std::size_t k = 0; k < lu.dimension(); ++k) {
      CHECK((lu.basis[k] - it.basis[k]).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  IntertwinerOptions starved = iterate;
  starved.max_iterations = 1;
  CHECK_THROWS_AS(intertwiner_basis(fixtures::branching_walk(), fixtures::branching_walk(), starved),
                  ConvergenceError);
}

TEST_CASE("oracle handles pairs of phased permutation walks") {
  // Single-label unitary walks make Id - sigma highly degenerate.
  const Complex i{0.0, 1.0};
  const Complex e = std::polar(1.0, -std::numbers::pi / 4.0);
  const LabeledWalk a({"0", "1", "2", "3"}, {"x"},
                      std::vector<EdgeSpec>{{"0", "x", "2", e}, {"1", "x", "3", -1.0}, {"2", "x", "1", 1.0},
                                            {"3", "x", "0", -i}});
  const LabeledWalk b({"0", "1", "2", "3"}, {"x"},
                      std::vector<EdgeSpec>{{"0", "x", "1", -1.0}, {"1", "x", "3", -i}, {"2", "x", "0", 1.0},
                                            {"3", "x", "2", e}});
  const auto space = intertwiner_basis(a, b);
  const auto oracle = fixed_point_oracle(a, b);
  CHECK(space.dimension() == 4);
  CHECK(oracle.dimension == 4);
  CHECK(compare_with_oracle(space, oracle).agree());
  CHECK(testing::fixed_point_dimension(a, b) == 4);
}

TEST_CASE("oracle limits and span residuals") {
  OracleOptions tiny;
  tiny.max_unknowns = 10;
  CHECK_THROWS_AS(fixed_point_oracle(fixtures::branching_walk(), fixtures::branching_walk(), tiny), InputError);

  const DenseMatrix a = DenseMatrix::Identity(2, 2);
  DenseMatrix b = DenseMatrix::Zero(2, 2);
  b(0, 1) = 1.0;
  CHECK(span_residual({a}, {2.0 * a}) <= 1e-15);
  CHECK(span_residual({a}, {b}) > 0.9);
  CHECK(span_residual({}, {}) == 0.0);
  CHECK(span_residual({a}, {}) == 1.0);
}

TEST_CASE("commutant products stay in the commutant") {
  const auto w = fixtures::branching_walk_two_cycle();
  const auto space = intertwiner_basis(w, w);
  const Coisometry c(w);
  const auto n = static_cast<Eigen::Index>(w.num_vertices());
  for (const auto& t1 : space.basis) {
    CHECK((commutant_product(w, DenseMatrix::Identity(n, n), t1) - t1).cwiseAbs().maxCoeff() <= 1e-10);
    for (const auto& t2 : space.basis) {
      const DenseMatrix p = commutant_product(w, t1, t2);
      CHECK((apply_sigma(c, c, p) - p).cwiseAbs().maxCoeff() <= 1e-10);
      // span_residual is two-sided, so compare the basis with and without p.
      auto with_p = space.basis;
      with_p.push_back(p);
      CHECK(span_residual(with_p, space.basis) <= 1e-8);
    }
  }
  // On the two-cycle block the product is the matrix product (b, c) * (b', c').
  const auto s = space.report.set_of({4, 5});
  REQUIRE(s.has_value());
  const auto k = static_cast<std::size_t>(
      std::find(space.balanced_sets.begin(), space.balanced_sets.end(), *s) - space.balanced_sets.begin());
  REQUIRE(k < space.dimension());
  const DenseMatrix sq = commutant_product(w, space.basis[k], space.basis[k]);
  CHECK(std::abs(sq(4, 4) - 1.0) <= 1e-10);
  CHECK(std::abs(sq(4, 5)) <= 1e-10);
  CHECK_THROWS_AS(commutant_product(w, DenseMatrix::Zero(2, 2), space.basis[k]), InputError);
}

TEST_CASE("entries are recovered from first arrivals") {
  for (const auto& [name, w] : fixtures::all_walks()) {
    CAPTURE(name);
    // The 9-cycle decays slowly; see the first-passage tests.
    const std::size_t horizon = name == "cyclic_9" ? 400 : 60;
    const auto space = intertwiner_basis(w, w);
    const ProductGraph pg(w, w);
    for (const auto& t : space.basis) {
      const auto dev = first_arrival_deviation(pg, space.report, t, horizon);
      REQUIRE(dev.size() == horizon);
      CHECK(dev.back() < 1e-3);
    }
  }
}

TEST_CASE("property: structured basis matches both oracles on random pairs") {
  testing::WalkGenerator gen(2024);
  std::size_t nontrivial = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto a = gen.walk(gen.shape(5, 3));
    const auto b = gen.partner(a, 5);
    const std::string json_a = save_walk(a);
    CAPTURE(json_a);
    const std::string json_b = save_walk(b);
    CAPTURE(json_b);
    const auto space = intertwiner_basis(a, b);
    const auto oracle = fixed_point_oracle(a, b);
    const auto cmp = compare_with_oracle(space, oracle);
    CHECK(cmp.agree());
    CHECK(space.dimension() == space.report.balanced_count());
    CHECK(testing::fixed_point_dimension(a, b) == space.dimension());
    check_structure(space);
    if (space.dimension() > 0) ++nontrivial;
  }
  // The generator is biased towards balanced sets; make sure it still is.
  CHECK(nontrivial >= 40);
}
