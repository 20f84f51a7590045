#include "cuntzwalk/fixtures.hpp"

#include <cmath>

namespace cuntz::fixtures {

namespace {

const double kHalf = 1.0 / std::sqrt(2.0);

std::vector<std::string> names(std::size_t n, std::size_t first = 0) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::to_string(first + k));
  return out;
}

std::vector<EdgeSpec> branching_edges() {
  return {
      {"0", "l3", "1", kHalf}, {"0", "l2", "4", kHalf}, {"1", "l1", "2", 1.0},
      {"2", "l1", "3", 1.0},   {"3", "l2", "2", kHalf}, {"3", "l1", "1", kHalf},
  };
}

LabeledWalk triangle(Complex phase2, Complex phase3) {
  const std::vector<EdgeSpec> edges{
      {"1", "l1", "2", kHalf},          {"2", "l1", "3", phase2 * kHalf},
      {"3", "l1", "1", phase3 * kHalf}, {"2", "l2", "1", kHalf},
      {"3", "l2", "2", kHalf},          {"1", "l2", "3", kHalf},
  };
  return LabeledWalk(names(3, 1), {"l1", "l2"}, edges);
}

}  // namespace

LabeledWalk branching_walk() {
  auto edges = branching_edges();
  edges.push_back({"4", "l1", "4", 1.0});
  return LabeledWalk(names(5), {"l1", "l2", "l3"}, edges);
}

LabeledWalk branching_walk_two_cycle() {
  auto edges = branching_edges();
  edges.push_back({"4", "l1", "5", 1.0});
  edges.push_back({"5", "l1", "4", 1.0});
  return LabeledWalk(names(6), {"l1", "l2", "l3"}, edges);
}

LabeledWalk phased_triangle_walk() { return triangle({0.0, 1.0}, {-1.0, 0.0}); }

LabeledWalk uniform_triangle_walk() { return triangle(1.0, 1.0); }

LabeledWalk cyclic_walk(std::size_t m) {
  if (m < 1) throw InputError("cyclic walk needs at least one vertex");
  const auto v = names(m);
  std::vector<EdgeSpec> edges;
  for (std::size_t g = 0; g < m; ++g) {
    edges.push_back({v[g], "+1", v[(g + 1) % m], kHalf});
    edges.push_back({v[g], "-1", v[(g + m - 1) % m], kHalf});
  }
  return LabeledWalk(v, {"+1", "-1"}, edges);
}

std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t m) {
  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) table[a][b] = (a + b) % m;
  }
  return table;
}

LabeledWalk z2_swap_walk() { return cayley_walk(cyclic_group_table(2), {1}); }

LabeledWalk z2_full_walk() { return cayley_walk(cyclic_group_table(2), {0, 1}); }

LabeledWalk z3_cayley_walk() { return cayley_walk(cyclic_group_table(3), {1, 2}); }

std::vector<std::pair<std::string, LabeledWalk>> all_walks() {
  std::vector<std::pair<std::string, LabeledWalk>> out{
      {"branching", branching_walk()},
      {"branching_two_cycle", branching_walk_two_cycle()},
      {"phased_triangle", phased_triangle_walk()},
      {"uniform_triangle", uniform_triangle_walk()},
      {"z2_swap", z2_swap_walk()},
      {"z2_full", z2_full_walk()},
      {"z3_cayley", z3_cayley_walk()},
  };
  for (std::size_t m : {2, 3, 4, 6, 9}) out.emplace_back("cyclic_" + std::to_string(m), cyclic_walk(m));
  return out;
}

SpectralSystem quarter_cantor_system() { return {4, {0, 2}, {0, 1}, {1.0, 1.0}, std::nullopt}; }

SpectralSystem unit_interval_system() { return {2, {0, 1}, {0, 1}, {1.0, 1.0}, std::nullopt}; }

}  // namespace cuntz::fixtures
