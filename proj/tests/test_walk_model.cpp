#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "cuntzwalk/fixtures.hpp"
#include "cuntzwalk/walk_io.hpp"
#include "cuntzwalk/walk_model.hpp"
#include "support/random_walks.hpp"

using namespace cuntz;

namespace {

const double kHalf = 1.0 / std::sqrt(2.0);

LabeledWalk two_vertex(std::vector<EdgeSpec> edges) {
  return LabeledWalk({"a", "b"}, {"x", "y"}, edges);
}

}  // namespace

TEST_CASE("construction rejects structural errors") {
  CHECK_THROWS_AS(LabeledWalk({"a", "a"}, {"x"}, std::vector<EdgeSpec>{}), InputError);
  CHECK_THROWS_AS(LabeledWalk({"a"}, {"x", "x"}, std::vector<EdgeSpec>{}), InputError);
  CHECK_THROWS_AS(LabeledWalk({}, {"x"}, std::vector<EdgeSpec>{}), InputError);
  CHECK_THROWS_AS(two_vertex({{"a", "x", "c", 1.0}}), InputError);
  CHECK_THROWS_AS(two_vertex({{"a", "z", "b", 1.0}}), InputError);
  CHECK_THROWS_AS(two_vertex({{"a", "x", "b", 1.0}, {"a", "x", "a", 1.0}}), InputError);
  CHECK_THROWS_AS(two_vertex({{"a", "x", "b", Complex(NAN, 0.0)}}), InputError);
}

TEST_CASE("tiny amplitudes are exact zeros") {
  const auto w = two_vertex({{"a", "x", "b", 1.0}, {"a", "y", "a", 1e-13}, {"b", "x", "a", 1.0}});
  CHECK(w.alpha(0, 1) == Complex{0.0, 0.0});
  CHECK_FALSE(w.target(0, 1).has_value());
  CHECK(w.edges().size() == 2);
  CHECK(validate_walk(w).valid());
}

TEST_CASE("validation reports each violation kind") {
  CHECK(validate_walk(fixtures::branching_walk()).valid());
  CHECK(validate_walk(fixtures::phased_triangle_walk()).valid());

  const auto short_row = two_vertex({{"a", "x", "b", 0.5}, {"b", "x", "a", 1.0}});
  const auto r1 = validate_walk(short_row);
  CHECK(r1.has(ViolationKind::RowNormalization));
  CHECK(r1.violations.size() == 1);
  CHECK(r1.violations.front().vertex == 0);
  CHECK_THROWS_AS(require_coisometric(short_row), InvalidWalk);

  const auto merge = two_vertex({{"a", "x", "b", 1.0}, {"b", "x", "b", 1.0}});
  CHECK(validate_walk(merge).has(ViolationKind::InInjectivity));
  CHECK_THROWS_AS(require_coisometric(merge), InvalidWalk);

  // Z/2 with labels +1 and -1: both labels lead to the same vertex.
  const auto cyc = fixtures::cyclic_walk(2);
  const auto r2 = validate_walk(cyc);
  CHECK(r2.has(ViolationKind::OutInjectivity));
  CHECK_FALSE(r2.has(ViolationKind::InInjectivity));
  CHECK_NOTHROW(require_coisometric(cyc));
}

TEST_CASE("walk_step follows words and multiplies amplitudes") {
  const auto w = fixtures::branching_walk();
  const Word path{w.label_index("l2"), w.label_index("l1"), w.label_index("l1")};
  const auto r = walk_step(w, w.vertex_index("0"), path);
  REQUIRE(r.has_value());
  CHECK(w.vertex_id(r->first) == "4");
  CHECK(std::abs(r->second - kHalf) < 1e-15);

  const Word dead{w.label_index("l1")};
  CHECK_FALSE(walk_step(w, w.vertex_index("0"), dead).has_value());

  const auto empty = walk_step(w, 2, Word{});
  REQUIRE(empty.has_value());
  CHECK(empty->first == 2);
  CHECK(empty->second == Complex{1.0, 0.0});
}

TEST_CASE("label correspondence matches ids and rejects other alphabets") {
  const auto a = fixtures::branching_walk();
  const LabeledWalk b({"p"}, {"l3", "l1", "l2"}, std::vector<EdgeSpec>{{"p", "l1", "p", 1.0}});
  const auto map = label_correspondence(a, b);
  CHECK(map == std::vector<LabelIndex>{1, 2, 0});
  CHECK_THROWS_AS(label_correspondence(a, fixtures::cyclic_walk(3)), AlphabetMismatch);
}

TEST_CASE("cayley walk on Z/3 with two generators") {
  const auto w = cayley_walk(fixtures::cyclic_group_table(3), {1, 2});
  CHECK(w.num_vertices() == 3);
  CHECK(w.num_labels() == 2);
  CHECK(validate_walk(w).valid());
  for (VertexIndex g = 0; g < 3; ++g) {
    CHECK(w.target(g, 0) == (g + 1) % 3);
    CHECK(w.target(g, 1) == (g + 2) % 3);
    CHECK(std::abs(w.alpha(g, 0) - kHalf) < 1e-15);
  }
}

TEST_CASE("cayley walk carries generator phases") {
  const Complex i{0.0, 1.0};
  const auto w = cayley_walk(fixtures::cyclic_group_table(3), {1, 2}, {{2, i}});
  for (VertexIndex g = 0; g < 3; ++g) CHECK(std::abs(w.alpha(g, 1) - i * kHalf) < 1e-15);
}

TEST_CASE("cayley walk rejects bad input") {
  const auto z3 = fixtures::cyclic_group_table(3);
  CHECK_THROWS_AS(cayley_walk({{0, 1}, {0, 1}}, {1}), InputError);
  CHECK_THROWS_AS(cayley_walk(z3, {}), InputError);
  CHECK_THROWS_AS(cayley_walk(z3, {1, 1}), InputError);
  CHECK_THROWS_AS(cayley_walk(z3, {0}), InputError);
  CHECK_THROWS_AS(cayley_walk(z3, {1}, {{2, Complex{1.0, 0.0}}}), InputError);
  CHECK_THROWS_AS(cayley_walk(z3, {1}, {{1, Complex{2.0, 0.0}}}), InputError);
  // Not associative: a Latin square with identity 0 that is no group table.
  const std::vector<std::vector<std::size_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(cayley_walk(loop, {1, 2}), InputError);
}

TEST_CASE("single generator Z/2 gives a one-label swap") {
  const auto w = fixtures::z2_swap_walk();
  CHECK(w.num_labels() == 1);
  CHECK(w.target(0, 0) == 1u);
  CHECK(w.target(1, 0) == 0u);
  CHECK(std::abs(w.alpha(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("json round trip preserves every fixture") {
  for (const auto& [name, w] : fixtures::all_walks()) {
    CAPTURE(name);
    CHECK(load_walk(save_walk(w)) == w);
  }
}

TEST_CASE("json accepts integer ids and omitted edges") {
  const auto w = load_walk(R"({"vertices": [0, 1], "labels": [7],
      "edges": [{"from": 0, "label": 7, "to": 1, "alpha": 1},
                {"from": 1, "label": 7, "to": 0, "alpha": {"re": 0, "im": 1}}]})");
  CHECK(w.vertex_id(1) == "1");
  CHECK(w.label_id(0) == "7");
  CHECK(w.alpha(1, 0) == Complex{0.0, 1.0});
  CHECK(validate_walk(w).valid());

  const auto bare = load_walk(R"({"vertices": ["a"], "labels": ["x"]})");
  CHECK(bare.edges().empty());
  CHECK(validate_walk(bare).has(ViolationKind::RowNormalization));
}

TEST_CASE("json errors are input errors") {
  CHECK_THROWS_AS(load_walk("{"), InputError);
  CHECK_THROWS_AS(load_walk("[]"), InputError);
  CHECK_THROWS_AS(load_walk(R"({"labels": ["x"]})"), InputError);
  CHECK_THROWS_AS(load_walk(R"({"vertices": [true], "labels": ["x"]})"), InputError);
  CHECK_THROWS_AS(load_walk(R"({"vertices": ["a"], "labels": ["x"], "edges": {}})"), InputError);
  CHECK_THROWS_AS(load_walk(R"({"vertices": ["a"], "labels": ["x"],
      "edges": [{"from": "a", "label": "x", "to": "a", "alpha": {"re": "1", "im": 0}}]})"),
                  InputError);
  CHECK_THROWS_AS(load_walk_file("/nonexistent/walk.json"), InputError);
}

TEST_CASE("property: generated walks are coisometric and round trip") {
  testing::WalkGenerator gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = gen.walk(gen.shape());
    const std::string json_w = save_walk(w);
    CAPTURE(json_w);
    const auto r = validate_walk(w);
    CHECK_FALSE(r.has(ViolationKind::RowNormalization));
    CHECK_FALSE(r.has(ViolationKind::InInjectivity));
    CHECK(load_walk(save_walk(w)) == w);
    for (VertexIndex i = 0; i < w.num_vertices(); ++i) {
      double total = 0.0;
      for (LabelIndex l = 0; l < w.num_labels(); ++l) total += std::norm(w.alpha(i, l));
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}
