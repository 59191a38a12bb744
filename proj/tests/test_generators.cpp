#include "doctest.h"

#include <cmath>

#include "mcmix/generators.hpp"

using namespace mcmix;

TEST_CASE("cycle walk") {
  auto c5 = cycle_walk(5, 0.5);
  CHECK(c5.states() == 5);
  CHECK(c5.alpha() == 0.5);
  for (int i = 0; i < 5; ++i) {
    CHECK(c5.p(i, i) == 0.5);
    CHECK(c5.p(i, (i + 1) % 5) == 0.5);
    CHECK(c5.pi(i) == doctest::Approx(0.2));
  }

  auto rot = cycle_walk(3, 0.0);
  CHECK(rot.alpha() == 0.0);
  CHECK(rot.p(2, 0) == 1.0);

  auto c4 = cycle_walk(4, 0.25);
  CHECK(c4.p(0, 0) == 0.25);
  CHECK(c4.p(0, 1) == 0.75);
  CHECK(c4.p(0, 2) == 0.0);
  CHECK(c4.p(0, 3) == 0.0);

  CHECK_THROWS_AS(cycle_walk(2, 0.5), Error);
}

TEST_CASE("complete graph walk") {
  auto k2 = complete_graph_walk(2);
  CHECK(k2.p(0, 0) == doctest::Approx(0.75));
  CHECK(k2.p(0, 1) == doctest::Approx(0.25));

  auto k4 = complete_graph_walk(4);
  CHECK(k4.p(0, 0) == doctest::Approx(0.625));
  CHECK(k4.p(0, 3) == doctest::Approx(0.125));

  for (int n : {2, 3, 5, 8}) {
    auto chain = complete_graph_walk(n);
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += chain.p(i, j);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("eulerian walk") {
  // Undirected triangle with one self-loop per vertex, d = 3.
  EdgeMultiset triangle;
  triangle.vertices = 3;
  triangle.count.assign(9, 0);
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w) triangle.count[static_cast<size_t>(v) * 3 + w] = 1;
  auto walk = eulerian_walk(triangle, 3);
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w) CHECK(walk.p(v, w) == doctest::Approx(1.0 / 3));
  CHECK(walk.pi(0) == 1.0 / 3);

  // Directed 3-cycle without loops, d = 1: the rotation chain.
  auto rotation = eulerian_walk(EdgeMultiset::parse(
      "vertices 3\narc 0 1\narc 1 2\narc 2 0\n"));
  CHECK(rotation.p(0, 1) == 1.0);
  CHECK(rotation.p(0, 0) == 0.0);

  // Degree mismatch (star with all arcs outward) is rejected.
  CHECK_THROWS_AS(eulerian_walk(EdgeMultiset::parse(
                      "vertices 3\narc 0 1\narc 0 2\narc 1 0\narc 2 0\narc 1 2\n")),
                  Error);
  // d below max degree is rejected.
  CHECK_THROWS_AS(eulerian_walk(triangle, 2), Error);
}

TEST_CASE("group presentations") {
  auto z5 = GroupPresentation::cyclic(5);
  CHECK(z5.order == 5);
  CHECK(z5.times(3, 4) == 2);
  CHECK(z5.inverse(2) == 3);
  CHECK(z5.element_by_name("+4") == 4);

  auto s3 = GroupPresentation::symmetric(3);
  CHECK(s3.order == 6);
  CHECK(s3.identity == s3.element_by_name("id"));
  int t12 = s3.element_by_name("(12)");
  int c123 = s3.element_by_name("(123)");
  REQUIRE(t12 >= 0);
  REQUIRE(c123 >= 0);
  CHECK(s3.times(t12, t12) == s3.identity);
  CHECK(s3.times(c123, s3.times(c123, c123)) == s3.identity);

  auto via_spec = GroupPresentation::from_spec("z5", {"id", "+1"}, {0.5, 0.5});
  CHECK(via_spec.generators.size() == 2);
  // Bare integers and negatives resolve modulo the order.
  auto alt = GroupPresentation::from_spec("z5", {"0", "-4"}, {});
  CHECK(alt.generators == via_spec.generators);

  CHECK_THROWS_AS(GroupPresentation::from_spec("q8", {"id"}, {}), Error);
  CHECK_THROWS_AS(GroupPresentation::from_spec("s3", {"(14)"}, {}), Error);
}

TEST_CASE("cayley walk") {
  auto z5 = GroupPresentation::from_spec("z5", {"id", "+1"}, {0.5, 0.5});
  auto walk = cayley_walk(z5);
  auto cycle = cycle_walk(5, 0.5);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) CHECK(walk.p(a, b) == cycle.p(a, b));

  auto z3 = GroupPresentation::from_spec("z3", {"+1"}, {});
  auto rot = cayley_walk(z3);
  CHECK(rot.p(1, 2) == 1.0);

  auto s3 = GroupPresentation::from_spec("s3", {"(12)", "(123)"}, {0.5, 0.5});
  auto s3walk = cayley_walk(s3);
  CHECK(s3walk.states() == 6);
  for (int g = 0; g < 6; ++g) {
    CHECK(s3walk.pi(g) == 1.0 / 6);
    double sum = 0.0;
    for (int h = 0; h < 6; ++h) sum += s3walk.p(g, h);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }

  // Non-generating set: reducible, surfaces as an ergodicity error.
  auto z4 = GroupPresentation::from_spec("z4", {"+2"}, {});
  CHECK_THROWS_AS(cayley_walk(z4), Error);
}

TEST_CASE("random chains are valid and deterministic") {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 10; ++i) {
    auto ca = random_chain(a, 6);
    auto cb = random_chain(b, 6);
    for (int x = 0; x < 6; ++x)
      for (int y = 0; y < 6; ++y) CHECK(ca.p(x, y) == cb.p(x, y));
  }
  std::mt19937_64 rng(1);
  RandomChainOptions opt;
  opt.force_holding = true;
  for (int i = 0; i < 20; ++i) {
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5), opt);
    CHECK(chain.alpha() > 0.0);
  }
}
