#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "mcmix/generators.hpp"
#include "mcmix/paths.hpp"
#include "mcmix/profiles.hpp"

using namespace mcmix;

namespace {

// Random-walk paths: valid but usually full of cycles.
PathFamily random_walk_family(const MarkovChain& chain, std::mt19937_64& rng) {
  int n = chain.states();
  PathFamily bfs = bfs_paths(chain);
  PathFamily family;
  family.n = n;
  family.paths.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<int> walk{x};
      int v = x;
      for (int step = 0; step < 8 * n && v != y; ++step) {
        std::vector<int> options;
        for (int w = 0; w < n; ++w)
          if (w != v && chain.p(v, w) > 0.0) options.push_back(w);
        v = options[rng() % options.size()];
        walk.push_back(v);
      }
      family.paths[static_cast<size_t>(x) * n + y] =
          v == y ? walk : bfs.at(x, y);
    }
  return family;
}

}  // namespace

TEST_CASE("bfs paths") {
  auto rot = cycle_walk(5, 0.0);
  auto family = bfs_paths(rot);
  CHECK(family.at(0, 3) == std::vector<int>{0, 1, 2, 3});

  auto k4 = complete_graph_walk(4);
  auto kfam = bfs_paths(k4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (x != y) CHECK(kfam.at(x, y).size() == 2);

  auto path = testutil::lazy_path3();
  CHECK(bfs_paths(path).at(0, 2) == std::vector<int>{0, 1, 2});
}

TEST_CASE("remove cycles") {
  CHECK(simplify_path({0, 1, 2, 1, 3}) == std::vector<int>{0, 1, 3});
  CHECK(simplify_path({0, 1, 3}) == std::vector<int>{0, 1, 3});
  CHECK(simplify_path({2}) == std::vector<int>{2});

  std::mt19937_64 rng(41);
  for (int i = 0; i < 15; ++i) {
    RandomChainOptions opt;
    opt.force_holding = i % 2 == 0;
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5), opt);
    auto cyclic = random_walk_family(chain, rng);
    auto simple = remove_cycles(cyclic);
    for (int x = 0; x < chain.states(); ++x)
      for (int y = 0; y < chain.states(); ++y) {
        if (x == y) continue;
        const auto& p = simple.at(x, y);
        CHECK(p.front() == x);
        CHECK(p.back() == y);
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      }
    CHECK(edge_congestion(chain, simple) <= edge_congestion(chain, cyclic) + 1e-12);
    CHECK(vertex_congestion(chain, simple) <=
          vertex_congestion(chain, cyclic) + 1e-12);
  }
}

TEST_CASE("edge congestion") {
  for (int n : {3, 5, 7, 9})
    for (double alpha : {0.25, 0.5}) {
      auto cycle = cycle_walk(n, alpha);
      auto family = bfs_paths(cycle);
      CHECK(edge_congestion(cycle, family) ==
            doctest::Approx((n - 1) / (2.0 * (1.0 - alpha))).epsilon(1e-13));
    }

  auto k2 = complete_graph_walk(2);
  CHECK(edge_congestion(k2, bfs_paths(k2)) == doctest::Approx(2.0).epsilon(1e-14));

  // A family naming a zero-probability edge is rejected.
  auto cycle = cycle_walk(3, 0.5);
  PathFamily bogus;
  bogus.n = 3;
  bogus.paths.resize(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != y) bogus.paths[static_cast<size_t>(x) * 3 + y] = {x, y};
  CHECK_THROWS_AS(edge_congestion(cycle, bogus), Error);
}

TEST_CASE("vertex congestion") {
  for (int n : {3, 5, 7})
    for (double alpha : {0.25, 0.5}) {
      auto cycle = cycle_walk(n, alpha);
      CHECK(vertex_congestion(cycle, bfs_paths(cycle)) ==
            doctest::Approx((n - 1) / 2.0).epsilon(1e-13));
    }

  // Flip chain, paths 0->1 and 1->0: every membership is shared, so each
  // vertex carries half weight from both ordered pairs.
  auto flip = testutil::flip_chain();
  CHECK(vertex_congestion(flip, bfs_paths(flip)) == doctest::Approx(0.5));

  // Complete graph: definition vs the directed-sum upper bound.
  for (int n : {3, 4, 6}) {
    auto kn = complete_graph_walk(n);
    auto family = bfs_paths(kn);
    double rho = vertex_congestion(kn, family);
    double directed = 0.0;
    for (int v = 0; v < n; ++v) {
      double load = 0.0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x == y) continue;
          const auto& p = family.at(x, y);
          if (v != x && std::find(p.begin(), p.end(), v) != p.end())
            load += kn.pi(x) * kn.pi(y);
        }
      directed = std::max(directed, load / kn.pi(v));
    }
    CHECK(rho == doctest::Approx((n - 1.0) / n).epsilon(1e-13));
    CHECK(rho <= directed + 1e-13);
  }
}

TEST_CASE("path statistics") {
  auto k4 = complete_graph_walk(4);
  auto stats = path_stats(k4, bfs_paths(k4));
  CHECK(stats.max_len == 1.0);
  CHECK(stats.avg_len == doctest::Approx(1.0));
  CHECK(stats.avg_vertex_congestion == doctest::Approx(1.0 - 0.25).epsilon(1e-13));

  auto c5 = cycle_walk(5, 0.5);
  CHECK(path_stats(c5, bfs_paths(c5)).max_len == 4.0);

  // Averages identity rho_v_ave = ell_ave (1 - ||pi||^2) on random
  // cycle-free families (randomized via walk + cycle removal).
  std::mt19937_64 rng(43);
  for (int i = 0; i < 25; ++i) {
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5));
    auto family = remove_cycles(random_walk_family(chain, rng));
    auto st = path_stats(chain, family);
    double norm2 = 0.0;
    for (int v = 0; v < chain.states(); ++v) norm2 += chain.pi(v) * chain.pi(v);
    CHECK(st.avg_vertex_congestion ==
          doctest::Approx(st.avg_len * (1.0 - norm2)).epsilon(1e-12));
  }
}

TEST_CASE("boundary probability") {
  auto c5 = cycle_walk(5, 0.5);
  CHECK(boundary_prob(c5, bfs_paths(c5)) == 0.5);

  auto k4 = complete_graph_walk(4);
  CHECK(boundary_prob(k4, bfs_paths(k4)) == doctest::Approx(0.125));

  // A supplied family that avoids a light edge has a larger P0 than the
  // lightest positive transition.
  auto chain = MarkovChain::from_matrix(
      3, {0.45, 0.5, 0.05, 0.0, 0.5, 0.5, 0.5, 0.0, 0.5});
  auto family = parse_path_family(
      "path 0 1 0 1\npath 0 2 0 1 2\npath 1 0 1 2 0\n"
      "path 1 2 1 2\npath 2 0 2 0\npath 2 1 2 0 1\n",
      chain);
  CHECK(boundary_prob(chain, family) == 0.5);
  double global_min = 0.05;
  CHECK(boundary_prob(chain, family) > global_min);
}

TEST_CASE("alternating paths") {
  // Self-loops everywhere: the diagonal path is a single loop edge.
  auto c5 = cycle_walk(5, 0.5);
  auto alt = alternating_paths(c5);
  for (int x = 0; x < 5; ++x) CHECK(alt.at(x, x) == std::vector<int>{x, x});

  // Odd pure rotation: P* runs backwards, every alternating path has net
  // displacement +1, so only pairs (x, x+1) are connected.
  auto rot = cycle_walk(3, 0.0);
  CHECK_THROWS_WITH_AS(alternating_paths(rot),
                       doctest::Contains("no odd alternating path"), Error);

  // Flip chain: gamma(0,0) would need odd length but the walk has period 2.
  auto flip = testutil::flip_chain();
  CHECK_THROWS_AS(alternating_paths(flip), Error);

  // Rows equal pi: direct one-step paths, odd congestion exactly 1.
  auto instant = rows_equal_pi_chain({0.4, 0.3, 0.2, 0.1});
  auto ialt = alternating_paths(instant);
  auto istats = alt_stats(instant, ialt);
  CHECK(istats.vertex_congestion == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("alternating family validation") {
  auto c5 = cycle_walk(5, 0.5);
  AltPathFamily bad;
  bad.n = 5;
  bad.paths.resize(25);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) bad.paths[static_cast<size_t>(x) * 5 + y] = {x, y};
  // Pairs that are not P-adjacent fail edge validation; even-length paths
  // would fail the parity test first.
  CHECK_THROWS_AS(validate_alt_family(c5, bad), Error);
}

TEST_CASE("derived alternating families") {
  auto c5 = cycle_walk(5, 0.5);
  auto plain = remove_cycles(bfs_paths(c5));
  auto derived = alternating_from_plain(c5, plain);
  CHECK(derived.at(2, 2) == std::vector<int>{2, 2});

  auto stats = alt_stats(c5, derived);
  // Dual evaluation of the vertex congestion: definition vs 1 + max formula.
  double directed = 0.0;
  for (int v = 0; v < 5; ++v) {
    double load = 0.0;
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) {
        if (x == y) continue;
        const auto& p = plain.at(x, y);
        if (v != x && std::find(p.begin(), p.end(), v) != p.end())
          load += c5.pi(x) * c5.pi(y);
      }
    directed = std::max(directed, load / c5.pi(v));
  }
  CHECK(stats.vertex_congestion == doctest::Approx(1.0 + directed).epsilon(1e-13));
  CHECK(stats.vertex_congestion == doctest::Approx(3.0).epsilon(1e-13));

  // P0* = min{alpha, P0} on uniform-pi chains.
  CHECK(stats.reversed_boundary ==
        doctest::Approx(std::min(c5.alpha(), boundary_prob(c5, plain))));

  // Also exact on the Eulerian triangle with loops.
  EdgeMultiset triangle;
  triangle.vertices = 3;
  triangle.count.assign(9, 1);
  auto tri = eulerian_walk(triangle, 3);
  auto tri_plain = remove_cycles(bfs_paths(tri));
  auto tri_stats = alt_stats(tri, alternating_from_plain(tri, tri_plain));
  CHECK(tri_stats.reversed_boundary ==
        doctest::Approx(std::min(tri.alpha(), boundary_prob(tri, tri_plain))));

  auto rot = cycle_walk(3, 0.0);
  CHECK_THROWS_AS(alternating_from_plain(rot, bfs_paths(rot)), Error);
}

TEST_CASE("alternating congestion is at least 1") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 15; ++i) {
    RandomChainOptions opt;
    opt.force_holding = true;
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5), opt);
    auto stats = alt_stats(chain, alternating_paths(chain));
    CHECK(stats.vertex_congestion >= 1.0 - 1e-12);
    auto derived =
        alt_stats(chain, alternating_from_plain(chain, remove_cycles(bfs_paths(chain))));
    CHECK(derived.vertex_congestion >= 1.0 - 1e-12);
  }
}

TEST_CASE("cayley word paths") {
  auto z5 = GroupPresentation::from_spec("z5", {"id", "+1"}, {0.5, 0.5});
  auto chain = cayley_walk(z5);
  auto words = cayley_word_paths(z5, chain);
  CHECK(words.diameter == 4);
  for (int g = 0; g < 5; ++g) {
    CHECK(static_cast<int>(words.words[g].size()) == g);
    CHECK(words.occurrences[g][1] == g);  // generator "+1"
    CHECK(words.occurrences[g][0] == 0);  // shortest words never use id
  }
  double rho_v = vertex_congestion(chain, words.family);
  double rho_e = edge_congestion(chain, words.family);
  CHECK(rho_v == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(rho_e == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(rho_v < words.diameter);
  double appendix_edge_bound = 0.0;
  for (int g = 0; g < 5; ++g)
    for (size_t k = 0; k < z5.generators.size(); ++k)
      appendix_edge_bound =
          std::max(appendix_edge_bound, words.occurrences[g][k] / z5.gen_probs[k]);
  CHECK(rho_e < appendix_edge_bound);

  // Translation invariance: the same number of paths passes through every
  // vertex.
  auto z3 = GroupPresentation::from_spec("z3", {"+1"}, {});
  auto rot = cayley_walk(z3);
  auto zwords = cayley_word_paths(z3, rot);
  CHECK(zwords.diameter == 2);
  std::vector<int> counts(3, 0);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (x == y) continue;
      for (int v : zwords.family.at(x, y))
        if (v != x) ++counts[v];
    }
  CHECK(counts[0] == counts[1]);
  CHECK(counts[1] == counts[2]);
}

TEST_CASE("cayley alternating paths") {
  // Z5 with S = {+1}: every alternating word has net displacement +1.
  auto z5 = GroupPresentation::from_spec("z5", {"+1"}, {});
  auto rot5 = cayley_walk(z5);
  CHECK_THROWS_WITH_AS(cayley_alternating_paths(z5, rot5),
                       doctest::Contains("unreachable"), Error);

  // Z2 with S = {+1}: parity obstruction for the identity.
  auto z2 = GroupPresentation::from_spec("z2", {"+1"}, {});
  CHECK_THROWS_AS(cayley_alternating_paths(z2, cayley_walk(z2)), Error);

  // Z5 with S = {+1,+2} is connected under alternating words.
  auto z5b = GroupPresentation::from_spec("z5", {"+1", "+2"}, {});
  auto walk = cayley_walk(z5b);
  auto alt = cayley_alternating_paths(z5b, walk);
  auto stats = alt_stats(walk, alt.family);
  CHECK(stats.vertex_congestion <= (1.0 + alt.diameter) / 2.0 + 1e-12);

  // Symmetric set with id: alternating diameter at most 2 Delta + 1.
  auto z7 = GroupPresentation::from_spec("z7", {"id", "+1", "-1"}, {});
  auto walk7 = cayley_walk(z7);
  auto words7 = cayley_word_paths(z7, walk7);
  auto alt7 = cayley_alternating_paths(z7, walk7);
  CHECK(alt7.diameter <= 2 * words7.diameter + 1);
  auto stats7 = alt_stats(walk7, alt7.family);
  CHECK(stats7.vertex_congestion <= (1.0 + alt7.diameter) / 2.0 + 1e-12);
}

TEST_CASE("path files") {
  auto c3 = cycle_walk(3, 0.5);
  auto family = bfs_paths(c3);
  auto text = format_path_family(family);
  auto parsed = parse_path_family(text, c3);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(parsed.at(x, y) == family.at(x, y));

  CHECK_THROWS_AS(parse_path_family("path 0 1 0 1\n", c3), Error);  // missing pairs
  CHECK_THROWS_AS(parse_path_family(text + "path 0 1 0 1\n", c3), Error);  // dup
  CHECK_THROWS_AS(parse_path_family("walk 0 1 0 1\n", c3), Error);

  // Alternating file loading validates parity and edge types.
  auto alt = alternating_paths(c3);
  std::string alt_text;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      alt_text += "path " + std::to_string(x) + " " + std::to_string(y);
      for (int v : alt.at(x, y)) alt_text += " " + std::to_string(v);
      alt_text += "\n";
    }
  auto alt_parsed = parse_alt_family(alt_text, c3);
  CHECK(alt_parsed.at(0, 0).size() % 2 == 0);
  CHECK_THROWS_AS(parse_alt_family("path 0 0 0 1 0\n", c3), Error);  // even length
}
