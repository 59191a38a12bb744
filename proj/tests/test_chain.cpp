#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "mcmix/chain.hpp"
#include "mcmix/generators.hpp"
#include "mcmix/profiles.hpp"
#include "mcmix/subsets.hpp"

using namespace mcmix;

TEST_CASE("chain file parsing") {
  auto chain = MarkovChain::parse(
      "# two symmetric states\n"
      "states 2\n"
      "edge 0 0 0.5\nedge 0 1 0.5\nedge 1 0 0.5\nedge 1 1 0.5\n");
  CHECK(chain.states() == 2);
  CHECK(chain.pi(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(chain.alpha() == 0.5);

  auto cycle = MarkovChain::parse(
      "states 3\n"
      "edge 0 0 0.5\nedge 0 1 0.5\n"
      "edge 1 1 0.5\nedge 1 2 0.5\n"
      "edge 2 2 0.5\nedge 2 0 0.5\n");
  for (int v = 0; v < 3; ++v)
    CHECK(cycle.pi(v) == doctest::Approx(1.0 / 3).epsilon(1e-14));

  CHECK_THROWS_AS(MarkovChain::parse("states 2\n"
                                     "edge 0 0 0.4\nedge 0 1 0.5\n"
                                     "edge 1 0 0.5\nedge 1 1 0.5\n"),
                  Error);
  CHECK_THROWS_AS(MarkovChain::parse("states 2\nedge 0 1 bad\n"), Error);
  CHECK_THROWS_AS(MarkovChain::parse("edge 0 1 1\n"), Error);
  // Reducible: 1 never reaches 0.
  CHECK_THROWS_AS(MarkovChain::parse("states 2\n"
                                     "edge 0 0 0.5\nedge 0 1 0.5\nedge 1 1 1\n"),
                  Error);
}

TEST_CASE("format round-trips bit-exactly") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5));
    auto copy = MarkovChain::parse(chain.format());
    REQUIRE(copy.states() == chain.states());
    for (int a = 0; a < chain.states(); ++a) {
      CHECK(copy.pi(a) == chain.pi(a));
      for (int b = 0; b < chain.states(); ++b) CHECK(copy.p(a, b) == chain.p(a, b));
    }
  }
}

TEST_CASE("stationary distribution") {
  auto two = testutil::two_state_asym();
  CHECK(two.pi(0) == doctest::Approx(2.0 / 3).epsilon(1e-13));
  CHECK(two.pi(1) == doctest::Approx(1.0 / 3).epsilon(1e-13));

  // Doubly stochastic input: exactly uniform.
  auto rot = cycle_walk(3, 0.0);
  CHECK(rot.pi(0) == 1.0 / 3);
  CHECK(rot.pi(2) == 1.0 / 3);

  auto path = testutil::lazy_path3();
  CHECK(path.pi(0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(path.pi(1) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("time reversal") {
  auto sym = MarkovChain::parse(
      "states 2\n"
      "edge 0 0 0.5\nedge 0 1 0.5\nedge 1 0 0.5\nedge 1 1 0.5\n");
  auto sym_rev = sym.reversal();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(sym_rev.p(a, b) == doctest::Approx(sym.p(a, b)));

  auto rot = cycle_walk(3, 0.0);
  auto rot_rev = rot.reversal();
  CHECK(rot_rev.p(0, 2) == doctest::Approx(1.0));
  CHECK(rot_rev.p(1, 0) == doctest::Approx(1.0));

  // Reversible two-state chain: P* = P entrywise.
  auto two = testutil::two_state_asym();
  auto two_rev = two.reversal();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(two_rev.p(a, b) == doctest::Approx(two.p(a, b)).epsilon(1e-13));

  // Involution on random chains.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    auto chain = random_chain(rng, 5);
    auto twice = chain.reversal().reversal();
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        CHECK(std::fabs(twice.p(a, b) - chain.p(a, b)) <= 1e-12);
  }
}

TEST_CASE("ergodic flow") {
  auto cycle = cycle_walk(3, 0.5);
  auto all = make_subset(cycle, full_mask(3));
  CHECK(ergodic_flow(cycle, all, all) == doctest::Approx(1.0).epsilon(1e-14));

  auto a = make_subset(cycle, 0b001);
  auto b = make_subset(cycle, 0b010);
  CHECK(ergodic_flow(cycle, a, b) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(ergodic_flow(cycle, a, make_subset(cycle, 0)) == 0.0);

  // Q(A,V) = pi(A) and Q(V,B) = pi(B); Q_{P*}(A,B) = Q_P(B,A).
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5; ++i) {
    auto chain = random_chain(rng, 5);
    auto rev = chain.reversal();
    auto full = make_subset(chain, full_mask(5));
    for (std::uint64_t bits = 1; bits < full_mask(5); ++bits) {
      auto sub = make_subset(chain, bits);
      CHECK(std::fabs(ergodic_flow(chain, sub, full) - sub.measure) <= 1e-12);
      CHECK(std::fabs(ergodic_flow(chain, full, sub) - sub.measure) <= 1e-12);
    }
    for (std::uint64_t x = 1; x < full_mask(5); x += 7)
      for (std::uint64_t y = 1; y < full_mask(5); y += 5) {
        auto sa = make_subset(chain, x);
        auto sb = make_subset(chain, y);
        CHECK(std::fabs(ergodic_flow(rev, sa, sb) - ergodic_flow(chain, sb, sa)) <=
              1e-12);
      }
  }
}

TEST_CASE("chi-square distance") {
  auto cycle = cycle_walk(4, 0.25);
  CHECK(chi_square_distance(cycle.stationary(), cycle) == doctest::Approx(0.0));

  std::vector<double> point{1.0, 0.0, 0.0, 0.0};
  CHECK(chi_square_distance(point, cycle) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

  auto uniform2 = MarkovChain::parse(
      "states 2\nedge 0 0 0.5\nedge 0 1 0.5\nedge 1 0 0.5\nedge 1 1 0.5\n");
  std::vector<double> skew{0.75, 0.25};
  CHECK(chi_square_distance(skew, uniform2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("empirical mixing time") {
  auto instant = rows_equal_pi_chain({0.4, 0.3, 0.2, 0.1});
  for (int x = 0; x < 4; ++x) {
    auto tau = empirical_mixing_time(instant, x, 0.5, 10);
    CHECK(tau.reached);
    CHECK(tau.steps == 1);
  }

  auto flip = testutil::flip_chain();
  CHECK_FALSE(empirical_mixing_time(flip, 0, 0.9, 5000).reached);

  // Fixed by the independent oracle: 3-state cycle at alpha = 1/2.
  auto cycle = cycle_walk(3, 0.5);
  auto tau = empirical_mixing_time(cycle, 0, 0.5, 1000);
  CHECK(tau.reached);
  CHECK(tau.steps == 2);
  CHECK(tau.steps == testutil::tau_by_matrix_power(cycle, 0, 0.5, 1000));

  // Against the oracle on random chains, plus monotonicity in eps.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    RandomChainOptions opt;
    opt.force_holding = i % 2 == 0;
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 4), opt);
    auto got = empirical_mixing_time(chain, 0, 0.5, 5000);
    long want = testutil::tau_by_matrix_power(chain, 0, 0.5, 5000);
    CHECK((got.reached ? got.steps : -1) == want);
    auto tighter = empirical_mixing_time(chain, 0, 0.25, 5000);
    if (got.reached && tighter.reached) CHECK(tighter.steps >= got.steps);
  }

  // Already-mixed start returns 0.
  auto near = rows_equal_pi_chain({0.5, 0.5});
  CHECK(empirical_mixing_time(near, 0, 2.0, 10).steps == 0);
}

TEST_CASE("chi-square distance is non-increasing along the walk") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    RandomChainOptions opt;
    opt.force_holding = true;
    auto chain = random_chain(rng, 4, opt);
    int n = chain.states();
    std::vector<double> cur(n, 0.0), next(n, 0.0);
    cur[0] = 1.0;
    double prev = chi_square_distance(cur, chain);
    for (int step = 0; step < 50; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) next[b] += cur[a] * chain.p(a, b);
      cur = next;
      double d = chi_square_distance(cur, chain);
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }
}
