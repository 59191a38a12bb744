#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "mcmix/evolving.hpp"
#include "mcmix/generators.hpp"

using namespace mcmix;

TEST_CASE("threshold sets") {
  auto cycle = cycle_walk(3, 0.5);
  auto a = make_subset(cycle, 0b001);

  // u = 0 admits every state.
  CHECK(threshold_set(cycle, a, 0.0).bits == full_mask(3));

  // Ratios from {0}: (1/2, 1/2, 0).
  CHECK(threshold_set(cycle, a, 0.3).bits == 0b011);
  CHECK(threshold_set(cycle, a, 0.5).bits == 0b011);
  CHECK(threshold_set(cycle, a, 0.6).bits == 0);

  // Rows equal pi: every ratio equals pi(A).
  auto instant = rows_equal_pi_chain({0.4, 0.3, 0.2, 0.1});
  auto ia = make_subset(instant, 0b0011);  // measure 0.7
  CHECK(threshold_set(instant, ia, 0.69).bits == full_mask(4));
  CHECK(threshold_set(instant, ia, 0.71).bits == 0);
}

TEST_CASE("threshold curves") {
  auto cycle = cycle_walk(3, 0.5);
  auto a = make_subset(cycle, 0b001);
  auto curve = threshold_curve(cycle, a);
  REQUIRE(curve.hi.size() == 2);
  CHECK(curve.hi[0] == doctest::Approx(0.5));
  CHECK(curve.measure[0] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(curve.hi[1] == doctest::Approx(1.0));
  CHECK(curve.measure[1] == doctest::Approx(0.0));
  CHECK(curve.integral() == doctest::Approx(1.0 / 3).epsilon(1e-13));

  // A = V: constant measure 1.
  auto full_curve = threshold_curve(cycle, make_subset(cycle, full_mask(3)));
  CHECK(full_curve.integral() == doctest::Approx(1.0).epsilon(1e-12));
  for (double m : full_curve.measure) CHECK(m == doctest::Approx(1.0));

  auto flip = testutil::flip_chain();
  auto fcurve = threshold_curve(flip, make_subset(flip, 0b01));
  REQUIRE(fcurve.hi.size() == 1);
  CHECK(fcurve.hi[0] == 1.0);
  CHECK(fcurve.measure[0] == doctest::Approx(0.5));

  // Integral identity and monotone measures over subsets of random chains.
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5));
    int n = chain.states();
    for (std::uint64_t bits = 1; bits < full_mask(n); ++bits) {
      auto sub = make_subset(chain, bits);
      auto c = threshold_curve(chain, sub);
      CHECK(std::fabs(c.integral() - sub.measure) <= 1e-12);
      for (size_t k = 0; k + 1 < c.measure.size(); ++k)
        CHECK(c.measure[k + 1] <= c.measure[k] + 1e-15);
    }
  }
}

TEST_CASE("root profile values") {
  // Perfect one-step mixing: integrand vanishes, profile is 1.
  auto instant = rows_equal_pi_chain({0.5, 0.5});
  CHECK(root_profile(instant, make_subset(instant, 0b01)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // Worked value: 3-state cycle at alpha = 1/2, A = {0}.
  auto cycle = cycle_walk(3, 0.5);
  CHECK(root_profile(cycle, make_subset(cycle, 0b001)) ==
        doctest::Approx(0.5).epsilon(1e-13));

  // Period 2, no diffusion: 0.
  auto flip = testutil::flip_chain();
  CHECK(root_profile(flip, make_subset(flip, 0b01)) ==
        doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(root_profile(cycle, make_subset(cycle, 0)), Error);
  CHECK_THROWS_AS(root_profile(cycle, make_subset(cycle, full_mask(3))), Error);
}

TEST_CASE("root profile range and complement symmetry") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 15; ++i) {
    auto chain = random_chain(rng, 2 + static_cast<int>(rng() % 5));
    int n = chain.states();
    for (std::uint64_t bits = 1; bits < full_mask(n); ++bits) {
      auto sub = make_subset(chain, bits);
      double value = root_profile(chain, sub);
      CHECK(value >= 0.0);
      CHECK(value <= 1.0);
      CHECK(std::fabs(value - root_profile(chain, complement_subset(chain, sub))) <=
            1e-12);
    }
  }
}

TEST_CASE("root profile curves") {
  auto flip = testutil::flip_chain();
  auto fp = root_profile_curve(flip);
  CHECK(fp.value_at(0.5) == doctest::Approx(0.0));

  auto instant = rows_equal_pi_chain({0.25, 0.25, 0.25, 0.25});
  auto ip = root_profile_curve(instant);
  for (const auto& step : ip.steps()) CHECK(step.value == doctest::Approx(1.0));

  auto cycle = cycle_walk(3, 0.5);
  auto cp = root_profile_curve(cycle);
  CHECK(cp.value_at(1.0 / 3) == doctest::Approx(0.5).epsilon(1e-13));
}
