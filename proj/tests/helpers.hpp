#pragma once

#include <cmath>
#include <vector>

#include "mcmix/chain.hpp"

namespace testutil {

inline mcmix::MarkovChain flip_chain() {
  return mcmix::MarkovChain::from_matrix(2, {0.0, 1.0, 1.0, 0.0});
}

// P = [[3/4, 1/4], [1/2, 1/2]]; pi = (2/3, 1/3); reversible.
inline mcmix::MarkovChain two_state_asym() {
  return mcmix::MarkovChain::from_matrix(2, {0.75, 0.25, 0.5, 0.5});
}

// Lazy walk on the path graph 0 - 1 - 2; pi = (1/4, 1/2, 1/4).
inline mcmix::MarkovChain lazy_path3() {
  return mcmix::MarkovChain::from_matrix(
      3, {0.5, 0.5, 0.0, 0.25, 0.5, 0.25, 0.0, 0.5, 0.5});
}

// Independent mixing-time oracle: dense matrix powers instead of the
// vector iteration used by the implementation.
inline long tau_by_matrix_power(const mcmix::MarkovChain& chain, int x, double eps,
                                long max_steps) {
  int n = chain.states();
  std::vector<double> power(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) power[static_cast<size_t>(i) * n + i] = 1.0;
  auto distance = [&]() {
    double acc = 0.0;
    for (int v = 0; v < n; ++v) {
      double d = power[static_cast<size_t>(x) * n + v] / chain.pi(v) - 1.0;
      acc += chain.pi(v) * d * d;
    }
    return std::sqrt(acc);
  };
  if (distance() <= eps) return 0;
  std::vector<double> next(power.size());
  for (long step = 1; step <= max_steps; ++step) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
          acc += power[static_cast<size_t>(i) * n + k] * chain.p(k, j);
        next[static_cast<size_t>(i) * n + j] = acc;
      }
    power.swap(next);
    if (distance() <= eps) return step;
  }
  return -1;
}

}  // namespace testutil
