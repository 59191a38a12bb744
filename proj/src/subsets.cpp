#include "mcmix/subsets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mcmix {

Subset make_subset(const MarkovChain& chain, std::uint64_t bits) {
  int n = chain.states();
  if (n > 64) throw Error(ErrorKind::Cap, "subset operations require n <= 64");
  if (bits & ~full_mask(n))
    throw Error(ErrorKind::Validation, "subset has bits outside the state space");
  double m = 0.0;
  for (int v = 0; v < n; ++v)
    if ((bits >> v) & 1u) m += chain.pi(v);
  return {bits, m};
}

Subset complement_subset(const MarkovChain& chain, const Subset& a) {
  return make_subset(chain, ~a.bits & full_mask(chain.states()));
}

void require_enumerable(const MarkovChain& chain, int cap) {
  if (chain.states() > cap)
    throw Error(ErrorKind::Cap,
                "state count " + std::to_string(chain.states()) +
                    " exceeds the subset enumeration cap " + std::to_string(cap));
}

bool is_uniform_pi(const MarkovChain& chain) {
  double u = 1.0 / chain.states();
  for (int v = 0; v < chain.states(); ++v)
    if (std::fabs(chain.pi(v) - u) > 1e-15) return false;
  return true;
}

bool is_exchangeable(const MarkovChain& chain) {
  int n = chain.states();
  double diag = chain.p(0, 0);
  double off = chain.p(0, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double want = i == j ? diag : off;
      if (std::fabs(chain.p(i, j) - want) > 1e-15) return false;
    }
  return true;
}

double delta0(const MarkovChain& chain, int cap) {
  int n = chain.states();
  if (is_uniform_pi(chain)) return 1.0 / n;  // subset sums are exactly {k/n}
  require_enumerable(chain, cap);

  std::uint64_t total = 1ull << n;
  std::vector<double> sums;
  sums.reserve(total);
  // Gray-code walk: one pi update per subset.
  double cur = 0.0;
  std::uint64_t prev = 0;
  sums.push_back(0.0);
  for (std::uint64_t k = 1; k < total; ++k) {
    std::uint64_t gray = k ^ (k >> 1);
    std::uint64_t diff = gray ^ prev;
    int v = std::countr_zero(diff);
    cur += (gray & diff) ? chain.pi(v) : -chain.pi(v);
    sums.push_back(cur);
    prev = gray;
  }
  std::sort(sums.begin(), sums.end());

  constexpr double kTie = 1e-12;
  double best = 2.0;
  double cluster = sums[0];
  for (double s : sums) {
    double gap = s - cluster;
    if (gap > kTie) {
      best = std::min(best, gap);
      cluster = s;
    }
  }
  if (best > 1.0)
    throw Error(ErrorKind::Validation, "all subset measures coincide");
  return best;
}

}  // namespace mcmix
