#pragma once

#include <cstdint>
#include <vector>

#include "mcmix/chain.hpp"

namespace mcmix {

/// Default cap for operations that enumerate all 2^n subsets.
inline constexpr int kEnumerationCap = 20;

/// Subset of the state space as a bit pattern, with pi(A) cached.
struct Subset {
  std::uint64_t bits = 0;
  double measure = 0.0;

  bool contains(int v) const { return (bits >> v) & 1u; }
};

Subset make_subset(const MarkovChain& chain, std::uint64_t bits);
Subset complement_subset(const MarkovChain& chain, const Subset& a);

inline std::uint64_t full_mask(int n) {
  return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

void require_enumerable(const MarkovChain& chain, int cap = kEnumerationCap);

bool is_uniform_pi(const MarkovChain& chain);

/// True when the kernel is invariant under every permutation of states
/// (equal diagonal, equal off-diagonal). For such chains all subsets of a
/// given size are equivalent, which allows exact profile construction far
/// beyond the enumeration cap.
bool is_exchangeable(const MarkovChain& chain);

/// Smallest nonzero gap between measures of any two subsets:
/// min { |pi(A) - pi(B)| : pi(A) != pi(B) }. Sorts all 2^n subset sums;
/// gaps below 1e-12 are treated as ties. Uniform pi short-circuits to 1/n
/// exactly for any n.
double delta0(const MarkovChain& chain, int cap = kEnumerationCap);

}  // namespace mcmix
