#pragma once

#include <string>
#include <vector>

#include "mcmix/chain.hpp"
#include "mcmix/profiles.hpp"
#include "mcmix/subsets.hpp"

namespace mcmix {

/// Threshold set A_u = { y : Q(A,y) >= u pi(y) }.
Subset threshold_set(const MarkovChain& chain, const Subset& a, double u);

/// pi(A_u) as an exact step function of u. Interval i is (hi[i-1], hi[i]]
/// (with hi[-1] = 0) and carries constant measure[i]; hi.back() == 1.
/// Breakpoints are the distinct positive ratios Q(A,y)/pi(y).
struct ThresholdCurve {
  std::vector<double> hi;
  std::vector<double> measure;

  double integral() const;       // = pi(A), exactly up to rounding
  double root_integral() const;  // integral of sqrt(m(u)(1-m(u)))
};

ThresholdCurve threshold_curve(const MarkovChain& chain, const Subset& a);

/// Evolving-set root profile of one set:
///   1 - integral_0^1 sqrt(pi(A_u)(1-pi(A_u))) du / sqrt(pi(A)(1-pi(A))).
/// Lies in [0,1]; requires A proper and nonempty.
double root_profile(const MarkovChain& chain, const Subset& a);

/// Same, from a precomputed Q(A,.) column (used by profile enumeration).
double root_profile_from_ratios(const MarkovChain& chain, const Subset& a,
                                const std::vector<double>& q_to);

/// Running infimum of root_profile over pi(A) <= s (the tightest function
/// the mixing theorem admits). Exchangeable chains bypass the cap.
StepProfile root_profile_curve(const MarkovChain& chain, int cap = kEnumerationCap);

/// TSV export of a threshold curve: "u_hi<TAB>measure" rows.
std::string threshold_curve_tsv(const ThresholdCurve& curve);

}  // namespace mcmix
