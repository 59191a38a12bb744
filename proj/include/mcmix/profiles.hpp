#pragma once

#include <string>
#include <vector>

#include "mcmix/chain.hpp"
#include "mcmix/subsets.hpp"

namespace mcmix {

/// Ergodic flow Q(A,B) = sum_{x in A, y in B} pi(x) P(x,y).
double ergodic_flow(const MarkovChain& chain, const Subset& a, const Subset& b);

/// r-ergodic flow Q_r(A,B) = sum_{y in B} pi(y) min{ Q(A,y)/pi(y), r }.
/// r must lie in [0,1]; at r = 1 this equals Q(A,B).
double r_ergodic_flow(const MarkovChain& chain, const Subset& a, const Subset& b,
                      double r);

/// Q_r(A) = min{ Q_r(A, A^c), Q_r(A^c, A) }. A must be proper and nonempty.
double r_flow_min(const MarkovChain& chain, const Subset& a, double r);

/// r-conductance  Q_r(A) / (pi(A) pi(A^c)).
double r_conductance(const MarkovChain& chain, const Subset& a, double r);

/// Classic conductance Q(A,A^c) / min{pi(A), pi(A^c)}.
double conductance(const MarkovChain& chain, const Subset& a);

/// r-modified ergodic flow  Psi_r(A) = Q_r(A,V) - r pi(A), r in (0,1].
/// Always >= 0 and <= Q_r(A,A^c); equality when r <= alpha.
double modified_flow(const MarkovChain& chain, const Subset& a, double r);

/// r-modified conductance  max{Psi_r(A), Psi_r(A^c)} / (pi(A) pi(A^c)).
double modified_conductance(const MarkovChain& chain, const Subset& a, double r);

enum class ProfileKind {
  RConductance,          // infimum of r-conductance over pi(A) <= s
  RModifiedConductance,  // infimum of r-modified conductance
  Conductance,           // infimum of classic conductance
  RootProfile,           // infimum of the evolving-set root profile
};

/// Non-increasing step function of the set measure s, produced as a running
/// infimum over subsets with 0 < pi(A) <= 1/2. value_at(s) returns the value
/// of the largest breakpoint <= s; below the first breakpoint no subset
/// qualifies and the value is +infinity. Breakpoints never exceed 1/2, so
/// past the last one the function continues constantly — exactly the rule
/// that extends each profile by its value at 1/2.
class StepProfile {
public:
  struct Step {
    double s;      // measure breakpoint
    double value;  // profile value for s' in [s, next breakpoint)
  };

  StepProfile(std::vector<Step> steps, std::string quantity, double r);

  double value_at(double s) const;
  const std::vector<Step>& steps() const { return steps_; }
  const std::string& quantity() const { return quantity_; }
  double r() const { return r_; }

private:
  std::vector<Step> steps_;
  std::string quantity_;
  double r_;
};

/// Build a profile by exhaustive subset enumeration (Gray-code updates).
/// Exchangeable chains take an exact orbit shortcut (one representative per
/// subset size) and may exceed the cap; all other chains require
/// states <= cap.
StepProfile build_profile(const MarkovChain& chain, ProfileKind kind, double r,
                          int cap = kEnumerationCap);

/// TSV rendering: a header naming the quantity and r, then one
/// "s_hi<TAB>value" row per step.
std::string profile_tsv(const StepProfile& profile);

/// Per-subset quantities used by the audits; Q(A, y) tabulated once.
struct SubsetFlows {
  std::vector<double> q_to;  // Q(A, y) for each y
  double measure = 0.0;

  double ratio(const MarkovChain& chain, int y) const {
    return q_to[y] / chain.pi(y);
  }
};
SubsetFlows subset_flows(const MarkovChain& chain, const Subset& a);

}  // namespace mcmix
