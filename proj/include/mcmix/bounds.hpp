#pragma once

#include <string>
#include <vector>

#include "mcmix/chain.hpp"
#include "mcmix/paths.hpp"
#include "mcmix/profiles.hpp"

namespace mcmix {

/// Outcome of a single mixing-time bound.
struct Bound {
  enum class Kind { Finite, Infinite, NotApplicable };
  Kind kind = Kind::NotApplicable;
  double value = 0.0;  // real value when finite; ceilings applied by callers
  std::string note;    // reason when not applicable

  static Bound finite(double v) { return {Kind::Finite, v, {}}; }
  static Bound infinite() { return {Kind::Infinite, 0.0, {}}; }
  static Bound not_applicable(std::string why) {
    return {Kind::NotApplicable, 0.0, std::move(why)};
  }
  bool is_finite() const { return kind == Kind::Finite; }
  long ceiled() const;  // ceil(value), >= 0; only valid when finite
};

enum class Denom {
  Value,            // g(s)
  Square,           // g(s)^2
  MinSquareTimesR,  // min{ g(s)^2, r g(s) }
};

/// Exact integral of c / (s * T(g(s))) ds over a step profile: each constant
/// piece contributes c * ln(hi_i/lo_i) / T(g_i). Pieces with T(g) = 0 make
/// the integral infinite; pieces where the profile is +infinity (below the
/// first breakpoint, i.e. no qualifying subset) contribute zero. Requires
/// lo > 0; hi may exceed 1 (profiles extend constantly). Returns +infinity
/// or the finite value; hi <= lo gives 0.
double integrate_reciprocal(const StepProfile& profile, Denom denom, double r,
                            double c, double lo, double hi);

/// ceil( integral_{4 pi(x)}^{4/eps^2} 4 min{r,1-r} ds / (s Phi_r(s)^2) ),
/// valid when r <= alpha; otherwise not applicable. The profile must be the
/// r-conductance profile of this chain at this r.
Bound small_holding_bound(const MarkovChain& chain, int x, double eps, double r,
                          const StepProfile& r_conductance_profile);

/// ceil( integral 12 r ds / (s min{phi^r(s)^2, r phi^r(s)}) ) over the
/// r-modified conductance profile; valid for any r in (0,1].
Bound no_holding_bound(const MarkovChain& chain, int x, double eps, double r,
                       const StepProfile& modified_profile);

/// Evolving-set bound over the root profile. The general form integrates
/// ds/(s psi(s)) from 4 pi(x) to 4/eps^2; the sharper form halves the
/// integrand and integrates from pi(x) to 1/eps^2, and is only valid when
/// s * psi(1/(1+s^2)) is convex — callers must request it explicitly.
Bound evolving_bound(const MarkovChain& chain, int x, double eps, bool sharper,
                     const StepProfile& root_profile);

struct HoldingPathBounds {
  Bound first;   // 4 rho_v max{rho_v/alpha, rho_e} log(1/(eps sqrt(pi_x)))
  Bound second;  // (rho_v^2-1)/min{alpha,P0} + same log factor at pi_0 rho_v
};

/// Both closed-form path bounds for chains with holding probability; real
/// values (ceil at comparison time). Requires a cycle-free family; apply
/// remove_cycles first. alpha = 0 gives not-applicable; eps > sqrt(2)
/// invalidates only the second bound.
HoldingPathBounds holding_path_bounds(const MarkovChain& chain, int x, double eps,
                                      const PathStats& stats);

/// ceil( (40 rho_v_dot^2 / P0*) log(1/(eps sqrt(delta0 rho_v_dot))) ),
/// for an alternating family; requires eps <= 1.
Bound alternating_path_bound(const MarkovChain& chain, int x, double eps,
                             const AltStats& stats, double delta0_value);

enum class PoincareBaseline {
  Holding,       // rho_e/(2 alpha) * min{4 rho_e, ell} * log(...)
  OddPaths,      // 2 rho_e ell log(...)   (odd-length families incl. x->x)
  ProductChain,  // 2 rho_e min{rho_e, ell} log(...)  (P P* path families)
};

/// Prior-work Poincare-style baselines, evaluated from supplied parameters
/// (this toolkit only constructs the inputs for the Holding variant).
Bound poincare_baseline(PoincareBaseline kind, double alpha, double rho_e,
                        double ell, double eps, double pi_x);

}  // namespace mcmix
