#include "mcmix/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double apply_denom(Denom denom, double r, double g) {
  switch (denom) {
    case Denom::Value: return g;
    case Denom::Square: return g * g;
    case Denom::MinSquareTimesR: return std::min(g * g, r * g);
  }
  return 0.0;
}

double log_factor(double eps, double mass) {
  // log(1/(eps sqrt(mass))), floored at 0 for already-mixed starts.
  return std::max(0.0, -std::log(eps * std::sqrt(mass)));
}

}  // namespace

long Bound::ceiled() const {
  if (kind != Kind::Finite)
    throw Error(ErrorKind::Usage, "ceiled() on a non-finite bound");
  return static_cast<long>(std::ceil(std::max(value, 0.0)));
}

double integrate_reciprocal(const StepProfile& profile, Denom denom, double r,
                            double c, double lo, double hi) {
  if (!(lo > 0.0)) throw Error(ErrorKind::Usage, "integral lower limit must be > 0");
  if (hi <= lo) return 0.0;

  double total = 0.0;
  double at = lo;
  const auto& steps = profile.steps();
  size_t next = 0;
  while (next < steps.size() && steps[next].s <= at) ++next;
  while (at < hi) {
    double end = next < steps.size() ? std::min(steps[next].s, hi) : hi;
    double g = profile.value_at(at);
    if (std::isfinite(g)) {
      double t = apply_denom(denom, r, g);
      if (t <= 0.0) return kInf;
      total += c * std::log(end / at) / t;
    }
    // +infinity profile (no qualifying subset yet): zero contribution.
    at = end;
    ++next;
  }
  return total;
}

Bound small_holding_bound(const MarkovChain& chain, int x, double eps, double r,
                          const StepProfile& r_conductance_profile) {
  if (!(r > 0.0) || r > 1.0)
    throw Error(ErrorKind::Usage, "r must lie in (0,1]");
  if (r > chain.alpha())
    return Bound::not_applicable("requires r <= alpha");
  double lo = 4.0 * chain.pi(x), hi = 4.0 / (eps * eps);
  if (lo >= hi) return Bound::finite(0.0);
  double c = 4.0 * std::min(r, 1.0 - r);
  double integral =
      integrate_reciprocal(r_conductance_profile, Denom::Square, r, c, lo, hi);
  if (!std::isfinite(integral)) return Bound::infinite();
  return Bound::finite(static_cast<double>(
      static_cast<long>(std::ceil(integral))));
}

Bound no_holding_bound(const MarkovChain& chain, int x, double eps, double r,
                       const StepProfile& modified_profile) {
  if (!(r > 0.0) || r > 1.0)
    throw Error(ErrorKind::Usage, "r must lie in (0,1]");
  double lo = 4.0 * chain.pi(x), hi = 4.0 / (eps * eps);
  if (lo >= hi) return Bound::finite(0.0);
  double integral = integrate_reciprocal(modified_profile, Denom::MinSquareTimesR,
                                         r, 12.0 * r, lo, hi);
  if (!std::isfinite(integral)) return Bound::infinite();
  return Bound::finite(static_cast<double>(
      static_cast<long>(std::ceil(integral))));
}

Bound evolving_bound(const MarkovChain& chain, int x, double eps, bool sharper,
                     const StepProfile& root_profile) {
  double lo = sharper ? chain.pi(x) : 4.0 * chain.pi(x);
  double hi = sharper ? 1.0 / (eps * eps) : 4.0 / (eps * eps);
  if (lo >= hi) return Bound::finite(0.0);
  double c = sharper ? 0.5 : 1.0;
  double integral = integrate_reciprocal(root_profile, Denom::Value, 0.0, c, lo, hi);
  if (!std::isfinite(integral)) return Bound::infinite();
  return Bound::finite(static_cast<double>(
      static_cast<long>(std::ceil(integral))));
}

HoldingPathBounds holding_path_bounds(const MarkovChain& chain, int x, double eps,
                                      const PathStats& stats) {
  HoldingPathBounds out;
  double alpha = chain.alpha();
  if (!(alpha > 0.0)) {
    out.first = Bound::not_applicable("requires alpha > 0");
    out.second = Bound::not_applicable("requires alpha > 0");
    return out;
  }
  double rho_v = stats.vertex_congestion;
  double rho_e = stats.edge_congestion;
  double factor = 4.0 * rho_v * std::max(rho_v / alpha, rho_e);
  out.first = Bound::finite(factor * log_factor(eps, chain.pi(x)));

  if (eps > std::sqrt(2.0)) {
    out.second = Bound::not_applicable("requires eps <= sqrt(2)");
    return out;
  }
  double pi0 = *std::min_element(chain.stationary().begin(), chain.stationary().end());
  double lead = (rho_v * rho_v - 1.0) / std::min(alpha, stats.boundary_prob);
  out.second =
      Bound::finite(std::max(lead, 0.0) + factor * log_factor(eps, pi0 * rho_v));
  return out;
}

Bound alternating_path_bound(const MarkovChain& chain, int x, double eps,
                             const AltStats& stats, double delta0_value) {
  (void)chain;
  (void)x;  // the bound does not depend on the start state
  if (eps > 1.0) throw Error(ErrorKind::Usage, "requires eps <= 1");
  double rho = stats.vertex_congestion;
  double value = 40.0 * rho * rho / stats.reversed_boundary *
                 log_factor(eps, delta0_value * rho);
  return Bound::finite(static_cast<double>(
      static_cast<long>(std::ceil(std::max(value, 0.0)))));
}

Bound poincare_baseline(PoincareBaseline kind, double alpha, double rho_e,
                        double ell, double eps, double pi_x) {
  double L = log_factor(eps, pi_x);
  switch (kind) {
    case PoincareBaseline::Holding:
      if (!(alpha > 0.0)) return Bound::infinite();
      return Bound::finite(rho_e / (2.0 * alpha) * std::min(4.0 * rho_e, ell) * L);
    case PoincareBaseline::OddPaths:
      return Bound::finite(2.0 * rho_e * ell * L);
    case PoincareBaseline::ProductChain:
      return Bound::finite(2.0 * rho_e * std::min(rho_e, ell) * L);
  }
  throw Error(ErrorKind::Usage, "unknown baseline");
}

}  // namespace mcmix
