#include "mcmix/evolving.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mcmix {

Subset threshold_set(const MarkovChain& chain, const Subset& a, double u) {
  if (u < 0.0 || u > 1.0) throw Error(ErrorKind::Usage, "u must lie in [0,1]");
  auto flows = subset_flows(chain, a);
  std::uint64_t bits = 0;
  for (int y = 0; y < chain.states(); ++y)
    if (flows.q_to[y] >= u * chain.pi(y)) bits |= 1ull << y;
  return make_subset(chain, bits);
}

namespace {

ThresholdCurve curve_from_ratios(const MarkovChain& chain,
                                 const std::vector<double>& q_to) {
  int n = chain.states();
  // (ratio, pi(y)) sorted by ratio; A_u for u in (prev, ratio_k] is the set
  // of states with ratio >= ratio_k.
  std::vector<std::pair<double, double>> by_ratio(n);
  for (int y = 0; y < n; ++y) {
    double ratio = std::clamp(q_to[y] / chain.pi(y), 0.0, 1.0);
    by_ratio[y] = {ratio, chain.pi(y)};
  }
  std::sort(by_ratio.begin(), by_ratio.end());

  // Suffix sums avoid cancellation: the mass of {ratio >= u} is always a
  // plain sum of its members (sqrt amplifies any subtraction dust near 0).
  std::vector<double> suffix(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + by_ratio[i].second;

  ThresholdCurve curve;
  int i = 0;
  while (i < n && by_ratio[i].first <= 0.0) ++i;
  while (i < n) {
    double u = by_ratio[i].first;
    curve.hi.push_back(u);
    // The whole space has measure exactly 1; don't let pi-sum dust through
    // the square root.
    curve.measure.push_back(i == 0 ? 1.0 : suffix[i]);
    while (i < n && by_ratio[i].first == u) ++i;
  }
  if (curve.hi.empty() || curve.hi.back() < 1.0) {
    curve.hi.push_back(1.0);
    curve.measure.push_back(0.0);
  }
  return curve;
}

}  // namespace

double ThresholdCurve::integral() const {
  double acc = 0.0, prev = 0.0;
  for (size_t i = 0; i < hi.size(); ++i) {
    acc += (hi[i] - prev) * measure[i];
    prev = hi[i];
  }
  return acc;
}

double ThresholdCurve::root_integral() const {
  double acc = 0.0, prev = 0.0;
  for (size_t i = 0; i < hi.size(); ++i) {
    double m = measure[i];
    acc += (hi[i] - prev) * std::sqrt(std::max(m * (1.0 - m), 0.0));
    prev = hi[i];
  }
  return acc;
}

ThresholdCurve threshold_curve(const MarkovChain& chain, const Subset& a) {
  auto flows = subset_flows(chain, a);
  return curve_from_ratios(chain, flows.q_to);
}

double root_profile_from_ratios(const MarkovChain& chain, const Subset& a,
                                const std::vector<double>& q_to) {
  if (a.bits == 0 || a.bits == full_mask(chain.states()))
    throw Error(ErrorKind::Usage, "root profile needs a proper nonempty subset");
  auto curve = curve_from_ratios(chain, q_to);
  double denom = std::sqrt(a.measure * (1.0 - a.measure));
  double value = 1.0 - curve.root_integral() / denom;
  // Provably in [0,1]; snap rounding spill.
  if (value < 0.0 && value > -tol::kIdentity) value = 0.0;
  if (value > 1.0 && value < 1.0 + tol::kIdentity) value = 1.0;
  return value;
}

double root_profile(const MarkovChain& chain, const Subset& a) {
  auto flows = subset_flows(chain, a);
  return root_profile_from_ratios(chain, a, flows.q_to);
}

StepProfile root_profile_curve(const MarkovChain& chain, int cap) {
  return build_profile(chain, ProfileKind::RootProfile, 0.0, cap);
}

std::string threshold_curve_tsv(const ThresholdCurve& curve) {
  std::string out = "u_hi\tmeasure\n";
  char buf[80];
  for (size_t i = 0; i < curve.hi.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g\t%.17g\n", curve.hi[i], curve.measure[i]);
    out += buf;
  }
  return out;
}

}  // namespace mcmix
