#include "mcmix/profiles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "mcmix/evolving.hpp"

namespace mcmix {

namespace {

void require_r_range(double r, double lo) {
  if (!(r >= lo) || !(r <= 1.0))
    throw Error(ErrorKind::Usage, "r must lie in [" + std::to_string(lo) + ",1]");
}

void require_proper(const MarkovChain& chain, const Subset& a) {
  if (a.bits == 0 || a.bits == full_mask(chain.states()))
    throw Error(ErrorKind::Usage, "subset must be proper and nonempty");
}

// Q_r(A, A^c) and Q_r(A^c, A) from the tabulated Q(A, .) column, using
// Q(A^c, y) = pi(y) - Q(A, y).
struct DirectedFlows {
  double out;  // Q_r(A, A^c)
  double in;   // Q_r(A^c, A)
};

DirectedFlows directed_flows(const MarkovChain& chain, const Subset& a,
                             const std::vector<double>& q_to, double r) {
  DirectedFlows f{0.0, 0.0};
  for (int y = 0; y < chain.states(); ++y) {
    double piy = chain.pi(y);
    if (a.contains(y))
      f.in += std::min(piy - q_to[y], r * piy);
    else
      f.out += std::min(q_to[y], r * piy);
  }
  return f;
}

double modified_flow_from(const MarkovChain& chain, const Subset& a,
                          const std::vector<double>& q_to, double r,
                          bool complement) {
  // Psi_r(A) = Q_r(A,V) - r pi(A). Since pi(A) = sum_y Q(A,y), this is
  // sum_y min{(1-r) Q(A,y), r (pi(y) - Q(A,y))}: a sum of non-negative
  // terms, which keeps exact zeros exact (the naive difference leaves
  // cancellation dust that integration then amplifies).
  (void)a;
  double total = 0.0;
  for (int y = 0; y < chain.states(); ++y) {
    double piy = chain.pi(y);
    double q = complement ? piy - q_to[y] : q_to[y];
    total += std::max(0.0, std::min((1.0 - r) * q, r * (piy - q)));
  }
  return total;
}

}  // namespace

SubsetFlows subset_flows(const MarkovChain& chain, const Subset& a) {
  int n = chain.states();
  SubsetFlows f;
  f.measure = a.measure;
  f.q_to.assign(n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (!a.contains(x)) continue;
    double pix = chain.pi(x);
    auto row = chain.row(x);
    for (int y = 0; y < n; ++y) f.q_to[y] += pix * row[y];
  }
  return f;
}

double ergodic_flow(const MarkovChain& chain, const Subset& a, const Subset& b) {
  double q = 0.0;
  for (int x = 0; x < chain.states(); ++x) {
    if (!a.contains(x)) continue;
    double pix = chain.pi(x);
    auto row = chain.row(x);
    for (int y = 0; y < chain.states(); ++y)
      if (b.contains(y)) q += pix * row[y];
  }
  return q;
}

double r_ergodic_flow(const MarkovChain& chain, const Subset& a, const Subset& b,
                      double r) {
  require_r_range(r, 0.0);
  auto flows = subset_flows(chain, a);
  double q = 0.0;
  for (int y = 0; y < chain.states(); ++y)
    if (b.contains(y)) q += std::min(flows.q_to[y], r * chain.pi(y));
  return q;
}

double r_flow_min(const MarkovChain& chain, const Subset& a, double r) {
  require_r_range(r, 0.0);
  require_proper(chain, a);
  auto flows = subset_flows(chain, a);
  auto f = directed_flows(chain, a, flows.q_to, r);
  return std::min(f.out, f.in);
}

double r_conductance(const MarkovChain& chain, const Subset& a, double r) {
  return r_flow_min(chain, a, r) / (a.measure * (1.0 - a.measure));
}

double conductance(const MarkovChain& chain, const Subset& a) {
  require_proper(chain, a);
  auto b = complement_subset(chain, a);
  return ergodic_flow(chain, a, b) / std::min(a.measure, b.measure);
}

double modified_flow(const MarkovChain& chain, const Subset& a, double r) {
  require_r_range(r, 1e-300);  // (0, 1]
  auto flows = subset_flows(chain, a);
  return modified_flow_from(chain, a, flows.q_to, r, false);
}

double modified_conductance(const MarkovChain& chain, const Subset& a, double r) {
  require_r_range(r, 1e-300);
  require_proper(chain, a);
  auto flows = subset_flows(chain, a);
  double psi_a = modified_flow_from(chain, a, flows.q_to, r, false);
  double psi_c = modified_flow_from(chain, a, flows.q_to, r, true);
  return std::max(psi_a, psi_c) / (a.measure * (1.0 - a.measure));
}

StepProfile::StepProfile(std::vector<Step> steps, std::string quantity, double r)
    : steps_(std::move(steps)), quantity_(std::move(quantity)), r_(r) {
  for (size_t i = 0; i + 1 < steps_.size(); ++i) {
    if (!(steps_[i].s < steps_[i + 1].s))
      throw Error(ErrorKind::Validation, "profile breakpoints must increase");
    if (steps_[i + 1].value > steps_[i].value + 1e-15)
      throw Error(ErrorKind::Validation, "profile values must be non-increasing");
  }
}

double StepProfile::value_at(double s) const {
  if (steps_.empty() || s < steps_.front().s - 1e-15)
    return std::numeric_limits<double>::infinity();
  size_t lo = 0, hi = steps_.size();
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (steps_[mid].s <= s + 1e-15)
      lo = mid;
    else
      hi = mid;
  }
  return steps_[lo].value;
}

namespace {

double profile_value(const MarkovChain& chain, ProfileKind kind, double r,
                     const Subset& a, const std::vector<double>& q_to) {
  switch (kind) {
    case ProfileKind::RConductance: {
      auto f = directed_flows(chain, a, q_to, r);
      return std::min(f.out, f.in) / (a.measure * (1.0 - a.measure));
    }
    case ProfileKind::RModifiedConductance: {
      double psi_a = modified_flow_from(chain, a, q_to, r, false);
      double psi_c = modified_flow_from(chain, a, q_to, r, true);
      return std::max(psi_a, psi_c) / (a.measure * (1.0 - a.measure));
    }
    case ProfileKind::Conductance: {
      double out = 0.0;
      for (int y = 0; y < chain.states(); ++y)
        if (!a.contains(y)) out += q_to[y];
      return out / std::min(a.measure, 1.0 - a.measure);
    }
    case ProfileKind::RootProfile:
      return root_profile_from_ratios(chain, a, q_to);
  }
  throw Error(ErrorKind::Usage, "unknown profile kind");
}

std::string profile_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::RConductance: return "r-conductance";
    case ProfileKind::RModifiedConductance: return "r-modified-conductance";
    case ProfileKind::Conductance: return "conductance";
    case ProfileKind::RootProfile: return "root-profile";
  }
  return "?";
}

StepProfile finish_profile(std::vector<std::pair<double, double>> pts,
                           ProfileKind kind, double r) {
  std::sort(pts.begin(), pts.end());
  std::vector<StepProfile::Step> steps;
  double running = std::numeric_limits<double>::infinity();
  for (const auto& [s, v] : pts) {
    running = std::min(running, v);
    if (!steps.empty() && s - steps.back().s <= 1e-14) {
      steps.back().value = running;
    } else if (steps.empty() || running < steps.back().value) {
      steps.push_back({s, running});
    }
  }
  return StepProfile(std::move(steps), profile_name(kind), r);
}

}  // namespace

StepProfile build_profile(const MarkovChain& chain, ProfileKind kind, double r,
                          int cap) {
  if (kind != ProfileKind::Conductance && kind != ProfileKind::RootProfile)
    require_r_range(r, kind == ProfileKind::RModifiedConductance ? 1e-300 : 0.0);
  int n = chain.states();
  std::vector<std::pair<double, double>> pts;

  if (is_exchangeable(chain)) {
    // All subsets of equal size are equivalent; one representative each.
    for (int k = 1; 2 * k <= n; ++k) {
      Subset a = make_subset(chain, (1ull << k) - 1);
      auto flows = subset_flows(chain, a);
      pts.emplace_back(a.measure, profile_value(chain, kind, r, a, flows.q_to));
    }
    return finish_profile(std::move(pts), kind, r);
  }

  require_enumerable(chain, cap);
  std::uint64_t total = 1ull << n;
  std::vector<double> q_to(n, 0.0);
  std::uint64_t prev = 0;
  double measure = 0.0;
  for (std::uint64_t k = 1; k < total; ++k) {
    std::uint64_t gray = k ^ (k >> 1);
    std::uint64_t diff = gray ^ prev;
    int x = std::countr_zero(diff);
    double sign = (gray & diff) ? 1.0 : -1.0;
    double pix = chain.pi(x);
    auto row = chain.row(x);
    for (int y = 0; y < n; ++y) q_to[y] += sign * pix * row[y];
    measure += sign * pix;
    prev = gray;
    if (gray == full_mask(n) || measure > 0.5 + tol::kIdentity) continue;
    Subset a{gray, measure};
    pts.emplace_back(measure, profile_value(chain, kind, r, a, q_to));
  }
  return finish_profile(std::move(pts), kind, r);
}

std::string profile_tsv(const StepProfile& profile) {
  char buf[80];
  std::string out = "# quantity=" + profile.quantity();
  std::snprintf(buf, sizeof(buf), " r=%.17g\n", profile.r());
  out += buf;
  out += "s_hi\tvalue\n";
  for (const auto& step : profile.steps()) {
    std::snprintf(buf, sizeof(buf), "%.17g\t%.17g\n", step.s, step.value);
    out += buf;
  }
  return out;
}

}  // namespace mcmix
