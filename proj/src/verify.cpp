#include "mcmix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "mcmix/bounds.hpp"
#include "mcmix/evolving.hpp"
#include "mcmix/generators.hpp"
#include "mcmix/paths.hpp"
#include "mcmix/profiles.hpp"

namespace mcmix {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Auditor {
  const MarkovChain& chain;
  const std::string& id;
  const AuditOptions& opt;
  AuditResult out;

  void require(bool ok, const std::string& check, const std::string& detail,
               double lhs, double rhs) {
    ++out.checks;
    if (!ok) out.violations.push_back({check, id, detail, lhs, rhs});
  }

  void observe(bool ok, const std::string& check, const std::string& detail,
               double lhs, double rhs) {
    ++out.checks;
    if (!ok) out.observations.push_back({check, id, detail, lhs, rhs});
  }

  double psi(const Subset& a) {
    double v = root_profile(chain, a);
    return opt.inject_fault ? v - 0.2 : v;
  }

  std::string subset_tag(const Subset& a, double r = -1.0) {
    std::string s = "A=0x";
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%llx",
                  static_cast<unsigned long long>(a.bits));
    s += buf;
    if (r >= 0.0) s += " r=" + fmt(r);
    return s;
  }

  void flow_and_evolving_checks() {
    int n = chain.states();
    double alpha = chain.alpha();
    std::vector<double> psi_grid = {0.25, 0.5, 0.75, 1.0};
    std::vector<double> small_grid;
    double rmax = std::min(alpha, 0.5);
    if (rmax > 0.0) small_grid = {rmax, rmax / 2.0, rmax / 4.0};

    std::uint64_t full = full_mask(n);
    for (std::uint64_t bits = 1; bits < full; ++bits) {
      Subset a = make_subset(chain, bits);
      Subset ac = complement_subset(chain, a);

      // Threshold-curve identities.
      auto curve = threshold_curve(chain, a);
      require(std::fabs(curve.integral() - a.measure) <= tol::kIdentity,
              "evolving-integral", subset_tag(a), curve.integral(), a.measure);
      for (size_t i = 0; i + 1 < curve.measure.size(); ++i)
        require(curve.measure[i + 1] <= curve.measure[i] + 1e-15,
                "evolving-monotone", subset_tag(a), curve.measure[i + 1],
                curve.measure[i]);

      double psi_a = psi(a);
      require(psi_a >= -tol::kIdentity && psi_a <= 1.0 + tol::kIdentity,
              "root-profile-range", subset_tag(a), psi_a, 0.0);
      require(std::fabs(psi_a - psi(ac)) <= tol::kIdentity,
              "root-profile-complement", subset_tag(a), psi_a, psi(ac));

      // Modified-flow identities over an r sweep.
      for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
        double psi_r = modified_flow(chain, a, r);
        double out_r = r_ergodic_flow(chain, a, ac, r);
        require(psi_r >= -tol::kIdentity, "modified-flow-nonnegative",
                subset_tag(a, r), psi_r, 0.0);
        require(psi_r <= out_r + tol::kIdentity, "modified-le-plain",
                subset_tag(a, r), psi_r, out_r);
        if (r <= alpha)
          require(std::fabs(psi_r - out_r) <= tol::kIdentity,
                  "modified-equals-plain", subset_tag(a, r), psi_r, out_r);
        if (r >= 1.0 - alpha) {
          double qr = r_flow_min(chain, a, r);
          double q = ergodic_flow(chain, a, ac);
          require(std::fabs(qr - q) <= tol::kIdentity, "laziness-identity",
                  subset_tag(a, r), qr, q);
        }
        double cond = r_conductance(chain, a, r);
        require(cond <= 2.0 * r + tol::kIdentity, "conductance-cap",
                subset_tag(a, r), cond, 2.0 * r);
        require(std::fabs(modified_conductance(chain, a, r) -
                          modified_conductance(chain, ac, r)) <= tol::kIdentity,
                "modified-conductance-complement", subset_tag(a, r),
                modified_conductance(chain, a, r),
                modified_conductance(chain, ac, r));
      }

      // Root-profile lemma, r <= min{alpha, 1/2}.
      for (double r : small_grid) {
        double phi = r_conductance(chain, a, r);
        double inner = std::max(0.0, 1.0 - phi * phi / (4.0 * r * r));
        double sharp = 2.0 * r * (1.0 - std::sqrt(inner));
        double weak = phi * phi / (4.0 * r);
        require(psi_a >= sharp - tol::kLemma, "root-profile-lemma-sharp",
                subset_tag(a, r), psi_a, sharp);
        require(psi_a >= weak - tol::kLemma, "root-profile-lemma", subset_tag(a, r),
                psi_a, weak);
      }

      // Modified lemma, any r in (0,1].
      for (double r : psi_grid) {
        double phi = modified_conductance(chain, a, r);
        double rhs = std::min(phi * phi, r * phi) / (12.0 * r);
        require(psi_a >= rhs - tol::kLemma, "modified-root-lemma", subset_tag(a, r),
                psi_a, rhs);
      }
    }

    // Profile domination for r <= min{alpha, 1/2}: phi^r(s) >= Phi_r(s),
    // recording strict gaps (equality is not asserted).
    for (double r : small_grid) {
      auto flow_profile = build_profile(chain, ProfileKind::RConductance, r, opt.cap);
      auto mod_profile =
          build_profile(chain, ProfileKind::RModifiedConductance, r, opt.cap);
      for (const auto& step : flow_profile.steps()) {
        double lo_v = flow_profile.value_at(step.s);
        double hi_v = mod_profile.value_at(step.s);
        require(hi_v >= lo_v - tol::kIdentity, "profile-domination",
                "s=" + fmt(step.s) + " r=" + fmt(r), hi_v, lo_v);
        if (hi_v > lo_v + tol::kIdentity) {
          ++out.profile_equality_gaps;
          out.max_profile_gap = std::max(out.max_profile_gap, hi_v - lo_v);
        }
      }
    }
  }

  void family_checks() {
    int n = chain.states();
    double alpha = chain.alpha();
    PathFamily family = remove_cycles(bfs_paths(chain));
    auto stats = path_stats(chain, family);

    // Averages identity (cycle-free family).
    double pi_norm2 = 0.0;
    for (int v = 0; v < n; ++v) pi_norm2 += chain.pi(v) * chain.pi(v);
    require(std::fabs(stats.avg_vertex_congestion -
                      stats.avg_len * (1.0 - pi_norm2)) <= tol::kIdentity,
            "averages-identity", "", stats.avg_vertex_congestion,
            stats.avg_len * (1.0 - pi_norm2));

    // Congestion comparisons; the second is exact only in restricted
    // settings, so it is reported as an observation.
    if (alpha > 0.0)
      require(stats.vertex_congestion <=
                  stats.edge_congestion * (1.0 - alpha) + tol::kIdentity,
              "vertex-le-edge-congestion", "", stats.vertex_congestion,
              stats.edge_congestion * (1.0 - alpha));
    observe(stats.edge_congestion <=
                stats.vertex_congestion / stats.boundary_prob + tol::kIdentity,
            "edge-le-vertex-over-p0", "", stats.edge_congestion,
            stats.vertex_congestion / stats.boundary_prob);

    // Path lemma: Phi_{rho_v/rho_e}(A) >= 1/rho_e.
    double r_path = std::min(1.0, stats.vertex_congestion / stats.edge_congestion);
    std::uint64_t full = full_mask(n);
    for (std::uint64_t bits = 1; bits < full; ++bits) {
      Subset a = make_subset(chain, bits);
      require(r_conductance(chain, a, r_path) >=
                  1.0 / stats.edge_congestion - tol::kLemma,
              "path-conductance-lemma", subset_tag(a, r_path),
              r_conductance(chain, a, r_path), 1.0 / stats.edge_congestion);
    }

    // Alternating families: constructed, and derived when alpha > 0.
    std::optional<AltPathFamily> built;
    try {
      built = alternating_paths(chain);
    } catch (const Error&) {
      // Construction failure is legitimate (e.g. periodic chains).
    }
    std::vector<std::pair<std::string, AltPathFamily>> alts;
    if (built) alts.emplace_back("built", std::move(*built));
    if (alpha > 0.0) {
      auto derived = alternating_from_plain(chain, family);
      auto astats = alt_stats(chain, derived);
      // rho_v_dot via the 1 + max formula, dual evaluation.
      std::vector<double> load(n, 0.0);
      std::vector<char> mark(n, 0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x == y) continue;
          double w = chain.pi(x) * chain.pi(y);
          std::vector<int> touched;
          for (int v : family.at(x, y))
            if (!mark[v]) {
              mark[v] = 1;
              touched.push_back(v);
              if (v != x) load[v] += w;
            }
          for (int v : touched) mark[v] = 0;
        }
      double directed = 0.0;
      for (int v = 0; v < n; ++v) directed = std::max(directed, load[v] / chain.pi(v));
      require(std::fabs(astats.vertex_congestion - (1.0 + directed)) <=
                  tol::kIdentity,
              "derived-rho-dual", "", astats.vertex_congestion, 1.0 + directed);
      if (is_uniform_pi(chain))
        require(std::fabs(astats.reversed_boundary -
                          std::min(alpha, stats.boundary_prob)) <= tol::kIdentity,
                "derived-p0-star", "", astats.reversed_boundary,
                std::min(alpha, stats.boundary_prob));
      alts.emplace_back("derived", std::move(derived));
    }

    for (auto& [kind, alt] : alts) {
      auto astats = alt_stats(chain, alt);
      require(astats.vertex_congestion >= 1.0 - tol::kIdentity, "alt-rho-at-least-1",
              kind, astats.vertex_congestion, 1.0);
      double p0s = astats.reversed_boundary;
      for (std::uint64_t bits = 1; bits < full; ++bits) {
        Subset a = make_subset(chain, bits);
        require(modified_conductance(chain, a, p0s) >=
                    p0s / (2.0 * astats.vertex_congestion) - tol::kLemma,
                "alt-path-lemma", kind + " " + subset_tag(a, p0s),
                modified_conductance(chain, a, p0s),
                p0s / (2.0 * astats.vertex_congestion));
      }
    }

    if (opt.check_soundness) soundness_checks(family, stats, alts);
  }

  void soundness_checks(const PathFamily& family, const PathStats& stats,
                        std::vector<std::pair<std::string, AltPathFamily>>& alts) {
    (void)family;
    int n = chain.states();
    double alpha = chain.alpha();

    std::vector<double> r_small;
    if (alpha > 0.0) r_small = {alpha, alpha / 2.0, alpha / 4.0};
    std::vector<double> r_no = {0.25, 0.5, 0.75, 1.0};

    std::vector<std::pair<double, StepProfile>> small_profiles, no_profiles;
    for (double r : r_small)
      small_profiles.emplace_back(
          r, build_profile(chain, ProfileKind::RConductance, r, opt.cap));
    for (double r : r_no)
      no_profiles.emplace_back(
          r, build_profile(chain, ProfileKind::RModifiedConductance, r, opt.cap));
    auto root = root_profile_curve(chain, opt.cap);
    double d0 = delta0(chain, opt.cap);

    for (double eps : opt.eps_grid) {
      for (int x = 0; x < n; ++x) {
        auto tau = empirical_mixing_time(chain, x, eps, opt.max_steps);
        if (!tau.reached) continue;
        auto sound = [&](const std::string& check, const Bound& b) {
          if (!b.is_finite()) {
            ++out.checks;
            return;
          }
          require(b.ceiled() >= tau.steps, check,
                  "x=" + std::to_string(x) + " eps=" + fmt(eps),
                  static_cast<double>(b.ceiled()), static_cast<double>(tau.steps));
        };
        for (auto& [r, profile] : small_profiles)
          sound("soundness-small-holding",
                small_holding_bound(chain, x, eps, r, profile));
        for (auto& [r, profile] : no_profiles)
          sound("soundness-no-holding", no_holding_bound(chain, x, eps, r, profile));
        sound("soundness-evolving", evolving_bound(chain, x, eps, false, root));
        auto hp = holding_path_bounds(chain, x, eps, stats);
        sound("soundness-paths-holding-1", hp.first);
        sound("soundness-paths-holding-2", hp.second);
        for (auto& [kind, alt] : alts) {
          auto astats = alt_stats(chain, alt);
          if (eps <= 1.0)
            sound("soundness-paths-noholding-" + kind,
                  alternating_path_bound(chain, x, eps, astats, d0));
        }
      }
    }
  }
};

}  // namespace

void AuditResult::merge(AuditResult other) {
  violations.insert(violations.end(),
                    std::make_move_iterator(other.violations.begin()),
                    std::make_move_iterator(other.violations.end()));
  observations.insert(observations.end(),
                      std::make_move_iterator(other.observations.begin()),
                      std::make_move_iterator(other.observations.end()));
  checks += other.checks;
  profile_equality_gaps += other.profile_equality_gaps;
  max_profile_gap = std::max(max_profile_gap, other.max_profile_gap);
}

AuditResult audit_chain(const MarkovChain& chain, const std::string& chain_id,
                        const AuditOptions& opt) {
  require_enumerable(chain, opt.cap);
  Auditor auditor{chain, chain_id, opt, {}};
  auditor.flow_and_evolving_checks();
  auditor.family_checks();
  return std::move(auditor.out);
}

AuditResult inequality_grid_audit() {
  AuditResult out;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      double x = i / 100.0, y = j / 100.0;
      double lhs = std::sqrt(x * y) + std::sqrt((1.0 - x) * (1.0 - y));
      double rhs = std::sqrt(1.0 - (x - y) * (x - y));
      ++out.checks;
      if (lhs > rhs + tol::kIdentity)
        out.violations.push_back({"sqrt-inequality-lemma", "grid",
                                  "X=" + fmt(x) + " Y=" + fmt(y), lhs, rhs});
    }
  return out;
}

std::vector<std::pair<std::string, MarkovChain>> builtin_examples() {
  std::vector<std::pair<std::string, MarkovChain>> out;
  out.emplace_back("cycle-3-a0.5", cycle_walk(3, 0.5));
  out.emplace_back("cycle-4-a0.25", cycle_walk(4, 0.25));
  out.emplace_back("cycle-5-a0.5", cycle_walk(5, 0.5));
  out.emplace_back("cycle-5-a0.25", cycle_walk(5, 0.25));
  out.emplace_back("complete-2", complete_graph_walk(2));
  out.emplace_back("complete-4", complete_graph_walk(4));
  out.emplace_back("complete-8", complete_graph_walk(8));
  out.emplace_back("rotation-3", cycle_walk(3, 0.0));
  out.emplace_back("rotation-4", cycle_walk(4, 0.0));
  out.emplace_back("flip",
                   MarkovChain::from_matrix(2, {0.0, 1.0, 1.0, 0.0}));
  out.emplace_back("rows-equal-pi-4",
                   rows_equal_pi_chain({0.4, 0.3, 0.2, 0.1}));
  out.emplace_back("two-state-asym",
                   MarkovChain::from_matrix(2, {0.75, 0.25, 0.5, 0.5}));
  out.emplace_back("lazy-path-3",
                   MarkovChain::from_matrix(
                       3, {0.5, 0.5, 0.0, 0.25, 0.5, 0.25, 0.0, 0.5, 0.5}));
  {
    EdgeMultiset triangle;
    triangle.vertices = 3;
    triangle.count.assign(9, 0);
    for (int v = 0; v < 3; ++v)
      for (int w = 0; w < 3; ++w)
        triangle.count[static_cast<size_t>(v) * 3 + w] = 1;
    out.emplace_back("eulerian-triangle-loops", eulerian_walk(triangle, 3));
  }
  {
    auto s3 = GroupPresentation::symmetric(3);
    s3.use_generators({"id", "(12)", "(123)"}, {});
    out.emplace_back("cayley-s3", cayley_walk(s3));
  }
  return out;
}

AuditResult run_fleet(std::uint64_t seed, int count, int max_n,
                      const AuditOptions& opt) {
  AuditResult out = inequality_grid_audit();
  for (const auto& [name, chain] : builtin_examples())
    out.merge(audit_chain(chain, name, opt));

  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    RandomChainOptions rco;
    rco.force_holding = (i % 2 == 0);
    MarkovChain chain = random_chain(rng, n, rco);
    out.merge(audit_chain(chain, "random-" + std::to_string(i), opt));
  }
  return out;
}

std::string render_audit(const AuditResult& result) {
  std::string out;
  out += "checks run: " + std::to_string(result.checks) + "\n";
  out += "violations: " + std::to_string(result.violations.size()) + "\n";
  for (const auto& v : result.violations)
    out += "  VIOLATION " + v.check + " [" + v.chain_id + "] " + v.detail +
           " lhs=" + fmt(v.lhs) + " rhs=" + fmt(v.rhs) + "\n";
  out += "observations: " + std::to_string(result.observations.size()) + "\n";
  for (const auto& v : result.observations)
    out += "  observation " + v.check + " [" + v.chain_id + "] " + v.detail +
           " lhs=" + fmt(v.lhs) + " rhs=" + fmt(v.rhs) + "\n";
  out += "profile equality gaps: " + std::to_string(result.profile_equality_gaps) +
         " (max " + fmt(result.max_profile_gap) + ")\n";
  return out;
}

}  // namespace mcmix
