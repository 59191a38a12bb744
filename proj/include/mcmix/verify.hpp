#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcmix/chain.hpp"
#include "mcmix/subsets.hpp"

namespace mcmix {

struct Violation {
  std::string check;
  std::string chain_id;
  std::string detail;  // subset bits, r, pair, ...
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AuditOptions {
  int cap = kEnumerationCap;
  long max_steps = 20000;
  std::vector<double> eps_grid = {0.5, 0.25};
  bool check_soundness = true;
  /// Perturbs the root profile by -0.2 inside the audit, as a self-test
  /// that the auditor actually detects false lemmas.
  bool inject_fault = false;
};

struct AuditResult {
  std::vector<Violation> violations;
  /// Empirical observations that are reported but are not correctness
  /// failures (quantities the source material does not guarantee).
  std::vector<Violation> observations;
  long checks = 0;
  long profile_equality_gaps = 0;   // strict gaps phi^r(s) > Phi_r(s)
  double max_profile_gap = 0.0;

  void merge(AuditResult other);
};

/// Exhaustive per-chain audit: flow identities, evolving-set identities,
/// every lemma inequality over all proper subsets and r grids, congestion
/// identities of the breadth-first family, and (optionally) soundness of
/// every applicable bound against the empirical mixing time from every
/// start state.
AuditResult audit_chain(const MarkovChain& chain, const std::string& chain_id,
                        const AuditOptions& opt = {});

/// sqrt(XY) + sqrt((1-X)(1-Y)) <= sqrt(1 - (X-Y)^2) on a 101 x 101 grid.
AuditResult inequality_grid_audit();

/// Named example chains exercised by every fleet run.
std::vector<std::pair<std::string, MarkovChain>> builtin_examples();

/// Builtin examples plus `count` seeded random chains with 2..max_n states.
AuditResult run_fleet(std::uint64_t seed, int count, int max_n,
                      const AuditOptions& opt = {});

std::string render_audit(const AuditResult& result);

}  // namespace mcmix
