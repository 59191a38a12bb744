#include "mcmix/mcmix.h"

#include <cstring>
#include <sstream>
#include <string>

#include "mcmix/chain.hpp"
#include "mcmix/evolving.hpp"
#include "mcmix/generators.hpp"
#include "mcmix/paths.hpp"
#include "mcmix/profiles.hpp"
#include "mcmix/report.hpp"
#include "mcmix/verify.hpp"

struct mcx_chain {
  mcmix::MarkovChain chain;
};

struct mcx_group {
  mcmix::GroupPresentation group;
};

namespace {

thread_local std::string g_last_error;

mcx_status status_of(const mcmix::Error& e) {
  using mcmix::ErrorKind;
  switch (e.kind()) {
    case ErrorKind::Parse: return MCX_ERR_PARSE;
    case ErrorKind::Validation: return MCX_ERR_VALIDATION;
    case ErrorKind::Ergodicity: return MCX_ERR_ERGODICITY;
    case ErrorKind::Cap: return MCX_ERR_CAP;
    case ErrorKind::Construction: return MCX_ERR_CONSTRUCTION;
    case ErrorKind::Usage: return MCX_ERR_USAGE;
  }
  return MCX_ERR_USAGE;
}

template <typename Fn>
mcx_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MCX_OK;
  } catch (const mcmix::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MCX_ERR_USAGE;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_arg(bool ok, const char* what) {
  if (!ok) throw mcmix::Error(mcmix::ErrorKind::Usage, what);
}

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  if (text == nullptr) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> split_doubles(const char* text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(std::stod(item));
  return out;
}

}  // namespace

extern "C" {

const char* mcx_last_error(void) { return g_last_error.c_str(); }

void mcx_string_free(char* s) { delete[] s; }

mcx_status mcx_chain_parse(const char* text, mcx_chain** out) {
  return guarded([&] {
    require_arg(text && out, "null argument");
    *out = new mcx_chain{mcmix::MarkovChain::parse(text)};
  });
}

mcx_status mcx_chain_cycle(int n, double alpha, mcx_chain** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null output");
    *out = new mcx_chain{mcmix::cycle_walk(n, alpha)};
  });
}

mcx_status mcx_chain_complete(int n, mcx_chain** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null output");
    *out = new mcx_chain{mcmix::complete_graph_walk(n)};
  });
}

mcx_status mcx_chain_eulerian(const char* text, int d, mcx_chain** out) {
  return guarded([&] {
    require_arg(text && out, "null argument");
    auto edges = mcmix::EdgeMultiset::parse(text);
    *out = new mcx_chain{mcmix::eulerian_walk(edges, d)};
  });
}

mcx_status mcx_chain_from_group(const mcx_group* group, mcx_chain** out) {
  return guarded([&] {
    require_arg(group && out, "null argument");
    *out = new mcx_chain{mcmix::cayley_walk(group->group)};
  });
}

mcx_status mcx_chain_random(uint64_t seed, int n, int force_holding,
                            mcx_chain** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null output");
    std::mt19937_64 rng(seed);
    mcmix::RandomChainOptions opt;
    opt.force_holding = force_holding != 0;
    *out = new mcx_chain{mcmix::random_chain(rng, n, opt)};
  });
}

void mcx_chain_free(mcx_chain* chain) { delete chain; }

int mcx_chain_states(const mcx_chain* chain) {
  return chain ? chain->chain.states() : 0;
}

double mcx_chain_alpha(const mcx_chain* chain) {
  return chain ? chain->chain.alpha() : 0.0;
}

mcx_status mcx_chain_stationary(const mcx_chain* chain, double* pi) {
  return guarded([&] {
    require_arg(chain && pi, "null argument");
    for (int v = 0; v < chain->chain.states(); ++v) pi[v] = chain->chain.pi(v);
  });
}

mcx_status mcx_chain_format(const mcx_chain* chain, char** out) {
  return guarded([&] {
    require_arg(chain && out, "null argument");
    *out = copy_string(chain->chain.format());
  });
}

mcx_status mcx_chain_reversal(const mcx_chain* chain, mcx_chain** out) {
  return guarded([&] {
    require_arg(chain && out, "null argument");
    *out = new mcx_chain{chain->chain.reversal()};
  });
}

mcx_status mcx_empirical_mixing_time(const mcx_chain* chain, int x, double eps,
                                     long max_steps, long* out_tau) {
  return guarded([&] {
    require_arg(chain && out_tau, "null argument");
    auto result = mcmix::empirical_mixing_time(chain->chain, x, eps, max_steps);
    *out_tau = result.reached ? result.steps : -1;
  });
}

mcx_status mcx_group_make(const char* spec, const char* gens, const char* probs,
                          mcx_group** out) {
  return guarded([&] {
    require_arg(spec && gens && out, "null argument");
    *out = new mcx_group{mcmix::GroupPresentation::from_spec(
        spec, split_list(gens), split_doubles(probs))};
  });
}

void mcx_group_free(mcx_group* group) { delete group; }

mcx_status mcx_analyze_report(const mcx_chain* chain, const char* chain_id,
                              int start, double eps, const double* rs, int n_rs,
                              int tsv, char** out) {
  return guarded([&] {
    require_arg(chain && out, "null argument");
    std::vector<double> r_values(rs, rs + (rs ? n_rs : 0));
    if (r_values.empty()) r_values = {0.25, 0.5};
    *out = copy_string(mcmix::analyze_report(chain->chain,
                                             chain_id ? chain_id : "chain", start,
                                             eps, r_values, tsv != 0));
  });
}

mcx_status mcx_bounds_report(const mcx_chain* chain, const char* chain_id,
                             int start, double eps, const double* rs, int n_rs,
                             int alt_mode, int tsv, char** out) {
  return guarded([&] {
    require_arg(chain && out, "null argument");
    mcmix::ReportOptions opt;
    if (rs && n_rs > 0) {
      opt.r_small.assign(rs, rs + n_rs);
      opt.r_noholding.assign(rs, rs + n_rs);
    }
    require_arg(alt_mode == MCX_PATHS_ALT_AUTO || alt_mode == MCX_PATHS_ALT_DERIVE,
                "alt_mode must be alt-auto or alt-derive");
    opt.alt_source = alt_mode == MCX_PATHS_ALT_DERIVE ? mcmix::AltSource::Derive
                                                      : mcmix::AltSource::Auto;
    auto report = mcmix::make_bound_report(
        chain->chain, chain_id ? chain_id : "chain", start, eps, opt);
    *out = copy_string(tsv ? mcmix::render_bound_report_tsv(report)
                           : mcmix::render_bound_report_text(report));
  });
}

mcx_status mcx_paths_report(const mcx_chain* chain, int mode,
                            const char* path_text, int tsv, char** out) {
  return guarded([&] {
    require_arg(chain && out, "null argument");
    const auto& c = chain->chain;
    switch (mode) {
      case MCX_PATHS_BFS:
        *out = copy_string(mcmix::paths_report(c, mcmix::bfs_paths(c), tsv != 0));
        return;
      case MCX_PATHS_FILE:
        require_arg(path_text != nullptr, "path text required for file mode");
        *out = copy_string(
            mcmix::paths_report(c, mcmix::parse_path_family(path_text, c), tsv != 0));
        return;
      case MCX_PATHS_ALT_AUTO:
        *out = copy_string(
            mcmix::alt_paths_report(c, mcmix::alternating_paths(c), tsv != 0));
        return;
      case MCX_PATHS_ALT_DERIVE: {
        auto family = mcmix::remove_cycles(mcmix::bfs_paths(c));
        *out = copy_string(mcmix::alt_paths_report(
            c, mcmix::alternating_from_plain(c, family), tsv != 0));
        return;
      }
      default:
        throw mcmix::Error(mcmix::ErrorKind::Usage, "unknown paths mode");
    }
  });
}

mcx_status mcx_cayley_paths_report(const mcx_group* group, int tsv, char** out) {
  return guarded([&] {
    require_arg(group && out, "null argument");
    auto chain = mcmix::cayley_walk(group->group);
    *out = copy_string(mcmix::cayley_paths_report(group->group, chain, tsv != 0));
  });
}

mcx_status mcx_profile_tsv(const mcx_chain* chain, const char* quantity,
                           double r, char** out) {
  return guarded([&] {
    require_arg(chain && quantity && out, "null argument");
    std::string q = quantity;
    mcmix::ProfileKind kind;
    if (q == "r-conductance") kind = mcmix::ProfileKind::RConductance;
    else if (q == "r-modified-conductance") kind = mcmix::ProfileKind::RModifiedConductance;
    else if (q == "conductance") kind = mcmix::ProfileKind::Conductance;
    else if (q == "root-profile") kind = mcmix::ProfileKind::RootProfile;
    else throw mcmix::Error(mcmix::ErrorKind::Usage, "unknown profile quantity '" + q + "'");
    *out = copy_string(
        mcmix::profile_tsv(mcmix::build_profile(chain->chain, kind, r)));
  });
}

mcx_status mcx_verify(const mcx_chain* chain, uint64_t seed, int count, int max_n,
                      int inject_fault, char** out_report, int* out_violations) {
  return guarded([&] {
    require_arg(out_report && out_violations, "null output");
    mcmix::AuditOptions opt;
    opt.inject_fault = inject_fault != 0;
    mcmix::AuditResult result;
    if (chain != nullptr) {
      result = mcmix::inequality_grid_audit();
      result.merge(mcmix::audit_chain(chain->chain, "chain", opt));
    } else {
      result = mcmix::run_fleet(seed, count, max_n, opt);
    }
    *out_report = copy_string(mcmix::render_audit(result));
    *out_violations = static_cast<int>(result.violations.size());
  });
}

}  // extern "C"
