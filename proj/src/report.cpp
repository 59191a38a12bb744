#include "mcmix/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mcmix/subsets.hpp"

namespace mcmix {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string bound_cell(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::Finite: return std::to_string(b.ceiled());
    case Bound::Kind::Infinite: return "infinite";
    case Bound::Kind::NotApplicable: return "not applicable: " + b.note;
  }
  return "?";
}

std::string empirical_cell(const MixingResult& m) {
  return m.reached ? std::to_string(m.steps) : "not reached";
}

std::string slack_cell(const Bound& b, const MixingResult& m) {
  if (!m.reached || !b.is_finite()) return "-";
  if (m.steps == 0) return b.ceiled() == 0 ? "1" : "-";
  return fmt(static_cast<double>(b.ceiled()) / static_cast<double>(m.steps),
             "%.3g");
}

std::string params_cell(const BoundEntry& e) {
  std::string out;
  for (const auto& [k, v] : e.params) {
    if (!out.empty()) out += " ";
    out += k + "=" + fmt(v);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

BoundReport make_bound_report(const MarkovChain& chain, const std::string& chain_id,
                              int start, double eps, const ReportOptions& opt) {
  BoundReport report;
  report.chain_id = chain_id;
  report.start = start;
  report.eps = eps;
  report.empirical = empirical_mixing_time(chain, start, eps, opt.max_steps);
  double alpha = chain.alpha();
  double pix = chain.pi(start);

  // Small-holding sweep.
  std::vector<double> r_small = opt.r_small;
  if (r_small.empty() && alpha > 0.0)
    for (double f : {1.0, 0.5, 0.25}) r_small.push_back(alpha * f);
  if (alpha > 0.0) {
    for (double r : r_small) {
      auto profile = build_profile(chain, ProfileKind::RConductance, r, opt.cap);
      report.entries.push_back({"small-holding",
                                {{"r", r}, {"alpha", alpha}},
                                small_holding_bound(chain, start, eps, r, profile)});
    }
  } else {
    report.entries.push_back(
        {"small-holding", {{"alpha", alpha}},
         Bound::not_applicable("requires r <= alpha and alpha = 0")});
  }

  // No-holding sweep.
  std::vector<double> r_no = opt.r_noholding;
  if (r_no.empty()) r_no = {0.25, 0.5, 0.75, 1.0};
  for (double r : r_no) {
    auto profile = build_profile(chain, ProfileKind::RModifiedConductance, r, opt.cap);
    report.entries.push_back({"no-holding",
                              {{"r", r}},
                              no_holding_bound(chain, start, eps, r, profile)});
  }

  // Evolving sets.
  auto root = root_profile_curve(chain, opt.cap);
  report.entries.push_back(
      {"evolving", {{"pi_x", pix}}, evolving_bound(chain, start, eps, false, root)});
  if (opt.sharper_evolving)
    report.entries.push_back({"evolving-sharp",
                              {{"pi_x", pix}},
                              evolving_bound(chain, start, eps, true, root)});

  // Canonical paths with holding probability + the Poincare baseline.
  PathFamily family = opt.plain_family ? *opt.plain_family : bfs_paths(chain);
  family = remove_cycles(family);
  auto stats = path_stats(chain, family);
  auto hp = holding_path_bounds(chain, start, eps, stats);
  std::vector<std::pair<std::string, double>> path_params = {
      {"rho_v", stats.vertex_congestion},
      {"rho_e", stats.edge_congestion},
      {"ell", stats.max_len},
      {"P0", stats.boundary_prob},
      {"alpha", alpha}};
  report.entries.push_back({"paths-holding-1", path_params, hp.first});
  report.entries.push_back({"paths-holding-2", path_params, hp.second});
  report.entries.push_back(
      {"baseline-poincare",
       {{"rho_e", stats.edge_congestion}, {"ell", stats.max_len}, {"alpha", alpha}},
       poincare_baseline(PoincareBaseline::Holding, alpha, stats.edge_congestion,
                         stats.max_len, eps, pix)});

  // Alternating paths.
  try {
    AltPathFamily alt = opt.alt_source == AltSource::Derive
                            ? alternating_from_plain(chain, family)
                            : alternating_paths(chain);
    auto astats = alt_stats(chain, alt);
    double d0 = delta0(chain, opt.cap);
    Bound b = eps <= 1.0
                  ? alternating_path_bound(chain, start, eps, astats, d0)
                  : Bound::not_applicable("requires eps <= 1");
    report.entries.push_back({"paths-noholding",
                              {{"rho_v_dot", astats.vertex_congestion},
                               {"P0_star", astats.reversed_boundary},
                               {"delta0", d0}},
                              b});
  } catch (const Error& e) {
    report.entries.push_back(
        {"paths-noholding", {}, Bound::not_applicable(e.what())});
    report.notes.push_back(std::string("alternating family: ") + e.what());
  }
  return report;
}

std::string render_bound_report_text(const BoundReport& report) {
  std::string out;
  out += "chain " + report.chain_id + "  start " + std::to_string(report.start) +
         "  eps " + fmt(report.eps) + "\n";
  out += "empirical tau = " + empirical_cell(report.empirical) + "\n";

  size_t w_tag = 4, w_bound = 5;
  for (const auto& e : report.entries) {
    w_tag = std::max(w_tag, e.tag.size());
    w_bound = std::max(w_bound, bound_cell(e.bound).size());
  }
  long best = -1;
  for (const auto& e : report.entries)
    if (e.bound.is_finite() && (best < 0 || e.bound.ceiled() < best))
      best = e.bound.ceiled();

  for (const auto& e : report.entries) {
    std::string cell = bound_cell(e.bound);
    std::string mark =
        (best >= 0 && e.bound.is_finite() && e.bound.ceiled() == best) ? " *" : "  ";
    out += "  " + e.tag + std::string(w_tag - e.tag.size(), ' ') + "  " +
           std::string(w_bound - cell.size(), ' ') + cell + mark + "  slack " +
           slack_cell(e.bound, report.empirical);
    std::string params = params_cell(e);
    if (!params.empty()) out += "  [" + params + "]";
    out += "\n";
  }
  for (const auto& note : report.notes) out += "note: " + note + "\n";
  if (best >= 0) out += "best finite bound: " + std::to_string(best) + "\n";
  return out;
}

std::string render_bound_report_tsv(const BoundReport& report) {
  std::string out = "tag\tparams\tbound\tempirical\tslack\n";
  for (const auto& e : report.entries)
    out += e.tag + "\t" + params_cell(e) + "\t" + bound_cell(e.bound) + "\t" +
           empirical_cell(report.empirical) + "\t" +
           slack_cell(e.bound, report.empirical) + "\n";
  return out;
}

std::string analyze_report(const MarkovChain& chain, const std::string& chain_id,
                           int start, double eps, const std::vector<double>& rs,
                           bool tsv, long max_steps, int cap) {
  std::string out;
  int n = chain.states();
  auto empirical = empirical_mixing_time(chain, start, eps, max_steps);

  if (tsv) {
    out += "key\tvalue\n";
    out += "states\t" + std::to_string(n) + "\n";
    out += "alpha\t" + format_double(chain.alpha()) + "\n";
    for (int v = 0; v < n; ++v)
      out += "pi_" + std::to_string(v) + "\t" + format_double(chain.pi(v)) + "\n";
    out += "tau\t" + empirical_cell(empirical) + "\n";
  } else {
    out += "chain " + chain_id + ": " + std::to_string(n) + " states, alpha " +
           fmt(chain.alpha()) + "\n";
    out += "pi =";
    for (int v = 0; v < n; ++v) out += " " + fmt(chain.pi(v));
    out += "\n";
    out += "empirical tau_" + std::to_string(start) + "(" + fmt(eps) +
           ") = " + empirical_cell(empirical) + "\n";
  }

  auto emit_profile = [&](const StepProfile& profile, const std::string& label) {
    if (tsv) {
      for (const auto& step : profile.steps())
        out += label + "\ts=" + format_double(step.s) + "\t" +
               format_double(step.value) + "\n";
    } else {
      out += "  " + label + ":";
      for (double s : {0.1, 0.25, 0.5}) {
        double v = profile.value_at(s);
        out += " value(" + fmt(s) + ")=" + (std::isfinite(v) ? fmt(v) : "inf");
      }
      out += " steps=" + std::to_string(profile.steps().size()) + "\n";
    }
  };

  for (double r : rs) {
    emit_profile(build_profile(chain, ProfileKind::RConductance, r, cap),
                 "r-conductance r=" + fmt(r));
    emit_profile(build_profile(chain, ProfileKind::RModifiedConductance, r, cap),
                 "r-modified-conductance r=" + fmt(r));
  }
  emit_profile(root_profile_curve(chain, cap), "root-profile");
  return out;
}

namespace {

std::string family_tables(const MarkovChain& chain, const PathFamily& family,
                          bool tsv) {
  int n = chain.states();
  std::vector<double> vload(n, 0.0);
  std::vector<double> eload(static_cast<size_t>(n) * n, 0.0);
  std::vector<char> mark(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      double w = chain.pi(x) * chain.pi(y);
      const auto& path = family.at(x, y);
      std::vector<int> touched;
      for (int v : path)
        if (!mark[v]) {
          mark[v] = 1;
          touched.push_back(v);
          if (v != x) vload[v] += w;
        }
      for (int v : touched) mark[v] = 0;
      for (size_t i = 0; i + 1 < path.size(); ++i)
        eload[static_cast<size_t>(path[i]) * n + path[i + 1]] += w;
    }
  std::string out;
  const char* sep = tsv ? "\t" : "  ";
  out += std::string("vertex") + sep + "pi" + sep + "load" + sep + "congestion\n";
  for (int v = 0; v < n; ++v)
    out += std::to_string(v) + sep + fmt(chain.pi(v)) + sep + fmt(vload[v]) + sep +
           fmt(vload[v] / chain.pi(v)) + "\n";
  out += std::string("edge_a") + sep + "edge_b" + sep + "p" + sep + "load" + sep +
         "congestion\n";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double load = eload[static_cast<size_t>(a) * n + b];
      if (load <= 0.0) continue;
      out += std::to_string(a) + sep + std::to_string(b) + sep + fmt(chain.p(a, b)) +
             sep + fmt(load) + sep + fmt(load / (chain.pi(a) * chain.p(a, b))) + "\n";
    }
  return out;
}

}  // namespace

std::string paths_report(const MarkovChain& chain, const PathFamily& family,
                         bool tsv) {
  auto stats = path_stats(chain, family);
  std::string out;
  out += "rho_e " + fmt(stats.edge_congestion) + "\n";
  out += "rho_v " + fmt(stats.vertex_congestion) + "\n";
  out += "ell " + fmt(stats.max_len) + "\n";
  out += "ell_ave " + fmt(stats.avg_len) + "\n";
  out += "rho_v_ave " + fmt(stats.avg_vertex_congestion) + "\n";
  out += "P0 " + fmt(stats.boundary_prob) + "\n";
  out += family_tables(chain, family, tsv);
  return out;
}

std::string alt_paths_report(const MarkovChain& chain, const AltPathFamily& family,
                             bool tsv) {
  auto stats = alt_stats(chain, family);
  int n = chain.states();
  std::vector<double> load(n, 0.0);
  std::vector<char> mark(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& seq = family.at(x, y);
      double w = chain.pi(x) * chain.pi(y);
      std::vector<int> touched;
      for (size_t i = 1; i < seq.size(); i += 2)
        if (!mark[seq[i]]) {
          mark[seq[i]] = 1;
          touched.push_back(seq[i]);
          load[seq[i]] += w;
        }
      for (int v : touched) mark[v] = 0;
    }
  std::string out;
  out += "rho_v_dot " + fmt(stats.vertex_congestion) + "\n";
  out += "P0_star " + fmt(stats.reversed_boundary) + "\n";
  const char* sep = tsv ? "\t" : "  ";
  out += std::string("vertex") + sep + "pi" + sep + "odd_load" + sep + "congestion\n";
  for (int v = 0; v < n; ++v)
    out += std::to_string(v) + sep + fmt(chain.pi(v)) + sep + fmt(load[v]) + sep +
           fmt(load[v] / chain.pi(v)) + "\n";
  return out;
}

std::string cayley_paths_report(const GroupPresentation& group,
                                const MarkovChain& chain, bool tsv) {
  auto words = cayley_word_paths(group, chain);
  std::string out;
  out += "diameter " + std::to_string(words.diameter) + "\n";
  const char* sep = tsv ? "\t" : "  ";
  out += std::string("element") + sep + "word_length";
  for (size_t k = 0; k < group.generators.size(); ++k)
    out += sep + ("N_" + group.names[group.generators[k]]);
  out += "\n";
  for (int g = 0; g < group.order; ++g) {
    out += group.names[g] + sep + std::to_string(words.words[g].size());
    for (size_t k = 0; k < group.generators.size(); ++k)
      out += sep + std::to_string(words.occurrences[g][k]);
    out += "\n";
  }
  out += paths_report(chain, words.family, tsv);
  return out;
}

}  // namespace mcmix
