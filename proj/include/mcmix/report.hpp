#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcmix/bounds.hpp"
#include "mcmix/chain.hpp"
#include "mcmix/evolving.hpp"
#include "mcmix/paths.hpp"

namespace mcmix {

enum class AltSource { Auto, Derive };

struct ReportOptions {
  std::vector<double> r_small;      // empty: {alpha, alpha/2, alpha/4}
  std::vector<double> r_noholding;  // empty: {1/4, 1/2, 3/4, 1}
  AltSource alt_source = AltSource::Auto;
  bool sharper_evolving = false;
  long max_steps = 100000;
  int cap = kEnumerationCap;
  std::optional<PathFamily> plain_family;  // default: BFS shortest paths
};

struct BoundEntry {
  std::string tag;
  std::vector<std::pair<std::string, double>> params;
  Bound bound;
};

struct BoundReport {
  std::string chain_id;
  int start = 0;
  double eps = 0.0;
  MixingResult empirical;
  std::vector<BoundEntry> entries;
  std::vector<std::string> notes;  // e.g. alternating-family construction failure
};

BoundReport make_bound_report(const MarkovChain& chain, const std::string& chain_id,
                              int start, double eps, const ReportOptions& opt = {});

std::string render_bound_report_text(const BoundReport& report);
std::string render_bound_report_tsv(const BoundReport& report);

/// Summary of pi, alpha, empirical mixing and profile values at a few set
/// sizes for each requested r.
std::string analyze_report(const MarkovChain& chain, const std::string& chain_id,
                           int start, double eps, const std::vector<double>& rs,
                           bool tsv, long max_steps = 100000,
                           int cap = kEnumerationCap);

enum class PathMode { Bfs, File, Cayley, AltAuto, AltDerive };

/// Congestion statistics plus per-vertex and per-edge load tables.
std::string paths_report(const MarkovChain& chain, const PathFamily& family,
                         bool tsv);
std::string alt_paths_report(const MarkovChain& chain, const AltPathFamily& family,
                             bool tsv);
std::string cayley_paths_report(const GroupPresentation& group,
                                const MarkovChain& chain, bool tsv);

/// Deterministic %.17g rendering used by every table.
std::string format_double(double v);

}  // namespace mcmix
