#pragma once

#include <string>
#include <vector>

#include "mcmix/chain.hpp"
#include "mcmix/generators.hpp"

namespace mcmix {

/// Canonical path family: one vertex sequence x = v_0, ..., v_k = y along
/// strictly positive transitions for every ordered pair x != y. The diagonal
/// path gamma_xx is empty by convention. Immutable after construction.
struct PathFamily {
  int n = 0;
  std::vector<std::vector<int>> paths;  // index x*n + y

  const std::vector<int>& at(int x, int y) const {
    return paths[static_cast<size_t>(x) * n + y];
  }
};

/// Congestion statistics of a plain family.
struct PathStats {
  double edge_congestion = 0.0;    // rho_e
  double vertex_congestion = 0.0;  // rho_v (with the shared-path halving)
  double max_len = 0.0;            // ell
  double avg_len = 0.0;            // ell_ave, pi x pi weighted
  double avg_vertex_congestion = 0.0;
  double boundary_prob = 0.0;      // min P(a,b) over used edges
};

/// Shortest paths over positive transitions by breadth-first search with
/// ascending-index tie-breaking; cycle-free by construction. Throws when a
/// pair is unreachable.
PathFamily bfs_paths(const MarkovChain& chain);

/// Excise loops from every path (first-revisit splicing); endpoints are
/// preserved and congestion cannot increase.
PathFamily remove_cycles(const PathFamily& family);
std::vector<int> simplify_path(std::vector<int> path);

void validate_family(const MarkovChain& chain, const PathFamily& family);

/// rho_e: worst edge load over stationary edge capacity. Only edges used by
/// some path enter the maximum.
double edge_congestion(const MarkovChain& chain, const PathFamily& family);

/// rho_v: worst vertex load over stationary mass, counting a pair (x,y) at
/// full weight when v lies on gamma_xy but not gamma_yx and at half weight
/// when it lies on both (vertex membership includes endpoints).
double vertex_congestion(const MarkovChain& chain, const PathFamily& family);

/// max/average path length and average vertex congestion; the latter equals
/// avg_len * (1 - ||pi||_2^2) for cycle-free families.
PathStats path_stats(const MarkovChain& chain, const PathFamily& family);

double boundary_prob(const MarkovChain& chain, const PathFamily& family);

/// Odd-length paths alternating P and P* steps, for every ordered pair
/// including x = y:  x = x_0 -P-> x_1 -P*-> x_2 -P-> ... -P-> x_{2m+1} = y.
struct AltPathFamily {
  int n = 0;
  std::vector<std::vector<int>> paths;  // vertex sequences of even size >= 2

  const std::vector<int>& at(int x, int y) const {
    return paths[static_cast<size_t>(x) * n + y];
  }
};

struct AltStats {
  double vertex_congestion = 0.0;   // odd-position congestion
  double reversed_boundary = 0.0;   // min P*(b,a) over used P-edges (a,b)
};

/// Shortest valid alternating path per pair via breadth-first search over
/// (state, parity); ascending-index tie-breaking. Throws Construction naming
/// a pair when no odd alternating path exists within 2n+1 layers.
AltPathFamily alternating_paths(const MarkovChain& chain);

/// Alternating family derived from a plain one: P steps are self-loops, P*
/// steps retrace gamma_yx backwards. Requires alpha > 0. For gamma_xx empty
/// the result is a single self-loop.
AltPathFamily alternating_from_plain(const MarkovChain& chain,
                                     const PathFamily& family);

void validate_alt_family(const MarkovChain& chain, const AltPathFamily& family);

AltStats alt_stats(const MarkovChain& chain, const AltPathFamily& family);

/// Word paths on a Cayley graph: for g = x^{-1} y = s_1 ... s_k (shortest
/// word, breadth-first over generators in list order) the path multiplies the
/// prefixes. diameter = longest stored word; occurrences[g][k] counts how
/// often generator k appears in the word for g.
struct CayleyPaths {
  PathFamily family;
  int diameter = 0;
  std::vector<std::vector<int>> occurrences;
  std::vector<std::vector<int>> words;  // generator indices per element
};

CayleyPaths cayley_word_paths(const GroupPresentation& group,
                              const MarkovChain& chain);

/// Translation-invariant alternating word paths: the same shortest odd
/// alternating word (letters from S at odd steps, from S^{-1} at even steps)
/// is used for every pair with the same x^{-1} y. diameter is the alternating
/// diameter. Throws Construction when some element is unreachable.
struct CayleyAltPaths {
  AltPathFamily family;
  int diameter = 0;
};

CayleyAltPaths cayley_alternating_paths(const GroupPresentation& group,
                                        const MarkovChain& chain);

/// Path file format: one "path <x> <y> <v_0> ... <v_k>" line per pair.
/// Loaded families are fully validated, never trusted.
PathFamily parse_path_family(std::string_view text, const MarkovChain& chain);
AltPathFamily parse_alt_family(std::string_view text, const MarkovChain& chain);
std::string format_path_family(const PathFamily& family);

}  // namespace mcmix
