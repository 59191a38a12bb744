#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mcmix/chain.hpp"

namespace mcmix {

/// Walk on the cycle Z_n: P(i,i) = alpha, P(i,(i+1) mod n) = 1 - alpha.
/// Uniform stationary distribution. alpha = 0 gives the pure rotation
/// (periodic but representable). Requires n >= 3.
MarkovChain cycle_walk(int n, double alpha);

/// Lazy simple random walk on the complete graph K_n with loops:
/// P(i,j) = 1/2n for i != j and P(i,i) = 1/2 + 1/2n. Uniform pi.
MarkovChain complete_graph_walk(int n);

/// Chain whose every row equals its stationary distribution; mixes exactly
/// in one step. Used as a reference extreme in tests and reports.
MarkovChain rows_equal_pi_chain(std::vector<double> pi);

/// Directed multigraph given by arc multiplicities d(x,y).
struct EdgeMultiset {
  int vertices = 0;
  // count[x*vertices + y] = number of parallel arcs x -> y (loops allowed)
  std::vector<int> count;

  static EdgeMultiset parse(std::string_view text);  // vertices/maxdeg/arc lines
  int degree_out(int x) const;
  int degree_in(int y) const;
};

/// Max-degree walk on an Eulerian multigraph: P(x,y) = d(x,y)/d for y != x,
/// P(x,x) = 1 - (d(x) - d(x,x))/d. Requires in-degree = out-degree at every
/// vertex and d >= max out-degree; the result is doubly stochastic, so pi is
/// exactly uniform. Pass d = 0 to use the max out-degree.
MarkovChain eulerian_walk(const EdgeMultiset& edges, int d = 0);

/// Finite group as a multiplication table plus a weighted generating set.
struct GroupPresentation {
  int order = 0;
  std::vector<int> mul;             // mul[a*order+b] = index of a*b
  std::vector<std::string> names;   // display/parse names per element
  int identity = 0;
  std::vector<int> generators;      // element indices
  std::vector<double> gen_probs;    // positive, sums to 1

  int times(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
  int inverse(int a) const;
  int element_by_name(const std::string& name) const;  // -1 if unknown

  /// Resolve generator names and probabilities (empty probs = uniform).
  void use_generators(const std::vector<std::string>& gen_names,
                      const std::vector<double>& probs);

  /// Cyclic group Z_n; element k is named "+k" ("id" for 0). Name lookup
  /// also accepts "-k" and bare integers.
  static GroupPresentation cyclic(int n);

  /// Symmetric group S_k (k <= 5), elements named in cycle notation such as
  /// "(12)" or "(123)"; the identity is "id". g*h composes h first.
  static GroupPresentation symmetric(int k);

  /// Parse "z<n>" or "s<k>" together with generator/probability lists.
  static GroupPresentation from_spec(const std::string& spec,
                                     const std::vector<std::string>& gen_names,
                                     const std::vector<double>& probs);
};

/// Random walk on the Cayley graph: P(g, g*s) = p(s). pi is exactly uniform
/// (the kernel is doubly stochastic). If S does not generate G the chain is
/// reducible and construction reports an ergodicity error.
MarkovChain cayley_walk(const GroupPresentation& group);

/// Uniform double in [0,1) from the top 53 bits; stable across platforms.
double uniform01(std::mt19937_64& rng);

struct RandomChainOptions {
  bool force_holding = false;   // positive diagonal at every state
  double edge_prob = 0.5;       // extra support density
  double diag_prob = 0.3;       // diagonal support density when not forced
};

/// Random strongly connected chain on n states: support is a random n-cycle
/// plus independent extra edges, row weights are normalized uniform draws in
/// [0.05, 1.05). Deterministic given the generator state.
MarkovChain random_chain(std::mt19937_64& rng, int n, const RandomChainOptions& opt = {});

}  // namespace mcmix
