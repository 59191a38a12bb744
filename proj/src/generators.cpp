#include "mcmix/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mcmix {

MarkovChain cycle_walk(int n, double alpha) {
  if (n < 3) throw Error(ErrorKind::Validation, "cycle walk needs n >= 3");
  if (alpha < 0.0 || alpha >= 1.0)
    throw Error(ErrorKind::Validation, "cycle walk needs alpha in [0,1)");
  std::vector<double> p(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    p[static_cast<size_t>(i) * n + i] = alpha;
    p[static_cast<size_t>(i) * n + (i + 1) % n] = 1.0 - alpha;
  }
  return MarkovChain::from_matrix(n, std::move(p), std::vector<double>(n, 1.0 / n));
}

MarkovChain complete_graph_walk(int n) {
  if (n < 2) throw Error(ErrorKind::Validation, "complete graph walk needs n >= 2");
  std::vector<double> p(static_cast<size_t>(n) * n, 1.0 / (2.0 * n));
  for (int i = 0; i < n; ++i)
    p[static_cast<size_t>(i) * n + i] = 0.5 + 1.0 / (2.0 * n);
  return MarkovChain::from_matrix(n, std::move(p), std::vector<double>(n, 1.0 / n));
}

MarkovChain rows_equal_pi_chain(std::vector<double> pi) {
  int n = static_cast<int>(pi.size());
  validate_distribution(pi);
  std::vector<double> p(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[static_cast<size_t>(i) * n + j] = pi[j];
  return MarkovChain::from_matrix(n, std::move(p), std::move(pi));
}

int EdgeMultiset::degree_out(int x) const {
  int d = 0;
  for (int y = 0; y < vertices; ++y) d += count[static_cast<size_t>(x) * vertices + y];
  return d;
}

int EdgeMultiset::degree_in(int y) const {
  int d = 0;
  for (int x = 0; x < vertices; ++x) d += count[static_cast<size_t>(x) * vertices + y];
  return d;
}

EdgeMultiset EdgeMultiset::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  EdgeMultiset g;
  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertices") {
      if (g.vertices > 0) fail("duplicate vertices line");
      if (!(ls >> g.vertices) || g.vertices < 2) fail("expected vertices <n>, n >= 2");
      g.count.assign(static_cast<size_t>(g.vertices) * g.vertices, 0);
    } else if (kw == "arc") {
      if (g.vertices == 0) fail("arc before vertices");
      int x, y, c = 1;
      if (!(ls >> x >> y)) fail("expected arc <x> <y> [count]");
      ls >> c;
      if (x < 0 || x >= g.vertices || y < 0 || y >= g.vertices)
        fail("arc endpoint out of range");
      if (c < 1) fail("arc count must be positive");
      g.count[static_cast<size_t>(x) * g.vertices + y] += c;
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }
  if (g.vertices == 0) throw Error(ErrorKind::Parse, "missing vertices line");
  return g;
}

MarkovChain eulerian_walk(const EdgeMultiset& edges, int d) {
  int n = edges.vertices;
  int maxdeg = 0;
  for (int x = 0; x < n; ++x) {
    if (edges.degree_out(x) != edges.degree_in(x))
      throw Error(ErrorKind::Validation,
                  "vertex " + std::to_string(x) + " has in-degree " +
                      std::to_string(edges.degree_in(x)) + " != out-degree " +
                      std::to_string(edges.degree_out(x)));
    maxdeg = std::max(maxdeg, edges.degree_out(x));
  }
  if (maxdeg == 0) throw Error(ErrorKind::Validation, "graph has no arcs");
  if (d == 0) d = maxdeg;
  if (d < maxdeg)
    throw Error(ErrorKind::Validation,
                "d = " + std::to_string(d) + " is below max degree " +
                    std::to_string(maxdeg));

  std::vector<double> p(static_cast<size_t>(n) * n, 0.0);
  for (int x = 0; x < n; ++x) {
    int loops = edges.count[static_cast<size_t>(x) * n + x];
    for (int y = 0; y < n; ++y)
      if (y != x)
        p[static_cast<size_t>(x) * n + y] =
            static_cast<double>(edges.count[static_cast<size_t>(x) * n + y]) / d;
    p[static_cast<size_t>(x) * n + x] =
        1.0 - static_cast<double>(edges.degree_out(x) - loops) / d;
  }
  return MarkovChain::from_matrix(n, std::move(p), std::vector<double>(n, 1.0 / n));
}

int GroupPresentation::inverse(int a) const {
  for (int b = 0; b < order; ++b)
    if (times(a, b) == identity) return b;
  throw Error(ErrorKind::Validation, "element has no inverse; not a group table");
}

int GroupPresentation::element_by_name(const std::string& name) const {
  for (int i = 0; i < order; ++i)
    if (names[i] == name) return i;
  return -1;
}

void GroupPresentation::use_generators(const std::vector<std::string>& gen_names,
                                       const std::vector<double>& probs) {
  if (gen_names.empty())
    throw Error(ErrorKind::Usage, "empty generating set");
  if (!probs.empty() && probs.size() != gen_names.size())
    throw Error(ErrorKind::Usage, "probability list length mismatch");
  generators.clear();
  for (const auto& name : gen_names) {
    int e = element_by_name(name);
    if (e < 0) throw Error(ErrorKind::Usage, "unknown group element '" + name + "'");
    if (std::find(generators.begin(), generators.end(), e) != generators.end())
      throw Error(ErrorKind::Usage, "duplicate generator '" + name + "'");
    generators.push_back(e);
  }
  if (probs.empty()) {
    gen_probs.assign(generators.size(), 1.0 / generators.size());
  } else {
    double sum = 0.0;
    for (double q : probs) {
      if (!(q > 0.0)) throw Error(ErrorKind::Usage, "generator probabilities must be positive");
      sum += q;
    }
    if (std::fabs(sum - 1.0) > tol::kDistSum)
      throw Error(ErrorKind::Usage, "generator probabilities must sum to 1");
    gen_probs = probs;
  }
}

namespace {

// Associativity spot check; full check only for small orders.
void check_table(const GroupPresentation& g) {
  int n = g.order;
  auto idx = [&](int a, int b) { return g.mul[static_cast<size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a) {
    if (idx(g.identity, a) != a || idx(a, g.identity) != a)
      throw Error(ErrorKind::Validation, "identity does not act trivially");
  }
  std::mt19937_64 rng(12345);
  int checks = n <= 24 ? n * n * n : 2000;
  for (int t = 0; t < checks; ++t) {
    int a, b, c;
    if (n <= 24) {
      a = t / (n * n);
      b = (t / n) % n;
      c = t % n;
    } else {
      a = static_cast<int>(rng() % n);
      b = static_cast<int>(rng() % n);
      c = static_cast<int>(rng() % n);
    }
    if (idx(idx(a, b), c) != idx(a, idx(b, c)))
      throw Error(ErrorKind::Validation, "multiplication table is not associative");
  }
  for (int a = 0; a < n; ++a) g.inverse(a);  // throws when missing
}

std::string cycle_notation(const std::vector<int>& perm) {
  int k = static_cast<int>(perm.size());
  std::string out;
  std::vector<char> done(k, 0);
  for (int i = 0; i < k; ++i) {
    if (done[i] || perm[i] == i) continue;
    std::string cyc = "(" + std::to_string(i + 1);
    done[i] = 1;
    for (int j = perm[i]; j != i; j = perm[j]) {
      done[j] = 1;
      cyc += std::to_string(j + 1);
    }
    out += cyc + ")";
  }
  return out.empty() ? "id" : out;
}

}  // namespace

GroupPresentation GroupPresentation::cyclic(int n) {
  if (n < 2) throw Error(ErrorKind::Validation, "cyclic group needs n >= 2");
  GroupPresentation g;
  g.order = n;
  g.mul.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[static_cast<size_t>(a) * n + b] = (a + b) % n;
  g.identity = 0;
  g.names.resize(n);
  g.names[0] = "id";
  for (int k = 1; k < n; ++k) g.names[k] = "+" + std::to_string(k);
  check_table(g);
  return g;
}

GroupPresentation GroupPresentation::symmetric(int k) {
  if (k < 2 || k > 5)
    throw Error(ErrorKind::Validation, "symmetric group supported for 2 <= k <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 0);
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  GroupPresentation g;
  g.order = static_cast<int>(perms.size());
  g.mul.resize(static_cast<size_t>(g.order) * g.order);
  auto rank = [&](const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) -
                            perms.begin());
  };
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      std::vector<int> comp(k);  // (a*b)(i) = a(b(i)): b applied first
      for (int i = 0; i < k; ++i) comp[i] = perms[a][perms[b][i]];
      g.mul[static_cast<size_t>(a) * g.order + b] = rank(comp);
    }
  g.identity = 0;
  g.names.resize(g.order);
  for (int a = 0; a < g.order; ++a) g.names[a] = cycle_notation(perms[a]);
  check_table(g);
  return g;
}

GroupPresentation GroupPresentation::from_spec(
    const std::string& spec, const std::vector<std::string>& gen_names,
    const std::vector<double>& probs) {
  GroupPresentation g;
  if (spec.size() >= 2 && (spec[0] == 'z' || spec[0] == 'Z')) {
    g = cyclic(std::stoi(spec.substr(1)));
  } else if (spec.size() >= 2 && (spec[0] == 's' || spec[0] == 'S')) {
    g = symmetric(std::stoi(spec.substr(1)));
  } else {
    throw Error(ErrorKind::Usage, "unknown group spec '" + spec + "' (use z<n> or s<k>)");
  }
  // Cyclic groups also accept "-k" and bare integers as generator names.
  std::vector<std::string> resolved = gen_names;
  if (spec[0] == 'z' || spec[0] == 'Z') {
    for (auto& name : resolved) {
      if (name == "id" || name.empty()) continue;
      try {
        size_t pos = 0;
        long v = std::stol(name, &pos);
        if (pos == name.size()) {
          long m = ((v % g.order) + g.order) % g.order;
          name = m == 0 ? "id" : "+" + std::to_string(m);
        }
      } catch (const std::exception&) {
        // keep as-is; resolution happens in use_generators
      }
    }
  }
  g.use_generators(resolved, probs);
  return g;
}

MarkovChain cayley_walk(const GroupPresentation& group) {
  if (group.generators.empty())
    throw Error(ErrorKind::Usage, "group has no generating set attached");
  int n = group.order;
  std::vector<double> p(static_cast<size_t>(n) * n, 0.0);
  for (int g = 0; g < n; ++g)
    for (size_t k = 0; k < group.generators.size(); ++k)
      p[static_cast<size_t>(g) * n + group.times(g, group.generators[k])] +=
          group.gen_probs[k];
  return MarkovChain::from_matrix(n, std::move(p), std::vector<double>(n, 1.0 / n));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

MarkovChain random_chain(std::mt19937_64& rng, int n, const RandomChainOptions& opt) {
  if (n < 2) throw Error(ErrorKind::Validation, "random chain needs n >= 2");
  std::vector<char> support(static_cast<size_t>(n) * n, 0);

  // Random n-cycle guarantees strong connectivity.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng() % static_cast<unsigned>(i + 1)]);
  for (int i = 0; i < n; ++i)
    support[static_cast<size_t>(perm[i]) * n + perm[(i + 1) % n]] = 1;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        if (opt.force_holding || uniform01(rng) < opt.diag_prob)
          support[static_cast<size_t>(i) * n + j] = 1;
      } else if (uniform01(rng) < opt.edge_prob) {
        support[static_cast<size_t>(i) * n + j] = 1;
      }
    }

  std::vector<double> p(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
      if (support[static_cast<size_t>(i) * n + j]) {
        double w = 0.05 + uniform01(rng);
        p[static_cast<size_t>(i) * n + j] = w;
        sum += w;
      }
    for (int j = 0; j < n; ++j) p[static_cast<size_t>(i) * n + j] /= sum;
  }
  return MarkovChain::from_matrix(n, std::move(p));
}

}  // namespace mcmix
