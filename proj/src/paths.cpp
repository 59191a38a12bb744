#include "mcmix/paths.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

namespace mcmix {

namespace {

size_t pair_index(int n, int x, int y) { return static_cast<size_t>(x) * n + y; }

std::string pair_name(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

// Distinct vertices of a path, via a scratch marker array.
template <typename F>
void for_each_distinct(const std::vector<int>& path, std::vector<char>& mark,
                       std::vector<int>& touched, F&& fn) {
  touched.clear();
  for (int v : path) {
    if (mark[v]) continue;
    mark[v] = 1;
    touched.push_back(v);
    fn(v);
  }
  for (int v : touched) mark[v] = 0;
}

}  // namespace

PathFamily bfs_paths(const MarkovChain& chain) {
  int n = chain.states();
  PathFamily family;
  family.n = n;
  family.paths.resize(static_cast<size_t>(n) * n);

  std::vector<int> parent(n), order;
  for (int x = 0; x < n; ++x) {
    std::fill(parent.begin(), parent.end(), -2);
    parent[x] = -1;
    std::deque<int> queue{x};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      auto row = chain.row(v);
      for (int w = 0; w < n; ++w)
        if (row[w] > 0.0 && parent[w] == -2) {
          parent[w] = v;
          queue.push_back(w);
        }
    }
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      if (parent[y] == -2)
        throw Error(ErrorKind::Ergodicity,
                    "no path for pair " + pair_name(x, y));
      order.clear();
      for (int v = y; v != -1; v = parent[v]) order.push_back(v);
      std::reverse(order.begin(), order.end());
      family.paths[pair_index(n, x, y)] = order;
    }
  }
  return family;
}

std::vector<int> simplify_path(std::vector<int> path) {
  std::vector<int> out;
  out.reserve(path.size());
  for (int v : path) {
    auto seen = std::find(out.begin(), out.end(), v);
    if (seen != out.end())
      out.erase(seen + 1, out.end());
    else
      out.push_back(v);
  }
  return out;
}

PathFamily remove_cycles(const PathFamily& family) {
  PathFamily out;
  out.n = family.n;
  out.paths.reserve(family.paths.size());
  for (const auto& path : family.paths) out.paths.push_back(simplify_path(path));
  return out;
}

void validate_family(const MarkovChain& chain, const PathFamily& family) {
  int n = chain.states();
  if (family.n != n || family.paths.size() != static_cast<size_t>(n) * n)
    throw Error(ErrorKind::Validation, "path family shape mismatch");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& path = family.at(x, y);
      if (x == y) {
        if (!path.empty())
          throw Error(ErrorKind::Validation,
                      "diagonal path " + pair_name(x, y) + " must be empty");
        continue;
      }
      if (path.size() < 2 || path.front() != x || path.back() != y)
        throw Error(ErrorKind::Validation,
                    "path " + pair_name(x, y) + " has wrong endpoints");
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        int a = path[i], b = path[i + 1];
        if (a < 0 || a >= n || b < 0 || b >= n || chain.p(a, b) <= 0.0)
          throw Error(ErrorKind::Validation,
                      "path " + pair_name(x, y) + " uses zero-probability edge (" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
}

double edge_congestion(const MarkovChain& chain, const PathFamily& family) {
  validate_family(chain, family);
  int n = chain.states();
  std::vector<double> load(static_cast<size_t>(n) * n, 0.0);
  std::vector<size_t> used;  // per-path edge set (membership, not multiplicity)
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const auto& path = family.at(x, y);
      double w = chain.pi(x) * chain.pi(y);
      used.clear();
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        size_t e = pair_index(n, path[i], path[i + 1]);
        if (std::find(used.begin(), used.end(), e) == used.end()) {
          used.push_back(e);
          load[e] += w;
        }
      }
    }
  double rho = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      size_t e = pair_index(n, a, b);
      if (load[e] > 0.0)
        rho = std::max(rho, load[e] / (chain.pi(a) * chain.p(a, b)));
    }
  return rho;
}

double vertex_congestion(const MarkovChain& chain, const PathFamily& family) {
  validate_family(chain, family);
  int n = chain.states();
  std::vector<double> load(n, 0.0);
  std::vector<char> in_fwd(n, 0), in_rev(n, 0);
  std::vector<int> touched_fwd, touched_rev;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const auto& fwd = family.at(x, y);
      const auto& rev = family.at(y, x);
      double w = chain.pi(x) * chain.pi(y);
      for_each_distinct(fwd, in_fwd, touched_fwd, [](int) {});
      for_each_distinct(rev, in_rev, touched_rev, [](int) {});
      // Re-mark: for_each_distinct cleared them; mark directly instead.
      for (int v : touched_fwd) in_fwd[v] = 1;
      for (int v : touched_rev) in_rev[v] = 1;
      // Both orderings (x,y) and (y,x) carry weight w = pi(x)pi(y).
      for (int v : touched_fwd)
        load[v] += in_rev[v] ? 0.5 * w : w;
      for (int v : touched_rev)
        load[v] += in_fwd[v] ? 0.5 * w : w;
      for (int v : touched_fwd) in_fwd[v] = 0;
      for (int v : touched_rev) in_rev[v] = 0;
    }
  double rho = 0.0;
  for (int v = 0; v < n; ++v) rho = std::max(rho, load[v] / chain.pi(v));
  return rho;
}

PathStats path_stats(const MarkovChain& chain, const PathFamily& family) {
  validate_family(chain, family);
  int n = chain.states();
  PathStats stats;
  stats.edge_congestion = edge_congestion(chain, family);
  stats.vertex_congestion = vertex_congestion(chain, family);
  stats.boundary_prob = boundary_prob(chain, family);

  double len_acc = 0.0, pair_mass = 0.0, vertex_acc = 0.0;
  std::vector<char> mark(n, 0);
  std::vector<int> touched;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const auto& path = family.at(x, y);
      double w = chain.pi(x) * chain.pi(y);
      double len = static_cast<double>(path.size()) - 1.0;
      stats.max_len = std::max(stats.max_len, len);
      len_acc += w * len;
      pair_mass += w;
      int distinct_nonstart = 0;
      for_each_distinct(path, mark, touched, [&](int v) {
        if (v != x) ++distinct_nonstart;
      });
      vertex_acc += w * distinct_nonstart;
    }
  stats.avg_len = len_acc / pair_mass;
  stats.avg_vertex_congestion = vertex_acc;
  return stats;
}

double boundary_prob(const MarkovChain& chain, const PathFamily& family) {
  validate_family(chain, family);
  double p0 = 1.0;
  bool any = false;
  for (const auto& path : family.paths)
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      p0 = std::min(p0, chain.p(path[i], path[i + 1]));
      any = true;
    }
  if (!any) throw Error(ErrorKind::Validation, "family uses no edges");
  return p0;
}

AltPathFamily alternating_paths(const MarkovChain& chain) {
  int n = chain.states();
  AltPathFamily family;
  family.n = n;
  family.paths.resize(static_cast<size_t>(n) * n);

  // Product graph over (state, parity): parity 0 takes a P edge, parity 1 a
  // P* edge; a valid alternating path ends at parity 1.
  std::vector<int> parent(2 * n);
  std::vector<int> failures;
  for (int x = 0; x < n; ++x) {
    std::fill(parent.begin(), parent.end(), -2);
    parent[2 * x] = -1;
    std::deque<int> queue{2 * x};
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      int v = node / 2, parity = node % 2;
      for (int w = 0; w < n; ++w) {
        bool edge = parity == 0 ? chain.p(v, w) > 0.0 : chain.p(w, v) > 0.0;
        if (!edge) continue;
        int next = 2 * w + (1 - parity);
        if (parent[next] == -2) {
          parent[next] = node;
          queue.push_back(next);
        }
      }
    }
    for (int y = 0; y < n; ++y) {
      int target = 2 * y + 1;
      if (parent[target] == -2) {
        failures.push_back(x);
        failures.push_back(y);
        continue;
      }
      std::vector<int> seq;
      for (int node = target; node != -1; node = parent[node])
        seq.push_back(node / 2);
      std::reverse(seq.begin(), seq.end());
      family.paths[pair_index(n, x, y)] = std::move(seq);
    }
  }
  if (!failures.empty()) {
    std::string msg = "no odd alternating path for pair " +
                      pair_name(failures[0], failures[1]);
    if (failures.size() > 2)
      msg += " (and " + std::to_string(failures.size() / 2 - 1) + " more)";
    throw Error(ErrorKind::Construction, msg);
  }
  return family;
}

AltPathFamily alternating_from_plain(const MarkovChain& chain,
                                     const PathFamily& family) {
  if (!(chain.alpha() > 0.0))
    throw Error(ErrorKind::Construction,
                "derived alternating paths need a self-loop at every state");
  validate_family(chain, family);
  int n = chain.states();
  AltPathFamily out;
  out.n = n;
  out.paths.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      // Reverse of gamma_yx, each vertex doubled: loop (P), then step (P*).
      const auto& back = family.at(y, x);
      std::vector<int> seq;
      if (x == y) {
        seq = {x, x};
      } else {
        seq.reserve(2 * back.size());
        for (auto it = back.rbegin(); it != back.rend(); ++it) {
          seq.push_back(*it);
          seq.push_back(*it);
        }
      }
      out.paths[pair_index(n, x, y)] = std::move(seq);
    }
  validate_alt_family(chain, out);
  return out;
}

void validate_alt_family(const MarkovChain& chain, const AltPathFamily& family) {
  int n = chain.states();
  if (family.n != n || family.paths.size() != static_cast<size_t>(n) * n)
    throw Error(ErrorKind::Validation, "alternating family shape mismatch");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& seq = family.at(x, y);
      if (seq.size() < 2 || seq.size() % 2 != 0)
        throw Error(ErrorKind::Validation,
                    "alternating path " + pair_name(x, y) +
                        " must have odd edge count");
      if (seq.front() != x || seq.back() != y)
        throw Error(ErrorKind::Validation,
                    "alternating path " + pair_name(x, y) + " has wrong endpoints");
      for (size_t i = 0; i + 1 < seq.size(); ++i) {
        int a = seq[i], b = seq[i + 1];
        bool ok = i % 2 == 0 ? chain.p(a, b) > 0.0   // P step
                             : chain.p(b, a) > 0.0;  // P* step
        if (a < 0 || a >= n || b < 0 || b >= n || !ok)
          throw Error(ErrorKind::Validation,
                      "alternating path " + pair_name(x, y) +
                          " uses an invalid edge at position " + std::to_string(i));
      }
    }
}

AltStats alt_stats(const MarkovChain& chain, const AltPathFamily& family) {
  validate_alt_family(chain, family);
  int n = chain.states();
  std::vector<double> load(n, 0.0);
  std::vector<char> mark(n, 0);
  std::vector<int> touched;
  double p0 = 1.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& seq = family.at(x, y);
      double w = chain.pi(x) * chain.pi(y);
      touched.clear();
      for (size_t i = 1; i < seq.size(); i += 2) {
        int v = seq[i];
        if (!mark[v]) {
          mark[v] = 1;
          touched.push_back(v);
          load[v] += w;
        }
      }
      for (int v : touched) mark[v] = 0;
      for (size_t i = 0; i + 1 < seq.size(); ++i) {
        // P edge (a,b) regardless of step direction; score P*(b,a).
        int a = i % 2 == 0 ? seq[i] : seq[i + 1];
        int b = i % 2 == 0 ? seq[i + 1] : seq[i];
        p0 = std::min(p0, chain.pi(a) * chain.p(a, b) / chain.pi(b));
      }
    }
  AltStats stats;
  for (int v = 0; v < n; ++v)
    stats.vertex_congestion = std::max(stats.vertex_congestion, load[v] / chain.pi(v));
  stats.reversed_boundary = p0;
  return stats;
}

CayleyPaths cayley_word_paths(const GroupPresentation& group,
                              const MarkovChain& chain) {
  int n = group.order;
  if (chain.states() != n)
    throw Error(ErrorKind::Usage, "chain does not match the group order");
  int gens = static_cast<int>(group.generators.size());

  // Shortest word per element: breadth-first over right multiplication,
  // generators tried in list order.
  std::vector<int> parent(n, -2), letter(n, -1);
  parent[group.identity] = -1;
  std::deque<int> queue{group.identity};
  while (!queue.empty()) {
    int g = queue.front();
    queue.pop_front();
    for (int k = 0; k < gens; ++k) {
      int h = group.times(g, group.generators[k]);
      if (parent[h] == -2) {
        parent[h] = g;
        letter[h] = k;
        queue.push_back(h);
      }
    }
  }

  CayleyPaths result;
  result.words.resize(n);
  result.occurrences.assign(n, std::vector<int>(gens, 0));
  for (int g = 0; g < n; ++g) {
    if (parent[g] == -2)
      throw Error(ErrorKind::Construction,
                  "element " + group.names[g] + " is not a product of generators");
    std::vector<int> word;
    for (int h = g; parent[h] != -1; h = parent[h]) word.push_back(letter[h]);
    std::reverse(word.begin(), word.end());
    for (int k : word) ++result.occurrences[g][k];
    result.diameter = std::max(result.diameter, static_cast<int>(word.size()));
    result.words[g] = std::move(word);
  }

  result.family.n = n;
  result.family.paths.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      int g = group.times(group.inverse(x), y);
      std::vector<int> path{x};
      int v = x;
      for (int k : result.words[g]) {
        v = group.times(v, group.generators[k]);
        path.push_back(v);
      }
      result.family.paths[pair_index(n, x, y)] = std::move(path);
    }
  validate_family(chain, result.family);
  return result;
}

CayleyAltPaths cayley_alternating_paths(const GroupPresentation& group,
                                        const MarkovChain& chain) {
  int n = group.order;
  if (chain.states() != n)
    throw Error(ErrorKind::Usage, "chain does not match the group order");
  int gens = static_cast<int>(group.generators.size());
  std::vector<int> inv(gens);
  for (int k = 0; k < gens; ++k) inv[k] = group.inverse(group.generators[k]);

  // Shortest odd alternating word per element: letters from S at odd steps
  // and from S^{-1} at even steps; search over (element, parity).
  std::vector<int> parent(2 * n, -2), letter(2 * n, -1);
  int start = 2 * group.identity;
  parent[start] = -1;
  std::deque<int> queue{start};
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    int g = node / 2, parity = node % 2;
    for (int k = 0; k < gens; ++k) {
      int h = group.times(g, parity == 0 ? group.generators[k] : inv[k]);
      int next = 2 * h + (1 - parity);
      if (parent[next] == -2) {
        parent[next] = node;
        letter[next] = k;
        queue.push_back(next);
      }
    }
  }

  std::vector<std::vector<int>> words(n);
  int diameter = 0;
  for (int g = 0; g < n; ++g) {
    int target = 2 * g + 1;
    if (parent[target] == -2)
      throw Error(ErrorKind::Construction,
                  "element " + group.names[g] +
                      " is unreachable by odd alternating words");
    std::vector<int> word;
    for (int node = target; parent[node] != -1; node = parent[node])
      word.push_back(letter[node]);
    std::reverse(word.begin(), word.end());
    diameter = std::max(diameter, static_cast<int>(word.size()));
    words[g] = std::move(word);
  }

  CayleyAltPaths result;
  result.diameter = diameter;
  result.family.n = n;
  result.family.paths.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int g = group.times(group.inverse(x), y);
      std::vector<int> seq{x};
      int v = x;
      for (size_t i = 0; i < words[g].size(); ++i) {
        int k = words[g][i];
        v = group.times(v, i % 2 == 0 ? group.generators[k] : inv[k]);
        seq.push_back(v);
      }
      result.family.paths[pair_index(n, x, y)] = std::move(seq);
    }
  validate_alt_family(chain, result.family);
  return result;
}

namespace {

template <typename PushPath>
void parse_path_lines(std::string_view text, int n, PushPath&& push) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw != "path")
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(lineno) + ": expected 'path'");
    int x, y;
    if (!(ls >> x >> y))
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(lineno) + ": expected path <x> <y> ...");
    std::vector<int> verts;
    int v;
    while (ls >> v) verts.push_back(v);
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(lineno) + ": endpoint out of range");
    push(lineno, x, y, std::move(verts));
  }
}

}  // namespace

PathFamily parse_path_family(std::string_view text, const MarkovChain& chain) {
  int n = chain.states();
  PathFamily family;
  family.n = n;
  family.paths.resize(static_cast<size_t>(n) * n);
  std::vector<char> have(static_cast<size_t>(n) * n, 0);
  parse_path_lines(text, n, [&](int lineno, int x, int y, std::vector<int> verts) {
    if (have[pair_index(n, x, y)])
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(lineno) + ": duplicate pair");
    have[pair_index(n, x, y)] = 1;
    family.paths[pair_index(n, x, y)] = std::move(verts);
  });
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && !have[pair_index(n, x, y)])
        throw Error(ErrorKind::Validation, "missing path for pair " + pair_name(x, y));
  validate_family(chain, family);
  return family;
}

AltPathFamily parse_alt_family(std::string_view text, const MarkovChain& chain) {
  int n = chain.states();
  AltPathFamily family;
  family.n = n;
  family.paths.resize(static_cast<size_t>(n) * n);
  std::vector<char> have(static_cast<size_t>(n) * n, 0);
  parse_path_lines(text, n, [&](int lineno, int x, int y, std::vector<int> verts) {
    if (have[pair_index(n, x, y)])
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(lineno) + ": duplicate pair");
    have[pair_index(n, x, y)] = 1;
    family.paths[pair_index(n, x, y)] = std::move(verts);
  });
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!have[pair_index(n, x, y)])
        throw Error(ErrorKind::Validation,
                    "missing alternating path for pair " + pair_name(x, y));
  validate_alt_family(chain, family);
  return family;
}

std::string format_path_family(const PathFamily& family) {
  std::string out;
  for (int x = 0; x < family.n; ++x)
    for (int y = 0; y < family.n; ++y) {
      if (x == y) continue;
      out += "path " + std::to_string(x) + " " + std::to_string(y);
      for (int v : family.at(x, y)) out += " " + std::to_string(v);
      out += "\n";
    }
  return out;
}

}  // namespace mcmix
