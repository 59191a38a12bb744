#include "mcmix/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mcmix {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

bool strongly_connected(int n, const std::vector<double>& p) {
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        double entry = transpose ? p[static_cast<size_t>(w) * n + v]
                                 : p[static_cast<size_t>(v) * n + w];
        if (entry > 0.0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reach(false) && reach(true);
}

bool doubly_stochastic(int n, const std::vector<double>& p) {
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += p[static_cast<size_t>(i) * n + j];
    if (std::fabs(col - 1.0) > tol::kDistSum) return false;
  }
  return true;
}

}  // namespace

std::vector<double> stationary_distribution(int n, const std::vector<double>& p) {
  // Solve (P^T - I) x = 0 with the last equation replaced by sum(x) = 1.
  std::vector<double> a(static_cast<size_t>(n) * n);
  std::vector<double> b(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] =
          p[static_cast<size_t>(j) * n + i] - (i == j ? 1.0 : 0.0);
  for (int j = 0; j < n; ++j) a[static_cast<size_t>(n - 1) * n + j] = 1.0;
  b[n - 1] = 1.0;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[static_cast<size_t>(r) * n + col]) >
          std::fabs(a[static_cast<size_t>(piv) * n + col]))
        piv = r;
    if (std::fabs(a[static_cast<size_t>(piv) * n + col]) < 1e-14)
      throw Error(ErrorKind::Ergodicity,
                  "stationary solve: singular system (chain not ergodic?)");
    if (piv != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(piv) * n + j],
                  a[static_cast<size_t>(col) * n + j]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[static_cast<size_t>(r) * n + col] /
                 a[static_cast<size_t>(col) * n + col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<size_t>(r) * n + j] -=
            f * a[static_cast<size_t>(col) * n + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[static_cast<size_t>(r) * n + j] * x[j];
    x[r] = s / a[static_cast<size_t>(r) * n + r];
  }

  double sum = 0.0;
  for (double v : x) sum += v;
  for (double& v : x) v /= sum;

  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += x[i] * p[static_cast<size_t>(i) * n + j];
    residual = std::max(residual, std::fabs(acc - x[j]));
  }
  if (residual > tol::kStationary)
    throw Error(ErrorKind::Ergodicity,
                "stationary solve did not converge; residual " +
                    std::to_string(residual));
  for (double v : x)
    if (!(v > 0.0))
      throw Error(ErrorKind::Ergodicity,
                  "stationary solution has a non-positive coordinate");
  return x;
}

void validate_distribution(std::span<const double> w) {
  double sum = 0.0;
  for (double v : w) {
    if (v < 0.0 || v > 1.0)
      throw Error(ErrorKind::Validation, "distribution weight outside [0,1]");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > tol::kDistSum)
    throw Error(ErrorKind::Validation,
                "distribution sums to " + std::to_string(sum) + ", not 1");
}

MarkovChain MarkovChain::from_matrix(int n, std::vector<double> p,
                                     std::optional<std::vector<double>> pi) {
  if (n < 2) throw Error(ErrorKind::Validation, "need at least 2 states");
  if (n > kMaxStates)
    throw Error(ErrorKind::Validation,
                "state count " + std::to_string(n) + " exceeds limit " +
                    std::to_string(kMaxStates));
  if (p.size() != static_cast<size_t>(n) * n)
    throw Error(ErrorKind::Validation, "matrix size does not match state count");

  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      double v = p[static_cast<size_t>(i) * n + j];
      if (v < 0.0 || v > 1.0 + tol::kRowSum)
        throw Error(ErrorKind::Validation,
                    "transition probability outside [0,1] at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > tol::kRowSum)
      throw Error(ErrorKind::Validation,
                  "row " + std::to_string(i) + " sums to " + std::to_string(sum));
  }

  if (!strongly_connected(n, p))
    throw Error(ErrorKind::Ergodicity,
                "positive-transition digraph is not strongly connected");

  MarkovChain c;
  c.n_ = n;
  c.p_ = std::move(p);
  if (pi) {
    if (pi->size() != static_cast<size_t>(n))
      throw Error(ErrorKind::Validation, "pi length does not match state count");
    validate_distribution(*pi);
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += (*pi)[i] * c.p_[static_cast<size_t>(i) * n + j];
      if (std::fabs(acc - (*pi)[j]) > tol::kStationary)
        throw Error(ErrorKind::Validation,
                    "supplied pi is not stationary at coordinate " +
                        std::to_string(j));
      if (!((*pi)[j] > 0.0))
        throw Error(ErrorKind::Validation, "supplied pi has a zero coordinate");
    }
    c.pi_ = std::move(*pi);
  } else if (doubly_stochastic(n, c.p_)) {
    c.pi_.assign(n, 1.0 / n);
  } else {
    c.pi_ = stationary_distribution(n, c.p_);
  }

  c.alpha_ = c.p_[0];
  for (int v = 1; v < n; ++v)
    c.alpha_ = std::min(c.alpha_, c.p_[static_cast<size_t>(v) * n + v]);
  return c;
}

MarkovChain MarkovChain::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::optional<std::vector<double>> pi;
  std::vector<double> p;
  std::vector<char> seen;

  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "states") {
      if (n >= 0) fail("duplicate states line");
      if (!(ls >> n) || n < 2) fail("expected states <n> with n >= 2");
      if (n > kMaxStates) fail("state count exceeds limit");
      p.assign(static_cast<size_t>(n) * n, 0.0);
      seen.assign(static_cast<size_t>(n) * n, 0);
    } else if (kw == "pi") {
      if (n < 0) fail("pi before states");
      if (pi) fail("duplicate pi line");
      std::vector<double> w(n);
      for (int i = 0; i < n; ++i)
        if (!(ls >> w[i])) fail("pi needs " + std::to_string(n) + " weights");
      pi = std::move(w);
    } else if (kw == "edge") {
      if (n < 0) fail("edge before states");
      int i, j;
      double v;
      if (!(ls >> i >> j >> v)) fail("expected edge <i> <j> <p>");
      if (i < 0 || i >= n || j < 0 || j >= n) fail("edge index out of range");
      if (seen[static_cast<size_t>(i) * n + j])
        fail("duplicate edge " + std::to_string(i) + " " + std::to_string(j));
      seen[static_cast<size_t>(i) * n + j] = 1;
      p[static_cast<size_t>(i) * n + j] = v;
    } else {
      fail("unknown directive '" + kw + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing tokens");
  }
  if (n < 0) throw Error(ErrorKind::Parse, "missing states line");
  return from_matrix(n, std::move(p), std::move(pi));
}

std::string MarkovChain::format() const {
  std::string out = "states " + std::to_string(n_) + "\n";
  out += "pi";
  for (int v = 0; v < n_; ++v) {
    out += ' ';
    append_number(out, pi_[v]);
  }
  out += '\n';
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (p(i, j) > 0.0) {
        out += "edge " + std::to_string(i) + " " + std::to_string(j) + " ";
        append_number(out, p(i, j));
        out += '\n';
      }
  return out;
}

MarkovChain MarkovChain::reversal() const {
  std::vector<double> q(static_cast<size_t>(n_) * n_);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      q[static_cast<size_t>(x) * n_ + y] = pi_[y] * p(y, x) / pi_[x];
  return from_matrix(n_, std::move(q), pi_);
}

double chi_square_distance(std::span<const double> sigma, const MarkovChain& chain) {
  if (sigma.size() != static_cast<size_t>(chain.states()))
    throw Error(ErrorKind::Validation, "distribution length mismatch");
  double acc = 0.0;
  for (int v = 0; v < chain.states(); ++v) {
    double d = sigma[v] / chain.pi(v) - 1.0;
    acc += chain.pi(v) * d * d;
  }
  return std::sqrt(acc);
}

MixingResult empirical_mixing_time(const MarkovChain& chain, int x, double eps,
                                   long max_steps) {
  if (eps <= 0.0) throw Error(ErrorKind::Usage, "epsilon must be positive");
  if (x < 0 || x >= chain.states())
    throw Error(ErrorKind::Usage, "start state out of range");
  if (max_steps < 1) throw Error(ErrorKind::Usage, "max_steps must be >= 1");

  int n = chain.states();
  std::vector<double> cur(n, 0.0), next(n, 0.0);
  cur[x] = 1.0;
  if (chi_square_distance(cur, chain) <= eps) return {true, 0};
  for (long step = 1; step <= max_steps; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      double w = cur[i];
      if (w == 0.0) continue;
      auto row = chain.row(i);
      for (int j = 0; j < n; ++j) next[j] += w * row[j];
    }
    cur.swap(next);
    if (chi_square_distance(cur, chain) <= eps) return {true, step};
  }
  return {false, max_steps};
}

}  // namespace mcmix
