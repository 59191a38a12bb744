#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcmix {

enum class ErrorKind {
  Parse,        // malformed input text
  Validation,   // numeric contract violation (row sums, ranges, duplicates)
  Ergodicity,   // not strongly connected, or stationary solve failed
  Cap,          // state count exceeds an enumeration cap
  Construction, // a requested object cannot be built (e.g. no alternating path)
  Usage,        // bad argument or argument combination
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

namespace tol {
inline constexpr double kRowSum = 1e-9;       // row-stochasticity
inline constexpr double kDistSum = 1e-12;     // distribution normalization
inline constexpr double kStationary = 1e-10;  // per-coordinate pi*P = pi
inline constexpr double kIdentity = 1e-12;    // algebraic identities
inline constexpr double kLemma = 1e-10;       // lemma slack
}  // namespace tol

// Hard limit for dense chain storage; subset enumeration has its own cap.
inline constexpr int kMaxStates = 256;

/// Finite ergodic Markov kernel: a row-stochastic matrix together with its
/// stationary distribution. Construction validates
///   - each row sums to 1 within 1e-9 and entries lie in [0,1],
///   - the digraph of strictly positive transitions is strongly connected,
///   - pi is strictly positive, sums to 1, and satisfies pi*P = pi within
///     1e-10 per coordinate (pi is solved for when not supplied).
/// Aperiodicity is NOT required; periodic chains are representable and the
/// analysis routines handle non-convergence explicitly.
/// Instances are immutable and safe to share across threads.
class MarkovChain {
public:
  /// Build from a row-major n x n matrix. If `pi` is absent it is computed
  /// by a direct linear solve (exact uniform for doubly stochastic input).
  static MarkovChain from_matrix(int n, std::vector<double> p,
                                 std::optional<std::vector<double>> pi = {});

  /// Parse the line-oriented chain file format:
  ///   states <n>
  ///   pi <w_0> ... <w_{n-1}>        (optional)
  ///   edge <i> <j> <p>              (one per nonzero transition)
  /// '#' starts a comment; errors carry 1-based line numbers.
  static MarkovChain parse(std::string_view text);

  /// Emit the chain file format with 17 significant digits, so that
  /// parse(format()) reproduces every probability bit-exactly.
  std::string format() const;

  int states() const { return n_; }
  double p(int i, int j) const { return p_[static_cast<size_t>(i) * n_ + j]; }
  std::span<const double> row(int i) const {
    return {p_.data() + static_cast<size_t>(i) * n_, static_cast<size_t>(n_)};
  }
  const std::vector<double>& matrix() const { return p_; }
  double pi(int v) const { return pi_[v]; }
  const std::vector<double>& stationary() const { return pi_; }

  /// Minimal holding probability: min of the diagonal, exactly.
  double alpha() const { return alpha_; }

  /// Time-reversal P*(x,y) = pi(y) P(y,x) / pi(x); shares pi.
  MarkovChain reversal() const;

private:
  MarkovChain() = default;
  int n_ = 0;
  std::vector<double> p_;
  std::vector<double> pi_;
  double alpha_ = 0.0;
};

/// Solve pi * P = pi, sum(pi) = 1 by Gaussian elimination (partial pivoting).
/// Requires strong connectivity of the positive-transition digraph; works for
/// periodic chains as well. Throws Ergodicity on a singular system or a
/// non-positive solution, with the residual in the message.
std::vector<double> stationary_distribution(int n, const std::vector<double>& p);

/// Validate a probability vector: non-negative, sums to 1 within 1e-12.
void validate_distribution(std::span<const double> w);

/// Chi-square deviation from stationarity: || sigma/pi - 1 ||_{2,pi}
/// = sqrt( sum_v pi(v) (sigma(v)/pi(v) - 1)^2 ).
double chi_square_distance(std::span<const double> sigma, const MarkovChain& chain);

struct MixingResult {
  bool reached = false;
  long steps = 0;  // meaningful only when reached
};

/// Empirical L2 mixing time from a point mass at `x`: the least number of
/// steps n >= 0 with chi_square_distance(delta_x P^n) <= eps, found by
/// iterated vector-matrix products. Non-convergence within `max_steps` is a
/// valid result (reached = false), not an error.
MixingResult empirical_mixing_time(const MarkovChain& chain, int x, double eps,
                                   long max_steps);

}  // namespace mcmix
