#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlab/norms.hpp"
#include "mlab/tensor.hpp"

namespace mlab {

// Slot-repetition pattern (n_1, ..., n_k): the arity-n form repeats the
// group value i_l across the n_l consecutive slots ending at
// j_l = n_1 + ... + n_l.
struct RepetitionPattern {
  std::vector<int> parts;

  explicit RepetitionPattern(std::vector<int> p);
  static RepetitionPattern parse(const std::string& text);  // "2,1"

  int k() const { return static_cast<int>(parts.size()); }
  int n() const;
  std::vector<int> cumulative() const;  // j_1, ..., j_k
  std::string to_string() const;
};

// Independent fair signs indexed by [1,N]^k, reproducible from the seed.
struct SignTensor {
  int dim = 0;
  int k = 0;
  std::vector<signed char> signs;  // N^k entries, each +/-1, row-major
  std::uint64_t seed = 0;
};

SignTensor sample_sign_tensor(int dim, int k, std::uint64_t seed);

// Coefficient tensor of the Bernoulli process
//   X(omega, x) = sum_{i in [1,N]^k} eps_i x^{(1)}_{i_1} ... x^{(j_1)}_{i_1}
//                 x^{(j_1+1)}_{i_2} ... :
// the coefficient at (a_1,...,a_n) is eps_i when each slot group is constant
// and 0 otherwise. Exactly N^k nonzero entries.
CoefficientTensor ksz_process_tensor(const SignTensor& eps,
                                     const RepetitionPattern& pattern);

// N^{k/2}, the Khinchin/L2 majorant of ||X(.,x)||_2 over the unit ball.
double l2_norm_bound(const RepetitionPattern& pattern, int dim);

// Exact second moment E|X(.,x)|^2 = sum_i (monomial_i(x))^2 (the signs are
// orthonormal). Equals N^k at the all-ones vector tuple.
double process_second_moment(const RepetitionPattern& pattern, int dim,
                             const std::vector<Vector>& x);

struct Psi2Estimate {
  double value = 0.0;
  std::size_t samples = 0;
  double bracket_width = 0.0;  // relative, at termination
};

// inf{c > 0 : mean(exp(X^2/c^2) - 1) <= 1} by bisection of the monotone
// map over the bracket [max|X|/sqrt(ln 2) * 1e-3, max|X|/sqrt(ln 2) * 1e3].
Psi2Estimate psi2_norm_estimate(std::span<const double> samples,
                                double tol = 1e-12);

// (1+4n)^{2nN} with delta = 1/(2n); exact, as a decimal string (the values
// overflow 64 bits immediately).
std::string net_cardinality(int n, int dim);

// ln((1+4n)^{2nN}) = 2nN ln(1+4n), for log-domain arithmetic.
double log_net_cardinality(int n, int dim);

// Least lambda with (1+4n)^{2nN} < exp(lambda^2 N / c_sub^2) - 1:
// lambda = c_sub sqrt(ln(1 + (1+4n)^{2nN}) / N), computed in the log domain.
// (k does not enter: R/A = lambda N^{(k+1)/2} / (c_sub N^{k/2}) cancels it.)
double threshold_lambda(int n, int dim, int k, double c_sub);

// Positive iff card(F) / psi2(R/A) < 1 at R = lambda N^{(k+1)/2},
// A = c_sub N^{k/2}; zero at lambda = threshold_lambda.
double threshold_margin(int n, int dim, int k, double c_sub, double lambda);

struct KszPoint {
  int dim = 0;
  int draws = 0;
  double min_sup = 0.0;  // min over draws of the estimated sup-norm
  double bound = 0.0;    // 2 lambda N^{(k+1)/2}
  bool pass = false;     // min_sup <= bound
  bool exact_norm = false;
  std::uint64_t seed = 0;
};

struct KszResult {
  RepetitionPattern pattern;
  std::vector<KszPoint> points;
  double slope = 0.0;  // log-log fit of min_sup against N
  double c_sub = 0.0;
};

struct KszConfig {
  int draws = 200;
  std::uint64_t seed = 42;
  double c_sub = 1.6329931618554521;  // sqrt(8/3), the Gaussian psi2 value
  int restarts = 20;                  // ascent restarts past the guard
  int guard_bits = 24;                // exact enumeration while 2^{N(n-1)} <= 2^guard_bits
  int threads = 0;                    // 0: MLAB_THREADS or hardware count
};

// Per N: min over draws of the sup-norm of the random form (exact
// enumeration inside the guard, ascent beyond it), checked against the
// existence bound 2 lambda N^{(k+1)/2}; then the fitted log-log slope.
// Draw d uses seed cfg.seed + d.
KszResult ksz_experiment(const RepetitionPattern& pattern,
                         std::span<const int> dim_grid, const KszConfig& cfg);

// 2k/(k+1): no exponent below this admits an N-independent bound.
double exponent_floor(int k);

int resolve_thread_count(int requested);

}  // namespace mlab
