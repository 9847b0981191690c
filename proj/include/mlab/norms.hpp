#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mlab/tensor.hpp"

namespace mlab {

inline constexpr double infinite_exponent = std::numeric_limits<double>::infinity();

// Unit ball of l_p^N; p = infinity encodes the sup-norm ball.
struct BallSpec {
  double p = infinite_exponent;
};

struct NormResult {
  double value = 0.0;
  std::vector<Vector> certificate;  // one vector per slot, on the unit ball
  bool exact = false;               // true only for the real l_inf enumeration
};

// q* with 1/q + 1/q* = 1; conjugate(1) = inf, conjugate(inf) = 1.
double conjugate_exponent(double q);

// (sum_I |a_I|^r)^(1/r) over all coefficients. r > 0.
double mixed_power_sum(const CoefficientTensor& t, double r);

// Exact sup of |eval| over the product of real l_inf^N unit balls.
// The sup is attained at sign vectors; enumerates signs of the first m-1
// slots (first coordinate of the first slot fixed to +1 by symmetry) and
// closes the last slot analytically: sup_{|x|_inf<=1} |sum c_i x_i| = sum |c_i|.
// Guard: refuses when N(m-1) > guard_bits (default 24).
NormResult sup_norm_linf_exact(const CoefficientTensor& t, int guard_bits = 24);

// Certified lower bound on the sup-norm over the given ball (exact=false).
// Alternating maximization: with all slots but one fixed the optimal slot is
// closed-form; over the real l_p ball the maximizer of sum c_i x_i is
// x_i = sign(c_i)|c_i|^{p*-1}/||c||_{p*}^{p*-1} with value ||c||_{p*}; over
// the complex ball the magnitudes follow the same profile with phases
// aligned. Monotone in the objective; stops when the relative gain drops
// below rel_tol or after max_iters sweeps; best over seeded random
// unit-ball restarts.
NormResult sup_norm_ascent(const CoefficientTensor& t, BallSpec ball,
                           int restarts, std::uint64_t seed,
                           int max_iters = 500, double rel_tol = 1e-12);

// N^{(p-m)/p}, the Holder bound for a diagonal witness with N unit terms.
double holder_diag_bound(int dim, double p, int order);

// Exact weak-l_q norm of a finite sequence of vectors in l_inf^N:
// max_i (sum_j |x_j(i)|^q)^{1/q}. Empty sequence -> 0.
double weak_lq_norm_linf(const std::vector<Vector>& xs, double q);

// Lower bound on the weak-l_q norm over E = l_p^N (1 < p < infinity) by
// alternating maximization of |psi^T A phi| over the l_{p*} x l_{q*} balls,
// A_{ji} = x_j(i); monotone per iteration, best of restarts.
double weak_lq_norm_lp_estimate(const std::vector<Vector>& xs, double p,
                                double q, int restarts, std::uint64_t seed);

namespace detail {
// Maximizer of Re sum c_i x_i over the l_p unit ball together with the
// attained value ||c||_{p*}. Ties in sign(0) resolve to +1.
struct DualMax {
  Vector x;
  double value;
};
DualMax lp_dual_maximizer(const Vector& c, double p);
}  // namespace detail

}  // namespace mlab
