#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlab/ksz.hpp"
#include "mlab/norms.hpp"
#include "mlab/pairing.hpp"
#include "mlab/tensor.hpp"

namespace mlab {

// ---- exponent formulas ----

// 2m/(m+1), the sharp coefficient exponent for m-linear forms on l_inf.
double bh_exponent(int m);

// 2mp/(mp+p-2m) for p >= 2m (p = inf gives the l_inf limit 2m/(m+1)).
double hl_pp_exponent(int m, double p);

// p/(p-m) for m < p <= 2m.
double hl_dsp_exponent(int m, double p);

// ---- best known constants ----

// prod_{j=2}^{m} Gamma(2-1/j)^{j/(2-2j)}; empty product for m = 1.
double bh_constant_complex(int m);

// (sqrt 2)^{H_{m-1}} for 2 <= m <= 13 and the Gamma-product form for
// m >= 14 (the display's free k read as m); 1 for m = 1.
double bh_constant_real(int m);

double bh_constant(int m, Field field);

// ---- instances ----

enum class LhsKind {
  sigma_diagonal,    // sum over [1,N]^core with bijection tails
  pattern_diagonal,  // sum over group values of a repetition pattern
  pure_diagonal,     // sum over (i, ..., i)
};

// One checkable inequality: lhs at exponent rho against C * F(N) * ||U||.
struct InequalityInstance {
  std::string name;
  Field field = Field::real;
  int arity = 0;  // n, the tensor order
  int core = 0;   // m, the number of free indices on the left
  double p = infinite_exponent;  // domain exponent of the l_p^N balls
  double rho = 0.0;              // critical exponent
  double constant = 1.0;         // C
  bool constant_proven = false;  // paper-proven value (gates certification)
  std::function<double(int)> dim_factor;  // F(N) >= 1, nondecreasing
  LhsKind lhs = LhsKind::sigma_diagonal;
  std::optional<RepetitionPattern> pattern;  // pattern_diagonal only

  int bijection_slots() const { return arity - core; }
};

struct InstanceParams {
  int m = 2;       // core arity
  int n = 0;       // tensor arity; 0 means n = m
  double p = infinite_exponent;
  Field field = Field::real;
  std::optional<RepetitionPattern> pattern;  // mixed43; default (m-1, 1)
};

// Known names: littlewood43, bh, diag43, diagbh, mixed43, full43,
// hl-pp, hl-dsp, zalduendo.
InequalityInstance make_instance(const std::string& name,
                                 const InstanceParams& params);
std::vector<std::string> instance_names();

// One line per instance: name, m, n, p-domain, rho formula, C at the
// given core arity.
std::string catalog_listing(const InstanceParams& params);

// ---- checks ----

struct RatioReport {
  std::string instance;
  int arity = 0;
  int core = 0;
  double p = infinite_exponent;
  int dim = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  NormResult norm;
  double constant = 1.0;
  double dim_factor = 1.0;
  double ratio = 0.0;
  bool certified = false;        // exact norm was used
  bool constant_proven = false;  // with certified: ratio <= 1 is a theorem
};

// (sum over (i_1..i_m) in [1,N]^m, keeping tuples whose sigma images all
// land in [1,N], of |a_{i_1..i_m, sigma_1(i), ..}|^r)^{1/r}. With no
// bijections this is mixed_power_sum.
double diagonal_restriction_sum(const CoefficientTensor& t, int core,
                                const std::vector<Bijection>& sigmas, double r);

// (sum over i in [1,N]^k of |a at the pattern-expanded index|^r)^{1/r}.
double pattern_diagonal_sum(const CoefficientTensor& t,
                            const RepetitionPattern& pattern, double r);

enum class NormMethod { exact, ascent };

struct CheckOptions {
  NormMethod method = NormMethod::exact;
  int restarts = 20;
  std::uint64_t seed = 0;
  int guard_bits = 24;
};

RatioReport check_instance(const InequalityInstance& inst,
                           const CoefficientTensor& t,
                           const std::vector<Bijection>& sigmas,
                           const CheckOptions& opts = {});

// Diagonal witness of the optimality argument: a = 1 exactly at
// (i, i, sigma_1(i,i), ..., sigma_{order-2}(i,i)), i = 1..N. Requires the
// sigma images of the diagonal to be distinct and <= N.
CoefficientTensor prop90_witness(int dim, int order,
                                 const std::vector<Bijection>& sigmas);

// order-2 diagonal-first boxes: sigma_k(i,i) = i.
std::vector<Bijection> prop90_default_sigmas(int dim, int order);

// Diagonal-sum inequality with constant 1 over l_p^N (m < p); the norm is
// an ascent lower bound, so the report is never certified.
RatioReport zalduendo_check(const CoefficientTensor& t, double p,
                            int restarts = 20, std::uint64_t seed = 0);

// LHS (sum over core tuples of |U(x^{(1)}_{i_1},...,x^{(m)}_{i_m},
// x^{(m+1)}_{i_1..i_m},...)|^p)^{1/p} against
// C ||U|| prod_k ||core_k||_{w,q_k} prod ||tail_k||_{w,1}, weak norms over
// l_inf^N. Tail sequences are indexed by the core tuple, row-major.
double multiple_summing_ratio(const CoefficientTensor& t, int core,
                              const std::vector<std::vector<Vector>>& core_seqs,
                              const std::vector<std::vector<Vector>>& tail_seqs,
                              double p, std::span<const double> qs, double C,
                              const CheckOptions& opts = {});

// ---- exponent scans ----

enum class ScanDenominator { holder, exact, ascent };

struct ScanFamily {
  int core = 2;
  int order = 3;
  double p = infinite_exponent;
  std::function<CoefficientTensor(int)> tensor;            // N -> tensor
  std::function<std::vector<Bijection>(int)> sigmas;       // N -> sigmas
};

ScanFamily prop90_family(int order, double p);

struct ScanPoint {
  double s = 0.0;
  double slope = 0.0;
  bool bounded = false;  // slope <= 1e-6
};

// For each s: least-squares slope of log(lhs(N)/denom(N)) against log N.
// Needs >= 3 increasing N values.
std::vector<ScanPoint> exponent_scan(const ScanFamily& family,
                                     std::span<const double> s_grid,
                                     std::span<const int> dim_grid,
                                     ScanDenominator denom,
                                     const CheckOptions& opts = {});

}  // namespace mlab
