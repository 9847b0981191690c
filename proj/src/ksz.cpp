#include "mlab/ksz.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "mlab/numeric.hpp"

namespace mlab {

namespace {

std::size_t checked_pow(int dim, int k, const char* what) {
  std::size_t s = 1;
  for (int i = 0; i < k; ++i) {
    s *= static_cast<std::size_t>(dim);
    if (s > (std::size_t{1} << 24))
      throw guard_error(std::string(what) + ": N^k exceeds the 2^24 size guard");
  }
  return s;
}

constexpr double sqrt_ln2 = 0.8325546111576977;  // sqrt(ln 2)

}  // namespace

RepetitionPattern::RepetitionPattern(std::vector<int> p) : parts(std::move(p)) {
  if (parts.empty()) throw invalid_input("repetition pattern needs k >= 1 parts");
  for (int v : parts)
    if (v < 1) throw invalid_input("repetition pattern parts must be positive");
}

RepetitionPattern RepetitionPattern::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw invalid_input("bad repetition pattern '" + text + "'");
    }
  }
  return RepetitionPattern(std::move(parts));
}

int RepetitionPattern::n() const {
  int s = 0;
  for (int v : parts) s += v;
  return s;
}

std::vector<int> RepetitionPattern::cumulative() const {
  std::vector<int> j(parts.size());
  int acc = 0;
  for (std::size_t l = 0; l < parts.size(); ++l) j[l] = acc += parts[l];
  return j;
}

std::string RepetitionPattern::to_string() const {
  std::string s;
  for (std::size_t l = 0; l < parts.size(); ++l) {
    if (l) s += ",";
    s += std::to_string(parts[l]);
  }
  return s;
}

SignTensor sample_sign_tensor(int dim, int k, std::uint64_t seed) {
  if (dim < 1 || k < 1) throw invalid_input("sample_sign_tensor: N, k >= 1");
  const std::size_t count = checked_pow(dim, k, "sample_sign_tensor");
  SignTensor eps;
  eps.dim = dim;
  eps.k = k;
  eps.seed = seed;
  eps.signs.resize(count);
  std::mt19937_64 eng(seed);
  for (auto& s : eps.signs) s = (eng() >> 63) ? 1 : -1;
  return eps;
}

CoefficientTensor ksz_process_tensor(const SignTensor& eps,
                                     const RepetitionPattern& pattern) {
  if (pattern.k() != eps.k)
    throw invalid_input("ksz_process_tensor: pattern k does not match the sign tensor");
  const int n = pattern.n();
  const int dim = eps.dim;
  checked_pow(dim, n, "ksz_process_tensor");
  CoefficientTensor t(n, dim, Field::real);
  std::vector<Scalar> entries(t.size(), Scalar(0.0));

  // one coefficient per group-index tuple i in [1,N]^k
  std::vector<int> group(static_cast<std::size_t>(eps.k), 0);  // 0-based
  const std::size_t count = eps.signs.size();
  for (std::size_t flat_i = 0; flat_i < count; ++flat_i) {
    std::size_t rest = flat_i;
    for (int l = eps.k - 1; l >= 0; --l) {
      group[static_cast<std::size_t>(l)] =
          static_cast<int>(rest % static_cast<std::size_t>(dim));
      rest /= static_cast<std::size_t>(dim);
    }
    std::size_t target = 0;
    for (int l = 0; l < eps.k; ++l)
      for (int rep = 0; rep < pattern.parts[static_cast<std::size_t>(l)]; ++rep)
        target = target * static_cast<std::size_t>(dim) +
                 static_cast<std::size_t>(group[static_cast<std::size_t>(l)]);
    entries[target] = Scalar(static_cast<double>(eps.signs[flat_i]), 0.0);
  }
  return CoefficientTensor::from_entries(n, dim, Field::real, std::move(entries));
}

double l2_norm_bound(const RepetitionPattern& pattern, int dim) {
  if (dim < 1) throw invalid_input("l2_norm_bound: N >= 1");
  return std::pow(static_cast<double>(dim), pattern.k() / 2.0);
}

double process_second_moment(const RepetitionPattern& pattern, int dim,
                             const std::vector<Vector>& x) {
  const int n = pattern.n();
  if (static_cast<int>(x.size()) != n)
    throw invalid_input("process_second_moment: expected one vector per slot");
  for (const auto& v : x)
    if (static_cast<int>(v.size()) != dim)
      throw invalid_input("process_second_moment: vector length mismatch");
  const std::size_t count = checked_pow(dim, pattern.k(), "process_second_moment");
  const auto cum = pattern.cumulative();
  return pairwise_sum<double>(count, [&](std::size_t flat_i) {
    std::size_t rest = flat_i;
    double monomial = 1.0;
    for (int l = pattern.k() - 1; l >= 0; --l) {
      const int il = static_cast<int>(rest % static_cast<std::size_t>(dim));
      rest /= static_cast<std::size_t>(dim);
      const int lo = l == 0 ? 0 : cum[static_cast<std::size_t>(l - 1)];
      for (int s = lo; s < cum[static_cast<std::size_t>(l)]; ++s)
        monomial *= std::abs(x[static_cast<std::size_t>(s)][static_cast<std::size_t>(il)]);
    }
    return monomial * monomial;
  });
}

Psi2Estimate psi2_norm_estimate(std::span<const double> samples, double tol) {
  if (samples.empty()) throw invalid_input("psi2_norm_estimate: no samples");
  if (!(tol > 0.0)) throw invalid_input("psi2_norm_estimate: tol must be > 0");
  double mx = 0.0;
  for (double v : samples) {
    if (!std::isfinite(v)) throw invalid_input("psi2_norm_estimate: non-finite sample");
    mx = std::max(mx, std::abs(v));
  }
  Psi2Estimate est;
  est.samples = samples.size();
  if (mx == 0.0) return est;  // identically zero

  const auto mean_psi2 = [&](double c) {
    const double inv = 1.0 / (c * c);
    const double s = pairwise_sum<double>(samples.size(), [&](std::size_t i) {
      return std::expm1(samples[i] * samples[i] * inv);
    });
    return s / static_cast<double>(samples.size());
  };

  double lo = mx / sqrt_ln2 * 1e-3;  // mean > 1 here
  double hi = mx / sqrt_ln2 * 1e+3;  // mean < 1 here
  while ((hi - lo) > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mean_psi2(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  est.value = hi;  // feasible side of the infimum
  est.bracket_width = (hi - lo) / hi;
  return est;
}

std::string net_cardinality(int n, int dim) {
  if (n < 1 || dim < 1) throw invalid_input("net_cardinality: n, N >= 1");
  mpz_t v;
  mpz_init(v);
  mpz_ui_pow_ui(v, static_cast<unsigned long>(1 + 4 * n),
                static_cast<unsigned long>(2) * static_cast<unsigned long>(n) *
                    static_cast<unsigned long>(dim));
  char* str = mpz_get_str(nullptr, 10, v);
  std::string out(str);
  void (*freefn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(str, out.size() + 1);
  mpz_clear(v);
  return out;
}

double log_net_cardinality(int n, int dim) {
  if (n < 1 || dim < 1) throw invalid_input("log_net_cardinality: n, N >= 1");
  return 2.0 * n * dim * std::log1p(4.0 * n);
}

double threshold_lambda(int n, int dim, int k, double c_sub) {
  if (k < 1) throw invalid_input("threshold_lambda: k >= 1");
  if (!(c_sub > 0.0)) throw invalid_input("threshold_lambda: c_sub > 0");
  const double lcard = log_net_cardinality(n, dim);
  const double ln1p = lcard + std::log1p(std::exp(-lcard));
  return c_sub * std::sqrt(ln1p / static_cast<double>(dim));
}

double threshold_margin(int n, int dim, int k, double c_sub, double lambda) {
  if (!(lambda > 0.0)) throw invalid_input("threshold_margin: lambda > 0");
  if (!(c_sub > 0.0)) throw invalid_input("threshold_margin: c_sub > 0");
  (void)k;
  const double t = lambda * lambda * static_cast<double>(dim) / (c_sub * c_sub);
  const double log_psi2 = t + std::log1p(-std::exp(-t));
  return log_psi2 - log_net_cardinality(n, dim);
}

int resolve_thread_count(int requested) {
  int threads = requested;
  if (threads <= 0) {
    if (const char* env = std::getenv("MLAB_THREADS")) threads = std::atoi(env);
    if (threads <= 0)
      threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  return std::max(1, threads);
}

KszResult ksz_experiment(const RepetitionPattern& pattern,
                         std::span<const int> dim_grid, const KszConfig& cfg) {
  if (dim_grid.size() < 3)
    throw invalid_input("ksz_experiment: need at least 3 grid points");
  for (std::size_t i = 1; i < dim_grid.size(); ++i)
    if (dim_grid[i] <= dim_grid[i - 1])
      throw invalid_input("ksz_experiment: N grid must be increasing");
  if (cfg.draws < 1) throw invalid_input("ksz_experiment: draws >= 1");

  const int n = pattern.n();
  const int k = pattern.k();
  KszResult result{pattern, {}, 0.0, cfg.c_sub};

  const int threads = resolve_thread_count(cfg.threads);

  for (int dim : dim_grid) {
    const bool exact =
        static_cast<long long>(dim) * (n - 1) <= cfg.guard_bits;
    std::vector<double> sup(static_cast<std::size_t>(cfg.draws), 0.0);

    auto run_draw = [&](int d) {
      const std::uint64_t draw_seed = cfg.seed + static_cast<std::uint64_t>(d);
      const SignTensor eps = sample_sign_tensor(dim, k, draw_seed);
      const CoefficientTensor t = ksz_process_tensor(eps, pattern);
      if (exact)
        sup[static_cast<std::size_t>(d)] =
            sup_norm_linf_exact(t, cfg.guard_bits).value;
      else
        sup[static_cast<std::size_t>(d)] =
            sup_norm_ascent(t, BallSpec{infinite_exponent}, cfg.restarts,
                            draw_seed)
                .value;
    };

    if (threads > 1 && cfg.draws > 1) {
      std::vector<std::thread> pool;
      std::size_t nthreads = std::min<std::size_t>(
          static_cast<std::size_t>(threads), static_cast<std::size_t>(cfg.draws));
      for (std::size_t w = 0; w < nthreads; ++w)
        pool.emplace_back([&, w]() {
          for (int d = static_cast<int>(w); d < cfg.draws;
               d += static_cast<int>(nthreads))
            run_draw(d);
        });
      for (auto& th : pool) th.join();
    } else {
      for (int d = 0; d < cfg.draws; ++d) run_draw(d);
    }

    KszPoint pt;
    pt.dim = dim;
    pt.draws = cfg.draws;
    pt.min_sup = *std::min_element(sup.begin(), sup.end());
    pt.bound = 2.0 * threshold_lambda(n, dim, k, cfg.c_sub) *
               std::pow(static_cast<double>(dim), (k + 1) / 2.0);
    pt.pass = pt.min_sup <= pt.bound;
    pt.exact_norm = exact;
    pt.seed = cfg.seed;
    result.points.push_back(pt);
  }

  std::vector<double> lx, ly;
  for (const auto& pt : result.points) {
    lx.push_back(std::log(static_cast<double>(pt.dim)));
    ly.push_back(std::log(pt.min_sup));
  }
  result.slope = ls_slope(lx, ly);
  return result;
}

double exponent_floor(int k) {
  if (k < 1) throw invalid_input("exponent_floor: k >= 1");
  return 2.0 * k / (k + 1.0);
}

}  // namespace mlab
