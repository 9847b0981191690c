#include "mlab/ksz.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "mlab/catalog.hpp"
#include "mlab/numeric.hpp"

using namespace mlab;

namespace {

// independent oracle: X(omega, x) summed directly from the definition
Scalar direct_process_value(const SignTensor& eps,
                            const RepetitionPattern& pattern,
                            const std::vector<Vector>& x) {
  const auto cum = pattern.cumulative();
  Scalar acc(0.0);
  std::vector<int> idx(static_cast<std::size_t>(eps.k), 0);
  for (std::size_t flat = 0; flat < eps.signs.size(); ++flat) {
    std::size_t rest = flat;
    for (int l = eps.k - 1; l >= 0; --l) {
      idx[static_cast<std::size_t>(l)] =
          static_cast<int>(rest % static_cast<std::size_t>(eps.dim));
      rest /= static_cast<std::size_t>(eps.dim);
    }
    Scalar term(static_cast<double>(eps.signs[flat]), 0.0);
    int slot = 0;
    for (int l = 0; l < eps.k; ++l)
      for (; slot < cum[static_cast<std::size_t>(l)]; ++slot)
        term *= x[static_cast<std::size_t>(slot)]
                 [static_cast<std::size_t>(idx[static_cast<std::size_t>(l)])];
    acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("repetition pattern bookkeeping") {
  const auto p = RepetitionPattern::parse("2,1");
  CHECK(p.k() == 2);
  CHECK(p.n() == 3);
  CHECK(p.cumulative() == std::vector<int>{2, 3});
  CHECK(p.to_string() == "2,1");
  CHECK_THROWS_AS(RepetitionPattern::parse("2,0"), invalid_input);
  CHECK_THROWS_AS(RepetitionPattern::parse("x"), invalid_input);
}

TEST_CASE("sign tensors are fair and reproducible") {
  const auto a = sample_sign_tensor(1, 1, 7);
  CHECK(a.signs.size() == 1);
  CHECK((a.signs[0] == 1 || a.signs[0] == -1));

  const auto b = sample_sign_tensor(5, 2, 123);
  const auto c = sample_sign_tensor(5, 2, 123);
  CHECK(b.signs == c.signs);

  // CLT bound: |mean| <= 3/sqrt(100 * 1024) ~ 0.0094 < 0.02
  double acc = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = sample_sign_tensor(32, 2, seed);
    for (auto v : s.signs) acc += v;
  }
  CHECK(std::abs(acc / (100.0 * 1024.0)) <= 0.02);

  CHECK_THROWS_AS(sample_sign_tensor(2, 25, 1), guard_error);
}

TEST_CASE("process tensor structure") {
  // k = n: the tensor is exactly eps
  const auto eps = sample_sign_tensor(3, 2, 5);
  const auto t = ksz_process_tensor(eps, RepetitionPattern({1, 1}));
  for (std::size_t i = 0; i < eps.signs.size(); ++i)
    CHECK(t.entries()[i] == Scalar(static_cast<double>(eps.signs[i]), 0.0));

  // k = 1, n = 2: nonzeros only on the diagonal
  const auto eps1 = sample_sign_tensor(2, 1, 9);
  const auto t1 = ksz_process_tensor(eps1, RepetitionPattern({2}));
  CHECK(t1.order() == 2);
  CHECK(t1.at({1, 2}) == Scalar(0.0));
  CHECK(t1.at({2, 1}) == Scalar(0.0));
  CHECK(t1.at({1, 1}) == Scalar(static_cast<double>(eps1.signs[0]), 0.0));
  CHECK(t1.at({2, 2}) == Scalar(static_cast<double>(eps1.signs[1]), 0.0));

  // nonzero count is N^k for any pattern
  const auto eps2 = sample_sign_tensor(3, 2, 11);
  for (const auto& pattern : {RepetitionPattern({2, 1}), RepetitionPattern({1, 2}),
                              RepetitionPattern({2, 2})}) {
    const auto tp = ksz_process_tensor(eps2, pattern);
    int nonzeros = 0;
    for (auto z : tp.entries())
      if (z != Scalar(0.0)) ++nonzeros;
    CHECK(nonzeros == 9);
  }

  CHECK_THROWS_AS(ksz_process_tensor(eps, RepetitionPattern({2})), invalid_input);
}

TEST_CASE("process tensor eval equals the direct sum formula") {
  std::mt19937_64 eng(21);
  const std::vector<RepetitionPattern> patterns = {
      RepetitionPattern({1}), RepetitionPattern({2}), RepetitionPattern({3}),
      RepetitionPattern({1, 1}), RepetitionPattern({2, 1}),
      RepetitionPattern({1, 2}), RepetitionPattern({1, 1, 1}),
      RepetitionPattern({2, 2})};
  for (const auto& pattern : patterns) {
    for (int dim = 1; dim <= 4; ++dim) {
      const auto eps = sample_sign_tensor(dim, pattern.k(), eng());
      const auto t = ksz_process_tensor(eps, pattern);
      std::vector<Vector> x;
      for (int s = 0; s < pattern.n(); ++s) {
        Vector v(static_cast<std::size_t>(dim));
        for (auto& z : v)
          z = Scalar(2.0 * static_cast<double>(eng() >> 11) /
                             9007199254740992.0 - 1.0,
                     0.0);
        x.push_back(std::move(v));
      }
      const Scalar via_tensor = t.eval(x);
      const Scalar direct = direct_process_value(eps, pattern, x);
      CHECK(std::abs(via_tensor - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("diagonal count identity N^{k/r}") {
  const auto eps = sample_sign_tensor(4, 2, 3);
  const auto t = ksz_process_tensor(eps, RepetitionPattern({2, 1}));
  for (double r : {1.0, 4.0 / 3.0, 2.0}) {
    CHECK(mixed_power_sum(t, r) ==
          doctest::Approx(std::pow(4.0, 2.0 / r)).epsilon(1e-13));
  }
}

TEST_CASE("L2 bound and the exact second moment") {
  CHECK(l2_norm_bound(RepetitionPattern({1, 1}), 4) == doctest::Approx(4.0));
  CHECK(l2_norm_bound(RepetitionPattern({1}), 9) == doctest::Approx(3.0));

  const auto pattern = RepetitionPattern({2, 1});
  const std::vector<Vector> ones(3, Vector(4, Scalar(1.0)));
  CHECK(process_second_moment(pattern, 4, ones) ==
        doctest::Approx(16.0).epsilon(1e-15));  // N^k exactly

  // any unit-ball input stays under N^k
  std::mt19937_64 eng(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vector> x;
    for (int s = 0; s < 3; ++s) {
      Vector v(4);
      for (auto& z : v) z = Scalar((eng() >> 63) ? 1.0 : -1.0, 0.0);
      x.push_back(std::move(v));
    }
    const double m2 = process_second_moment(pattern, 4, x);
    CHECK(m2 <= 16.0 * (1.0 + 1e-12));
    CHECK(std::sqrt(m2) <= l2_norm_bound(pattern, 4) * (1.0 + 1e-12));
  }
}

TEST_CASE("psi2 estimator closed forms") {
  // constant samples |X| = a: solve exp(a^2/c^2) - 1 = 1 => c = a/sqrt(ln 2)
  const std::vector<double> constant(50, 2.0);
  const auto est = psi2_norm_estimate(constant, 1e-12);
  CHECK(est.value == doctest::Approx(2.0 / std::sqrt(std::log(2.0))).epsilon(1e-9));

  const std::vector<double> zeros(10, 0.0);
  CHECK(psi2_norm_estimate(zeros).value == 0.0);

  CHECK_THROWS_AS(psi2_norm_estimate(std::vector<double>{}), invalid_input);
}

TEST_CASE("psi2 estimator on seeded normal samples") {
  // Box-Muller from a fixed seed; E exp(g^2/c^2) = (1-2/c^2)^{-1/2} = 2 at
  // c^2 = 8/3
  std::mt19937_64 eng(424242);
  auto uniform = [&]() {
    return (static_cast<double>(eng() >> 11) + 0.5) / 9007199254740992.0;
  };
  std::vector<double> samples;
  samples.reserve(100000);
  while (samples.size() < 100000) {
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    samples.push_back(r * std::cos(2.0 * M_PI * u2));
    samples.push_back(r * std::sin(2.0 * M_PI * u2));
  }
  samples.resize(100000);
  const auto est = psi2_norm_estimate(samples, 1e-10);
  CHECK(est.value == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(0.05 / 1.63));
}

TEST_CASE("psi2 estimator scales linearly") {
  std::mt19937_64 eng(77);
  std::vector<double> samples(500);
  for (auto& v : samples)
    v = 2.0 * static_cast<double>(eng() >> 11) / 9007199254740992.0 - 1.0;
  const double base = psi2_norm_estimate(samples, 1e-11).value;
  for (auto& v : samples) v *= 3.5;
  const double scaled = psi2_norm_estimate(samples, 1e-11).value;
  CHECK(scaled == doctest::Approx(3.5 * base).epsilon(1e-9));
}

TEST_CASE("net cardinality exact values") {
  CHECK(net_cardinality(1, 1) == "25");
  CHECK(net_cardinality(2, 1) == "6561");
  CHECK(net_cardinality(2, 2) == "43046721");
  // digit count check against the log-domain value
  const std::string big = net_cardinality(2, 8);  // 9^32
  const double digits = log_net_cardinality(2, 8) / std::log(10.0);
  CHECK(static_cast<int>(big.size()) == static_cast<int>(digits) + 1);
}

TEST_CASE("threshold lambda and the bracketing margin") {
  // n=2, N=1, C=1: sqrt(ln(1 + 6561))
  const double lam = threshold_lambda(2, 1, 3, 1.0);
  CHECK(lam == doctest::Approx(2.964633318560838).epsilon(1e-12));

  // homogeneity in the subgaussian constant
  CHECK(threshold_lambda(2, 4, 2, 2.0) ==
        doctest::Approx(2.0 * threshold_lambda(2, 4, 2, 1.0)).epsilon(1e-14));

  // large N: lambda -> C sqrt(2n ln(1+4n))
  const double limit = std::sqrt(2.0 * 2.0 * std::log(9.0));
  CHECK(threshold_lambda(2, 1000000, 2, 1.0) ==
        doctest::Approx(limit).epsilon(1e-9));

  for (int n : {1, 2, 3}) {
    for (int dim : {1, 2, 8}) {
      const double l = threshold_lambda(n, dim, 2, 1.3);
      CHECK(threshold_margin(n, dim, 2, 1.3, l * (1.0 + 1e-9)) > 0.0);
      CHECK(threshold_margin(n, dim, 2, 1.3, l * (1.0 - 1e-3)) < 0.0);
    }
  }
}

TEST_CASE("ksz experiment: linear case is exact") {
  KszConfig cfg;
  cfg.draws = 3;
  cfg.seed = 1;
  const std::vector<int> dims = {2, 3, 4, 5};
  const auto result = ksz_experiment(RepetitionPattern({1}), dims, cfg);
  for (const auto& pt : result.points) {
    CHECK(pt.min_sup == doctest::Approx(static_cast<double>(pt.dim)).epsilon(1e-12));
    CHECK(pt.pass);
    CHECK(pt.exact_norm);
  }
  CHECK(result.slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ksz experiment is reproducible") {
  KszConfig cfg;
  cfg.draws = 4;
  cfg.seed = 17;
  cfg.threads = 2;
  const std::vector<int> dims = {2, 3, 4};
  const auto a = ksz_experiment(RepetitionPattern({1, 1}), dims, cfg);
  cfg.threads = 1;
  const auto b = ksz_experiment(RepetitionPattern({1, 1}), dims, cfg);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].min_sup == b.points[i].min_sup);
    CHECK(a.points[i].bound == b.points[i].bound);
  }
  CHECK(a.slope == b.slope);
  CHECK_THROWS_AS(
      ksz_experiment(RepetitionPattern({1, 1}), std::vector<int>{2, 3}, cfg),
      invalid_input);
}

TEST_CASE("MLAB_THREADS caps the worker count") {
  setenv("MLAB_THREADS", "3", 1);
  CHECK(resolve_thread_count(0) == 3);
  unsetenv("MLAB_THREADS");
  CHECK(resolve_thread_count(2) == 2);
  CHECK(resolve_thread_count(0) >= 1);
}

TEST_CASE("exponent floor identities") {
  CHECK(exponent_floor(1) == 1.0);
  CHECK(exponent_floor(2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  for (int n = 1; n <= 20; ++n)
    CHECK(exponent_floor(n) == bh_exponent(n));
  CHECK_THROWS_AS(exponent_floor(0), invalid_input);
}
