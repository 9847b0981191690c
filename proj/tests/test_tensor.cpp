#include "mlab/tensor.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mlab/numeric.hpp"

using namespace mlab;

namespace {

CoefficientTensor littlewood_matrix() {
  // [[1,1],[1,-1]]
  return CoefficientTensor::from_fn(2, 2, Field::real, [](const MultiIndex& i) {
    return Scalar(i[0] == 2 && i[1] == 2 ? -1.0 : 1.0, 0.0);
  });
}

// independent oracle: plain nested-loop evaluation, no pairwise tree
Scalar naive_eval(const CoefficientTensor& t, const std::vector<Vector>& xs) {
  Scalar acc(0.0);
  const auto entries = t.entries();
  for (std::size_t flat = 0; flat < entries.size(); ++flat) {
    Scalar term = entries[flat];
    const MultiIndex idx = t.index_of(flat);
    for (int k = 0; k < t.order(); ++k)
      term *= xs[static_cast<std::size_t>(k)]
                 [static_cast<std::size_t>(idx[static_cast<std::size_t>(k)] - 1)];
    acc += term;
  }
  return acc;
}

Vector rv(std::initializer_list<double> vals) {
  Vector v;
  for (double x : vals) v.push_back(Scalar(x, 0.0));
  return v;
}

}  // namespace

TEST_CASE("from_fn stores coefficients verbatim") {
  const auto t = littlewood_matrix();
  CHECK(t.order() == 2);
  CHECK(t.dim() == 2);
  CHECK(t.at({1, 1}) == Scalar(1.0));
  CHECK(t.at({1, 2}) == Scalar(1.0));
  CHECK(t.at({2, 1}) == Scalar(1.0));
  CHECK(t.at({2, 2}) == Scalar(-1.0));

  const auto zero = CoefficientTensor::from_fn(
      3, 2, Field::real, [](const MultiIndex&) { return Scalar(0.0); });
  CHECK(zero.size() == 8);
  for (auto z : zero.entries()) CHECK(z == Scalar(0.0));

  const auto eye = CoefficientTensor::from_fn(2, 3, Field::real, [](const MultiIndex& i) {
    return Scalar(i[0] == i[1] ? 1.0 : 0.0, 0.0);
  });
  CHECK(eye.at({2, 2}) == Scalar(1.0));
  CHECK(eye.at({2, 3}) == Scalar(0.0));
}

TEST_CASE("from_fn rejects non-finite values naming the index") {
  CHECK_THROWS_WITH_AS(
      CoefficientTensor::from_fn(2, 2, Field::real,
                                 [](const MultiIndex& i) {
                                   return Scalar(i[0] == 2 && i[1] == 1
                                                     ? std::nan("")
                                                     : 0.0,
                                                 0.0);
                                 }),
      doctest::Contains("(2,1)"), invalid_input);
}

TEST_CASE("eval matches the hand-expanded Littlewood value") {
  const auto t = littlewood_matrix();
  // (x1+x2)(...): at x=(1,1), y=(1,-1): 1*1 + 1*(-1) + 1*1 - 1*(-1) = 2
  CHECK(t.eval({rv({1, 1}), rv({1, -1})}).real() == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(t.eval({rv({0, 0}), rv({1, -1})}) == Scalar(0.0));

  const auto eye = CoefficientTensor::from_fn(2, 2, Field::real, [](const MultiIndex& i) {
    return Scalar(i[0] == i[1] ? 1.0 : 0.0, 0.0);
  });
  CHECK(eye.eval({rv({1, 0}), rv({1, 0})}) == Scalar(1.0));
}

TEST_CASE("eval equals the naive oracle on random tensors") {
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(eng() % 3);
    const int dim = 1 + static_cast<int>(eng() % 4);
    const auto t = random_uniform_tensor(m, dim, eng());
    std::vector<Vector> xs;
    for (int s = 0; s < m; ++s) {
      Vector v(static_cast<std::size_t>(dim));
      for (auto& z : v)
        z = Scalar(static_cast<double>(static_cast<int>(eng() % 7)) - 3.0, 0.0);
      xs.push_back(std::move(v));
    }
    const Scalar a = t.eval(xs);
    const Scalar b = naive_eval(t, xs);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("eval round-trips basis tuples to coefficients") {
  const auto t = random_uniform_tensor(3, 3, 5);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const MultiIndex idx = t.index_of(flat);
    std::vector<Vector> basis;
    for (int k = 0; k < t.order(); ++k) {
      Vector e(static_cast<std::size_t>(t.dim()), Scalar(0.0));
      e[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)] - 1)] = Scalar(1.0);
      basis.push_back(std::move(e));
    }
    CHECK(t.eval(basis) == t.at(idx));
  }
}

TEST_CASE("eval is multilinear in every slot") {
  std::mt19937_64 eng(17);
  auto random_vec = [&](int dim) {
    Vector v(static_cast<std::size_t>(dim));
    for (auto& z : v)
      z = Scalar(2.0 * static_cast<double>(eng() >> 11) /
                         9007199254740992.0 - 1.0,
                 0.0);
    return v;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + static_cast<int>(eng() % 2);
    const int dim = 2 + static_cast<int>(eng() % 3);
    const auto t = random_uniform_tensor(m, dim, eng());
    const int slot = static_cast<int>(eng() % static_cast<std::uint64_t>(m));
    const double alpha = 0.75, beta = -1.25;

    std::vector<Vector> xs;
    for (int s = 0; s < m; ++s) xs.push_back(random_vec(dim));
    const Vector u = random_vec(dim), v = random_vec(dim);

    auto with_slot = [&](const Vector& w) {
      auto copy = xs;
      copy[static_cast<std::size_t>(slot)] = w;
      return t.eval(copy);
    };
    Vector combo(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
      combo[static_cast<std::size_t>(i)] =
          alpha * u[static_cast<std::size_t>(i)] + beta * v[static_cast<std::size_t>(i)];
    const Scalar lhs = with_slot(combo);
    const Scalar rhs = alpha * with_slot(u) + beta * with_slot(v);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("contract_last row arithmetic") {
  const auto t = littlewood_matrix();
  const auto c = t.contract_last(rv({1, -1}));
  CHECK(c.order() == 1);
  CHECK(c.at({1}) == Scalar(0.0));   // 1*1 + 1*(-1)
  CHECK(c.at({2}) == Scalar(2.0));   // 1*1 + (-1)*(-1)

  const auto z = t.contract_last(rv({0, 0}));
  for (auto e : z.entries()) CHECK(e == Scalar(0.0));

  const auto order0 = c.contract_last(rv({3, 4}));
  CHECK(order0.order() == 0);
  CHECK(order0.entries()[0] == c.eval({rv({3, 4})}));
}

TEST_CASE("contract_last composed m times equals eval") {
  std::mt19937_64 eng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + static_cast<int>(eng() % 3);
    const int dim = 2 + static_cast<int>(eng() % 3);
    const auto t = random_uniform_tensor(m, dim, eng());
    std::vector<Vector> xs;
    for (int s = 0; s < m; ++s) {
      Vector v(static_cast<std::size_t>(dim));
      for (auto& z : v)
        z = Scalar(2.0 * static_cast<double>(eng() >> 11) /
                           9007199254740992.0 - 1.0,
                   0.0);
      xs.push_back(std::move(v));
    }
    CoefficientTensor cur = t;
    for (int s = m - 1; s >= 0; --s)
      cur = cur.contract_last(xs[static_cast<std::size_t>(s)]);
    const Scalar via_contraction = cur.entries()[0];
    const Scalar direct = t.eval(xs);
    CHECK(std::abs(via_contraction - direct) <=
          1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("field tags are enforced") {
  const auto t = littlewood_matrix();
  Vector bad = rv({1, 1});
  bad[0] = Scalar(1.0, 0.5);
  CHECK_THROWS_AS(t.eval({bad, rv({1, 1})}), invalid_input);
  CHECK_THROWS_AS(t.scaled(Scalar(0.0, 1.0)), invalid_input);
  CHECK_THROWS_AS(
      CoefficientTensor::from_fn(1, 1, Field::real,
                                 [](const MultiIndex&) { return Scalar(0, 1); }),
      invalid_input);

  const auto c = CoefficientTensor::from_fn(
      1, 2, Field::complex, [](const MultiIndex& i) { return Scalar(0, i[0]); });
  CHECK(c.eval({rv({1, 1})}) == Scalar(0.0, 3.0));
}

TEST_CASE("serialization round-trips bit-exactly") {
  std::mt19937_64 eng(31);
  for (Field field : {Field::real, Field::complex}) {
    auto t = field == Field::real
                 ? random_uniform_tensor(2, 3, eng())
                 : CoefficientTensor::from_fn(2, 3, Field::complex,
                                              [&](const MultiIndex&) {
                                                return Scalar(0.25, -1.5);
                                              });
    std::stringstream ss;
    write_tensor(ss, t);
    const auto back = read_tensor(ss);
    CHECK(back.order() == t.order());
    CHECK(back.dim() == t.dim());
    CHECK(back.field() == t.field());
    for (std::size_t i = 0; i < t.size(); ++i)
      CHECK(back.entries()[i] == t.entries()[i]);
  }
}

TEST_CASE("serialization rejects malformed input") {
  std::stringstream bad1("2 2 real\n1 1 1\n1 2 1\n2 1 1\n");  // truncated
  CHECK_THROWS_AS(read_tensor(bad1), invalid_input);
  std::stringstream bad2("1 1 quaternion\n1 0\n");
  CHECK_THROWS_AS(read_tensor(bad2), invalid_input);
  std::stringstream bad3("2 2 real\n1 1 1\n2 1 1\n1 2 1\n2 2 1\n");  // order
  CHECK_THROWS_AS(read_tensor(bad3), invalid_input);
}

TEST_CASE("random tensors are reproducible per seed") {
  const auto a = random_sign_tensor(2, 4, 99);
  const auto b = random_sign_tensor(2, 4, 99);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.entries()[i] == b.entries()[i]);
    CHECK(std::abs(a.entries()[i].real()) == 1.0);
  }
  const auto c = random_sign_tensor(2, 4, 100);
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    same = same && a.entries()[i] == c.entries()[i];
  CHECK(!same);
}

TEST_CASE("pairwise summation is deterministic and accurate") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::sin(static_cast<double>(i));
  const double s1 = pairwise_sum<double>(std::span<const double>(v));
  const double s2 = pairwise_sum<double>(std::span<const double>(v));
  CHECK(s1 == s2);
  long double ref = 0;
  for (double x : v) ref += static_cast<long double>(x);
  CHECK(std::abs(s1 - static_cast<double>(ref)) <= 1e-12);
}
