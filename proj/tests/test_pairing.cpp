#include "mlab/pairing.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace mlab;

TEST_CASE("box corners and round trip") {
  const auto b = Bijection::box(2, 3);
  CHECK(b.pair(std::vector<int>{1, 1}) == 1);
  CHECK(b.pair(std::vector<int>{3, 3}) == 9);
  CHECK(b.unpair(5) == std::vector<int>{2, 2});
  for (std::int64_t v = 1; v <= 9; ++v) CHECK(b.pair(b.unpair(v)) == v);
  CHECK_THROWS_AS(b.pair(std::vector<int>{1, 4}), invalid_input);
  CHECK_THROWS_AS(b.unpair(10), invalid_input);
}

TEST_CASE("cantor values from the pairing formula") {
  const auto c = Bijection::cantor(2);
  // pi(a,b) = (a+b)(a+b+1)/2 + b on 0-based pairs, shifted by 1
  CHECK(c.pair(std::vector<int>{1, 1}) == 1);  // pi(0,0) = 0
  CHECK(c.pair(std::vector<int>{2, 2}) == 5);  // pi(1,1) = 4
  CHECK(c.unpair(1) == std::vector<int>{1, 1});
}

TEST_CASE("cantor round trip over 10^4 values") {
  for (int arity : {2, 3}) {
    const auto c = Bijection::cantor(arity);
    for (std::int64_t v = 1; v <= 10000; ++v) CHECK(c.pair(c.unpair(v)) == v);
  }
}

TEST_CASE("cantor matches an independent formula evaluation") {
  const auto c = Bijection::cantor(2);
  for (int a = 1; a <= 12; ++a)
    for (int b = 1; b <= 12; ++b) {
      const std::int64_t x = a - 1, y = b - 1;
      const std::int64_t expected = (x + y) * (x + y + 1) / 2 + y + 1;
      CHECK(c.pair(std::vector<int>{a, b}) == expected);
    }
}

TEST_CASE("injectivity over sampled boxes") {
  for (int arity : {2, 3}) {
    for (int side : {2, 5, 10}) {
      const auto cantor = Bijection::cantor(arity);
      const auto box = Bijection::box(arity, side);
      const auto diag = Bijection::box(arity, side, BoxOrder::diagonal_first);
      std::set<std::int64_t> seen_c, seen_b, seen_d;
      std::vector<int> tuple(static_cast<std::size_t>(arity), 1);
      for (;;) {
        CHECK(seen_c.insert(cantor.pair(tuple)).second);
        CHECK(seen_b.insert(box.pair(tuple)).second);
        CHECK(seen_d.insert(diag.pair(tuple)).second);
        int k = arity - 1;
        while (k >= 0 && ++tuple[static_cast<std::size_t>(k)] > side)
          tuple[static_cast<std::size_t>(k--)] = 1;
        if (k < 0) break;
      }
      // box variants are onto [1, side^arity]
      std::int64_t range = 1;
      for (int i = 0; i < arity; ++i) range *= side;
      CHECK(*seen_b.rbegin() == range);
      CHECK(*seen_d.rbegin() == range);
      CHECK(static_cast<std::int64_t>(seen_d.size()) == range);
    }
  }
}

TEST_CASE("diagonal-first box pins the diagonal") {
  for (int arity : {2, 3}) {
    for (int side : {1, 2, 4, 7}) {
      const auto d = Bijection::box(arity, side, BoxOrder::diagonal_first);
      for (int i = 1; i <= side; ++i) {
        std::vector<int> tuple(static_cast<std::size_t>(arity), i);
        CHECK(d.pair(tuple) == i);
        CHECK(d.unpair(i) == tuple);
      }
      // everything else lands above `side`
      if (side >= 2) {
        std::vector<int> off = {1, 2, 2};
        off.resize(static_cast<std::size_t>(arity));
        CHECK(d.pair(off) > side);
      }
      std::int64_t range = 1;
      for (int i = 0; i < arity; ++i) range *= side;
      for (std::int64_t v = 1; v <= range; ++v) CHECK(d.pair(d.unpair(v)) == v);
    }
  }
}

TEST_CASE("in_domain reflects the box bounds") {
  const auto b = Bijection::box(2, 4);
  CHECK(b.in_domain(std::vector<int>{4, 4}));
  CHECK(!b.in_domain(std::vector<int>{5, 1}));
  CHECK(!b.in_domain(std::vector<int>{0, 1}));
  const auto c = Bijection::cantor(2);
  CHECK(c.in_domain(std::vector<int>{100, 100}));
}
