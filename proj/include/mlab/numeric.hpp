#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "mlab/errors.hpp"

namespace mlab {

namespace detail {

// Pairwise (tree) reduction over term(i) for i in [first, first+count).
// The split points depend only on the range, so the result is reproducible
// for a fixed length regardless of how callers are scheduled.
template <class T, class F>
T pairwise_sum_range(std::size_t first, std::size_t count, F&& term) {
  if (count == 0) return T{};
  if (count <= 8) {
    T acc = term(first);
    for (std::size_t i = 1; i < count; ++i) acc += term(first + i);
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum_range<T>(first, half, term) +
         pairwise_sum_range<T>(first + half, count - half, term);
}

}  // namespace detail

// Sum of term(i), i = 0..count-1, in the documented pairwise order.
template <class T, class F>
T pairwise_sum(std::size_t count, F&& term) {
  return detail::pairwise_sum_range<T>(0, count, term);
}

template <class T>
T pairwise_sum(std::span<const T> v) {
  return pairwise_sum<T>(v.size(), [&](std::size_t i) { return v[i]; });
}

// Least-squares slope of y against x. Requires >= 3 points.
inline double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw invalid_input("ls_slope: length mismatch");
  if (x.size() < 3) throw invalid_input("ls_slope: need at least 3 points");
  const auto n = x.size();
  const double mx = pairwise_sum(x) / static_cast<double>(n);
  const double my = pairwise_sum(y) / static_cast<double>(n);
  const double sxy = pairwise_sum<double>(
      n, [&](std::size_t i) { return (x[i] - mx) * (y[i] - my); });
  const double sxx = pairwise_sum<double>(
      n, [&](std::size_t i) { return (x[i] - mx) * (x[i] - mx); });
  if (sxx == 0.0) throw invalid_input("ls_slope: degenerate abscissae");
  return sxy / sxx;
}

// splitmix64; used to derive independent per-restart / per-draw seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mlab
