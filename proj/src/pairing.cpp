#include "mlab/pairing.hpp"

#include <cmath>

namespace mlab {

namespace {

// Classic Cantor pairing on 0-based pairs.
std::int64_t cantor2(std::int64_t a, std::int64_t b) {
  return (a + b) * (a + b + 1) / 2 + b;
}

void cantor2_inv(std::int64_t z, std::int64_t& a, std::int64_t& b) {
  std::int64_t w = static_cast<std::int64_t>(
      (std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  while (w * (w + 1) / 2 > z) --w;
  b = z - w * (w + 1) / 2;
  a = w - b;
}

// Number of constant tuples (i,...,i) among the first `flat` row-major
// positions of [0,side)^n; constant tuples sit at multiples of
// (side^n - 1) / (side - 1).
std::int64_t diag_stride(std::int64_t side, int arity) {
  std::int64_t s = 0, p = 1;
  for (int k = 0; k < arity; ++k) {
    s += p;
    p *= side;
  }
  return s;  // = (side^n - 1)/(side - 1), also correct for side = 1
}

}  // namespace

Bijection::Bijection(BijectionKind kind, int arity, int side, BoxOrder order)
    : kind_(kind), arity_(arity), side_(side), order_(order) {
  if (arity < 1) throw invalid_input("bijection arity must be >= 1");
  if (kind == BijectionKind::box) {
    if (side < 1) throw invalid_input("box bijection side must be >= 1");
    double total = std::pow(static_cast<double>(side), arity);
    if (total > 9.0e15) throw guard_error("box bijection range exceeds 2^53");
  }
}

Bijection Bijection::cantor(int arity) {
  return Bijection(BijectionKind::cantor, arity, 0, BoxOrder::row_major);
}

Bijection Bijection::box(int arity, int side, BoxOrder order) {
  return Bijection(BijectionKind::box, arity, side, order);
}

Bijection Bijection::parse(const std::string& name, int arity, int side) {
  if (name == "cantor") return cantor(arity);
  if (name == "box") return box(arity, side, BoxOrder::row_major);
  if (name == "box-diag") return box(arity, side, BoxOrder::diagonal_first);
  throw invalid_input("unknown bijection '" + name +
                      "' (expected box, box-diag or cantor)");
}

std::string Bijection::name() const {
  if (kind_ == BijectionKind::cantor) return "cantor";
  return order_ == BoxOrder::row_major ? "box" : "box-diag";
}

bool Bijection::in_domain(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) return false;
  for (int c : tuple) {
    if (c < 1) return false;
    if (kind_ == BijectionKind::box && c > side_) return false;
  }
  return true;
}

std::int64_t Bijection::pair(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_)
    throw invalid_input("bijection tuple arity mismatch");
  for (int c : tuple)
    if (c < 1) throw invalid_input("bijection components must be positive");

  if (kind_ == BijectionKind::cantor) {
    std::int64_t acc = tuple[0] - 1;
    for (int k = 1; k < arity_; ++k) acc = cantor2(acc, tuple[k] - 1);
    return acc + 1;
  }

  for (int c : tuple)
    if (c > side_)
      throw invalid_input("box bijection component exceeds side " +
                          std::to_string(side_));
  std::int64_t flat = 0;
  for (int k = 0; k < arity_; ++k)
    flat = flat * side_ + (tuple[k] - 1);  // 0-based row-major
  if (order_ == BoxOrder::row_major) return flat + 1;

  // diagonal_first: constant tuples take 1..side in order, the rest keep
  // their relative row-major order after them.
  const std::int64_t stride = diag_stride(side_, arity_);
  if (flat % stride == 0) return flat / stride + 1;
  const std::int64_t consts_before = flat / stride + 1;
  return side_ + (flat - consts_before) + 1;
}

std::vector<int> Bijection::unpair(std::int64_t value) const {
  if (value < 1) throw invalid_input("bijection value must be positive");

  if (kind_ == BijectionKind::cantor) {
    std::int64_t acc = value - 1;
    std::vector<int> tuple(arity_);
    for (int k = arity_ - 1; k >= 1; --k) {
      std::int64_t a, b;
      cantor2_inv(acc, a, b);
      tuple[k] = static_cast<int>(b) + 1;
      acc = a;
    }
    tuple[0] = static_cast<int>(acc) + 1;
    return tuple;
  }

  std::int64_t range = 1;
  for (int k = 0; k < arity_; ++k) range *= side_;
  if (value > range)
    throw invalid_input("box bijection value exceeds range " +
                        std::to_string(range));
  std::int64_t flat;
  if (order_ == BoxOrder::row_major) {
    flat = value - 1;
  } else if (value <= side_) {
    flat = (value - 1) * diag_stride(side_, arity_);
  } else {
    // invert r = flat - consts_before(flat): consts_before is small, iterate
    // to the fixed point flat = r + consts_before(flat).
    const std::int64_t stride = diag_stride(side_, arity_);
    const std::int64_t r = value - side_ - 1;
    flat = r;
    for (;;) {
      const std::int64_t consts = flat / stride + 1;
      if (flat == r + consts && flat % stride != 0) break;
      flat = r + consts;
    }
  }
  std::vector<int> tuple(arity_);
  for (int k = arity_ - 1; k >= 0; --k) {
    tuple[k] = static_cast<int>(flat % side_) + 1;
    flat /= side_;
  }
  return tuple;
}

}  // namespace mlab
