#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlab/errors.hpp"

namespace mlab {

enum class BijectionKind { cantor, box };

// Enumeration order of the box bijection. row_major is the default used by
// the diagonal-restriction checks; diagonal_first lists the constant tuples
// (i,...,i) first, so that (i,...,i) -> i. That variant is what the
// diagonal witness forms require: the images of the diagonal stay inside
// [1, side].
enum class BoxOrder { row_major, diagonal_first };

// Injective map from 1-based index tuples to positive integers.
//   cantor: iterated Cantor pairing on N^n (1-based via 0-based shifts).
//   box:    bijection [1,side]^n -> [1, side^n].
class Bijection {
 public:
  static Bijection cantor(int arity);
  static Bijection box(int arity, int side, BoxOrder order = BoxOrder::row_major);

  // "box", "box-diag" or "cantor", with box side from `side`.
  static Bijection parse(const std::string& name, int arity, int side);

  int arity() const { return arity_; }
  BijectionKind kind() const { return kind_; }
  int side() const { return side_; }
  std::string name() const;

  // cantor: every positive tuple; box: all components <= side.
  bool in_domain(std::span<const int> tuple) const;

  std::int64_t pair(std::span<const int> tuple) const;
  std::vector<int> unpair(std::int64_t value) const;

 private:
  Bijection(BijectionKind kind, int arity, int side, BoxOrder order);

  BijectionKind kind_;
  int arity_;
  int side_;       // box only
  BoxOrder order_; // box only
};

}  // namespace mlab
