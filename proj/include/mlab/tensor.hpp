#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mlab/errors.hpp"

namespace mlab {

enum class Field { real, complex };

const char* field_name(Field f);
Field parse_field(const std::string& name);

// Scalars are stored as complex pairs of doubles; real tensors keep the
// imaginary parts identically zero and reject complex arguments.
using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

// 1-based index tuple (i_1, ..., i_m), every component in [1, N].
using MultiIndex = std::vector<int>;

Vector real_vector(std::span<const double> entries);
bool is_real_vector(const Vector& v);

// Dense coefficient tensor of an m-linear form on K^N x ... x K^N:
// entry(I) = U(e_{i_1}, ..., e_{i_m}). Storage is row-major over the
// 1-based multi-index (last component fastest), i.e. lexicographic.
// Immutable after construction.
class CoefficientTensor {
 public:
  // Zero tensor. order >= 0 (order 0 holds a single scalar, the residue of
  // a fully contracted form); dim >= 1.
  CoefficientTensor(int order, int dim, Field field);

  // Builds the tensor entry-by-entry from f over the full index box.
  // Rejects non-finite values, naming the offending index.
  static CoefficientTensor from_fn(
      int order, int dim, Field field,
      const std::function<Scalar(const MultiIndex&)>& f);

  static CoefficientTensor from_entries(int order, int dim, Field field,
                                        std::vector<Scalar> entries);

  int order() const { return order_; }
  int dim() const { return dim_; }
  Field field() const { return field_; }
  std::size_t size() const { return entries_.size(); }  // dim^order

  Scalar at(const MultiIndex& index) const;  // 1-based
  std::span<const Scalar> entries() const { return entries_; }

  std::size_t flat_of(const MultiIndex& index) const;
  MultiIndex index_of(std::size_t flat) const;

  // U(x^{(1)}, ..., x^{(m)}) = sum_I a_I prod_j x^{(j)}_{i_j}, accumulated
  // in the documented pairwise order over lexicographic I.
  Scalar eval(const std::vector<Vector>& args) const;

  // Contracts the last slot with v; eval(t, (xs..., v)) == eval(contract_last(t, v), (xs...)).
  CoefficientTensor contract_last(const Vector& v) const;

  CoefficientTensor scaled(Scalar alpha) const;

 private:
  int order_;
  int dim_;
  Field field_;
  std::vector<Scalar> entries_;
};

// Flat text format: header "m N field", then N^m lines
// "i1 ... im re [im]" in lexicographic index order.
void write_tensor(std::ostream& os, const CoefficientTensor& t);
CoefficientTensor read_tensor(std::istream& is);
void save_tensor(const std::string& path, const CoefficientTensor& t);
CoefficientTensor load_tensor(const std::string& path);

// Seeded random tensors; deterministic per seed.
CoefficientTensor random_sign_tensor(int order, int dim, std::uint64_t seed);
CoefficientTensor random_uniform_tensor(int order, int dim, std::uint64_t seed);

namespace detail {
void check_same_shape_vector(const CoefficientTensor& t, const Vector& v);
void check_args(const CoefficientTensor& t, const std::vector<Vector>& args);
}  // namespace detail

}  // namespace mlab
