#include "mlab/tensor.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "mlab/numeric.hpp"

namespace mlab {

namespace {

std::size_t pow_size(int dim, int order) {
  std::size_t s = 1;
  for (int i = 0; i < order; ++i) {
    if (s > (static_cast<std::size_t>(1) << 48) / static_cast<std::size_t>(dim))
      throw guard_error("tensor size dim^order exceeds 2^48 entries");
    s *= static_cast<std::size_t>(dim);
  }
  return s;
}

std::string index_string(const MultiIndex& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

bool finite(Scalar z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

const char* field_name(Field f) {
  return f == Field::real ? "real" : "complex";
}

Field parse_field(const std::string& name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw invalid_input("unknown scalar field '" + name + "'");
}

Vector real_vector(std::span<const double> entries) {
  Vector v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v[i] = Scalar(entries[i], 0.0);
  return v;
}

bool is_real_vector(const Vector& v) {
  for (const auto& z : v)
    if (z.imag() != 0.0) return false;
  return true;
}

CoefficientTensor::CoefficientTensor(int order, int dim, Field field)
    : order_(order), dim_(dim), field_(field) {
  if (order < 0) throw invalid_input("tensor order must be >= 0");
  if (dim < 1) throw invalid_input("tensor dimension must be >= 1");
  entries_.assign(pow_size(dim, order), Scalar(0.0, 0.0));
}

CoefficientTensor CoefficientTensor::from_fn(
    int order, int dim, Field field,
    const std::function<Scalar(const MultiIndex&)>& f) {
  if (order < 1) throw invalid_input("from_fn: order must be >= 1");
  CoefficientTensor t(order, dim, field);
  MultiIndex idx(order, 1);
  for (std::size_t flat = 0; flat < t.entries_.size(); ++flat) {
    Scalar z = f(idx);
    if (!finite(z))
      throw invalid_input("non-finite coefficient at index " + index_string(idx));
    if (field == Field::real && z.imag() != 0.0)
      throw invalid_input("complex coefficient in a real tensor at index " +
                          index_string(idx));
    t.entries_[flat] = z;
    // advance lexicographically, last component fastest
    for (int k = order - 1; k >= 0; --k) {
      if (++idx[k] <= dim) break;
      idx[k] = 1;
    }
  }
  return t;
}

CoefficientTensor CoefficientTensor::from_entries(int order, int dim,
                                                  Field field,
                                                  std::vector<Scalar> entries) {
  CoefficientTensor t(order, dim, field);
  if (entries.size() != t.entries_.size())
    throw invalid_input("from_entries: expected " +
                        std::to_string(t.entries_.size()) + " entries, got " +
                        std::to_string(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!finite(entries[i]))
      throw invalid_input("non-finite coefficient at index " +
                          index_string(t.index_of(i)));
    if (field == Field::real && entries[i].imag() != 0.0)
      throw invalid_input("complex coefficient in a real tensor at index " +
                          index_string(t.index_of(i)));
  }
  t.entries_ = std::move(entries);
  return t;
}

std::size_t CoefficientTensor::flat_of(const MultiIndex& index) const {
  if (static_cast<int>(index.size()) != order_)
    throw invalid_input("multi-index arity mismatch");
  std::size_t flat = 0;
  for (int k = 0; k < order_; ++k) {
    if (index[k] < 1 || index[k] > dim_)
      throw invalid_input("multi-index component out of range: " +
                          index_string(index));
    flat = flat * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(index[k] - 1);
  }
  return flat;
}

MultiIndex CoefficientTensor::index_of(std::size_t flat) const {
  MultiIndex idx(order_);
  for (int k = order_ - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % static_cast<std::size_t>(dim_)) + 1;
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

Scalar CoefficientTensor::at(const MultiIndex& index) const {
  return entries_[flat_of(index)];
}

namespace detail {

void check_same_shape_vector(const CoefficientTensor& t, const Vector& v) {
  if (static_cast<int>(v.size()) != t.dim())
    throw invalid_input("vector length " + std::to_string(v.size()) +
                        " does not match tensor dimension " +
                        std::to_string(t.dim()));
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw invalid_input("non-finite vector entry");
  if (t.field() == Field::real && !is_real_vector(v))
    throw invalid_input("complex vector applied to a real tensor");
}

void check_args(const CoefficientTensor& t, const std::vector<Vector>& args) {
  if (static_cast<int>(args.size()) != t.order())
    throw invalid_input("expected " + std::to_string(t.order()) +
                        " argument vectors, got " + std::to_string(args.size()));
  for (const auto& v : args) check_same_shape_vector(t, v);
}

}  // namespace detail

Scalar CoefficientTensor::eval(const std::vector<Vector>& args) const {
  detail::check_args(*this, args);
  if (order_ == 0) return entries_[0];
  const auto n = entries_.size();
  return pairwise_sum<Scalar>(n, [&](std::size_t flat) {
    Scalar term = entries_[flat];
    std::size_t rest = flat;
    for (int k = order_ - 1; k >= 0; --k) {
      term *= args[static_cast<std::size_t>(k)]
                  [rest % static_cast<std::size_t>(dim_)];
      rest /= static_cast<std::size_t>(dim_);
    }
    return term;
  });
}

CoefficientTensor CoefficientTensor::contract_last(const Vector& v) const {
  if (order_ < 1) throw invalid_input("contract_last: tensor has order 0");
  detail::check_same_shape_vector(*this, v);
  CoefficientTensor out(order_ - 1, dim_, field_);
  const std::size_t nd = static_cast<std::size_t>(dim_);
  for (std::size_t head = 0; head < out.entries_.size(); ++head) {
    out.entries_[head] = pairwise_sum<Scalar>(
        nd, [&](std::size_t j) { return entries_[head * nd + j] * v[j]; });
  }
  return out;
}

CoefficientTensor CoefficientTensor::scaled(Scalar alpha) const {
  if (field_ == Field::real && alpha.imag() != 0.0)
    throw invalid_input("complex scale applied to a real tensor");
  CoefficientTensor out(*this);
  for (auto& z : out.entries_) z *= alpha;
  return out;
}

void write_tensor(std::ostream& os, const CoefficientTensor& t) {
  os << t.order() << ' ' << t.dim() << ' ' << field_name(t.field()) << '\n';
  char buf[64];
  const auto entries = t.entries();
  for (std::size_t flat = 0; flat < entries.size(); ++flat) {
    const MultiIndex idx = t.index_of(flat);
    for (int k = 0; k < t.order(); ++k) os << idx[k] << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", entries[flat].real());
    os << buf;
    if (t.field() == Field::complex) {
      std::snprintf(buf, sizeof buf, " %.17g", entries[flat].imag());
      os << buf;
    }
    os << '\n';
  }
}

CoefficientTensor read_tensor(std::istream& is) {
  int order = 0, dim = 0;
  std::string field_str;
  if (!(is >> order >> dim >> field_str))
    throw invalid_input("tensor header: expected 'm N field'");
  if (order < 1 || dim < 1) throw invalid_input("tensor header: bad m or N");
  const Field field = parse_field(field_str);
  CoefficientTensor t(order, dim, field);
  std::vector<Scalar> entries(t.size());
  MultiIndex idx(order);
  for (std::size_t flat = 0; flat < entries.size(); ++flat) {
    for (int k = 0; k < order; ++k) {
      if (!(is >> idx[k]))
        throw invalid_input("tensor body: truncated at entry " +
                            std::to_string(flat));
    }
    if (t.flat_of(idx) != flat)
      throw invalid_input("tensor body: index " + std::to_string(flat + 1) +
                          " out of lexicographic order");
    double re = 0.0, im = 0.0;
    if (!(is >> re)) throw invalid_input("tensor body: missing value");
    if (field == Field::complex && !(is >> im))
      throw invalid_input("tensor body: missing imaginary part");
    entries[flat] = Scalar(re, im);
  }
  return CoefficientTensor::from_entries(order, dim, field, std::move(entries));
}

void save_tensor(const std::string& path, const CoefficientTensor& t) {
  std::ofstream os(path);
  if (!os) throw invalid_input("cannot open '" + path + "' for writing");
  write_tensor(os, t);
}

CoefficientTensor load_tensor(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw invalid_input("cannot open '" + path + "'");
  return read_tensor(is);
}

CoefficientTensor random_sign_tensor(int order, int dim, std::uint64_t seed) {
  CoefficientTensor t(order, dim, Field::real);
  std::mt19937_64 eng(seed);
  std::vector<Scalar> entries(t.size());
  for (auto& z : entries) z = Scalar((eng() >> 63) ? 1.0 : -1.0, 0.0);
  return CoefficientTensor::from_entries(order, dim, Field::real,
                                         std::move(entries));
}

CoefficientTensor random_uniform_tensor(int order, int dim, std::uint64_t seed) {
  CoefficientTensor t(order, dim, Field::real);
  std::mt19937_64 eng(seed);
  std::vector<Scalar> entries(t.size());
  for (auto& z : entries) {
    // 53 uniform bits in [0,1), mapped to [-1,1]
    const double u =
        static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
    z = Scalar(2.0 * u - 1.0, 0.0);
  }
  return CoefficientTensor::from_entries(order, dim, Field::real,
                                         std::move(entries));
}

}  // namespace mlab
