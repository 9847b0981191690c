#include "mlab/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "mlab/numeric.hpp"

namespace mlab {

namespace {

double abs2(Scalar z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Contracts the first slot of a flat order-r block with a sign vector.
void contract_first_signs(std::span<const Scalar> in, int dim,
                          std::span<const double> signs,
                          std::span<Scalar> out) {
  const std::size_t stride = out.size();
  for (std::size_t j = 0; j < stride; ++j)
    out[j] = pairwise_sum<Scalar>(static_cast<std::size_t>(dim), [&](std::size_t i) {
      return in[i * stride + j] * signs[i];
    });
}

// State of the sign enumeration at one slot level.
struct SignLevel {
  std::vector<double> signs;
  std::vector<Scalar> block;  // contraction of the previous block by signs
};

class SignEnumerator {
 public:
  explicit SignEnumerator(const CoefficientTensor& t)
      : t_(t), dim_(t.dim()), order_(t.order()) {
    levels_.resize(static_cast<std::size_t>(order_ - 1));
    std::size_t block = t.size();
    for (auto& lv : levels_) {
      block /= static_cast<std::size_t>(dim_);
      lv.signs.assign(static_cast<std::size_t>(dim_), 1.0);
      lv.block.assign(block, Scalar(0.0));
    }
    best_signs_.assign(levels_.size(),
                       std::vector<double>(static_cast<std::size_t>(dim_), 1.0));
  }

  void run() { descend(0); }

  double best() const { return best_; }
  const std::vector<std::vector<double>>& best_signs() const {
    return best_signs_;
  }

 private:
  std::span<const Scalar> block_above(std::size_t level) const {
    return level == 0 ? t_.entries() : std::span<const Scalar>(levels_[level - 1].block);
  }

  void descend(std::size_t level) {
    if (level == levels_.size()) {
      score(block_above(level));
      return;
    }
    auto& lv = levels_[level];
    std::fill(lv.signs.begin(), lv.signs.end(), 1.0);
    contract_first_signs(block_above(level), dim_, lv.signs, lv.block);
    descend(level + 1);

    // Gray-code walk over the remaining sign patterns; level 0 keeps its
    // first coordinate fixed at +1 (the norm is symmetric under x -> -x).
    const int free_bits = level == 0 ? dim_ - 1 : dim_;
    const int offset = level == 0 ? 1 : 0;
    const std::uint64_t steps = std::uint64_t{1} << free_bits;
    auto above = block_above(level);
    const std::size_t bstride = lv.block.size();
    for (std::uint64_t g = 1; g < steps; ++g) {
      const int coord = std::countr_zero(g) + offset;
      const double old = lv.signs[static_cast<std::size_t>(coord)];
      lv.signs[static_cast<std::size_t>(coord)] = -old;
      const Scalar* slice = above.data() + static_cast<std::size_t>(coord) * bstride;
      for (std::size_t j = 0; j < bstride; ++j)
        lv.block[j] -= 2.0 * old * slice[j];
      descend(level + 1);
    }
  }

  void score(std::span<const Scalar> closing) {
    double s = 0.0;
    for (const Scalar& z : closing) s += std::abs(z);
    if (s > best_) {
      best_ = s;
      for (std::size_t l = 0; l < levels_.size(); ++l)
        best_signs_[l] = levels_[l].signs;
    }
  }

  const CoefficientTensor& t_;
  int dim_;
  int order_;
  std::vector<SignLevel> levels_;
  double best_ = -1.0;
  std::vector<std::vector<double>> best_signs_;
};

Vector signs_to_vector(const std::vector<double>& s) {
  Vector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = Scalar(s[i], 0.0);
  return v;
}

Scalar phase_of(Scalar z) {
  const double a = std::abs(z);
  if (a == 0.0) return Scalar(1.0, 0.0);
  return std::conj(z) / a;
}

// Contraction of all slots except `slot` with the given vectors: the
// coefficient vector of the remaining linear form.
Vector contract_all_but(const CoefficientTensor& t,
                        const std::vector<Vector>& xs, int slot) {
  const int dim = t.dim();
  const std::size_t nd = static_cast<std::size_t>(dim);
  std::vector<Scalar> cur(t.entries().begin(), t.entries().end());
  // contract trailing slots down to `slot`
  for (int s = t.order() - 1; s > slot; --s) {
    const std::size_t heads = cur.size() / nd;
    std::vector<Scalar> next(heads);
    for (std::size_t h = 0; h < heads; ++h)
      next[h] = pairwise_sum<Scalar>(
          nd, [&](std::size_t j) { return cur[h * nd + j] * xs[static_cast<std::size_t>(s)][j]; });
    cur.swap(next);
  }
  // contract leading slots
  for (int s = 0; s < slot; ++s) {
    const std::size_t stride = cur.size() / nd;
    std::vector<Scalar> next(stride);
    for (std::size_t j = 0; j < stride; ++j)
      next[j] = pairwise_sum<Scalar>(
          nd, [&](std::size_t i) { return cur[i * stride + j] * xs[static_cast<std::size_t>(s)][i]; });
    cur.swap(next);
  }
  return cur;
}

double lp_norm(const Vector& v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  if (p == 1.0)
    return pairwise_sum<double>(v.size(), [&](std::size_t i) { return std::abs(v[i]); });
  const double s = pairwise_sum<double>(
      v.size(), [&](std::size_t i) { return std::pow(std::abs(v[i]), p); });
  return std::pow(s, 1.0 / p);
}

Vector random_ball_point(int dim, double p, std::mt19937_64& eng, Field field) {
  Vector v(static_cast<std::size_t>(dim));
  auto u = [&]() {
    return 2.0 * (static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0)) - 1.0;
  };
  for (auto& z : v)
    z = field == Field::complex ? Scalar(u(), u()) : Scalar(u(), 0.0);
  const double n = lp_norm(v, p);
  if (n > 0.0)
    for (auto& z : v) z /= n;
  else
    v[0] = Scalar(1.0, 0.0);
  return v;
}

}  // namespace

double conjugate_exponent(double q) {
  if (!(q >= 1.0)) throw invalid_input("conjugate_exponent: q must be >= 1");
  if (q == 1.0) return infinite_exponent;
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

double mixed_power_sum(const CoefficientTensor& t, double r) {
  if (!(r > 0.0) || std::isinf(r))
    throw invalid_input("mixed_power_sum: r must be positive and finite");
  const auto entries = t.entries();
  const double s = pairwise_sum<double>(entries.size(), [&](std::size_t i) {
    return std::pow(std::abs(entries[i]), r);
  });
  return std::pow(s, 1.0 / r);
}

NormResult sup_norm_linf_exact(const CoefficientTensor& t, int guard_bits) {
  if (t.order() < 1) throw invalid_input("sup_norm_linf_exact: order must be >= 1");
  if (t.field() != Field::real)
    throw invalid_input(
        "sup_norm_linf_exact: complex scalars are unsupported for the exact "
        "path; use sup_norm_ascent");
  const long long bits =
      static_cast<long long>(t.dim()) * (t.order() - 1);
  if (bits > guard_bits)
    throw guard_error("sup_norm_linf_exact: N(m-1) = " + std::to_string(bits) +
                      " exceeds the enumeration guard " +
                      std::to_string(guard_bits));

  SignEnumerator enumerator(t);
  enumerator.run();

  // Recompute the winning configuration in the documented reduction order;
  // the incremental Gray-code values are only used for the argmax.
  NormResult res;
  res.exact = true;
  res.certificate.reserve(static_cast<std::size_t>(t.order()));
  std::vector<Scalar> cur(t.entries().begin(), t.entries().end());
  for (const auto& s : enumerator.best_signs()) {
    res.certificate.push_back(signs_to_vector(s));
    std::vector<Scalar> next(cur.size() / static_cast<std::size_t>(t.dim()));
    contract_first_signs(cur, t.dim(), s, next);
    cur.swap(next);
  }
  res.value = pairwise_sum<double>(
      cur.size(), [&](std::size_t i) { return std::abs(cur[i]); });
  Vector last(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i)
    last[i] = Scalar(cur[i].real() < 0.0 ? -1.0 : 1.0, 0.0);
  res.certificate.push_back(std::move(last));
  return res;
}

namespace detail {

DualMax lp_dual_maximizer(const Vector& c, double p) {
  DualMax out;
  out.x.assign(c.size(), Scalar(0.0));
  const bool zero = std::all_of(c.begin(), c.end(),
                                [](Scalar z) { return abs2(z) == 0.0; });
  if (zero) {
    out.x[0] = Scalar(1.0, 0.0);
    out.value = 0.0;
    return out;
  }
  if (std::isinf(p)) {
    for (std::size_t i = 0; i < c.size(); ++i) out.x[i] = phase_of(c[i]);
    out.value = pairwise_sum<double>(
        c.size(), [&](std::size_t i) { return std::abs(c[i]); });
    return out;
  }
  if (p == 1.0) {
    std::size_t arg = 0;
    double mx = -1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double a = std::abs(c[i]);
      if (a > mx) {
        mx = a;
        arg = i;
      }
    }
    out.x[arg] = phase_of(c[arg]);
    out.value = mx;
    return out;
  }
  const double pstar = conjugate_exponent(p);
  const double norm = lp_norm(c, pstar);
  const double scale = std::pow(norm, pstar - 1.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double a = std::abs(c[i]);
    out.x[i] = phase_of(c[i]) * (std::pow(a, pstar - 1.0) / scale);
  }
  out.value = norm;
  return out;
}

}  // namespace detail

NormResult sup_norm_ascent(const CoefficientTensor& t, BallSpec ball,
                           int restarts, std::uint64_t seed, int max_iters,
                           double rel_tol) {
  if (t.order() < 1) throw invalid_input("sup_norm_ascent: order must be >= 1");
  if (!(ball.p >= 1.0)) throw invalid_input("sup_norm_ascent: ball exponent must be >= 1");
  if (restarts < 1) throw invalid_input("sup_norm_ascent: restarts must be >= 1");

  const int m = t.order();
  NormResult best;
  best.exact = false;
  best.value = -1.0;

  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 eng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<Vector> xs;
    xs.reserve(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s)
      xs.push_back(random_ball_point(t.dim(), ball.p, eng, t.field()));

    double value = 0.0;
    for (int it = 0; it < max_iters; ++it) {
      double sweep_value = 0.0;
      for (int slot = 0; slot < m; ++slot) {
        const Vector c = contract_all_but(t, xs, slot);
        auto dm = detail::lp_dual_maximizer(c, ball.p);
        xs[static_cast<std::size_t>(slot)] = std::move(dm.x);
        sweep_value = dm.value;
      }
      const double gain = sweep_value - value;
      value = std::max(value, sweep_value);
      if (gain <= rel_tol * std::max(1.0, value)) break;
    }
    if (value > best.value) {
      best.value = value;
      best.certificate = xs;
    }
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

double holder_diag_bound(int dim, double p, int order) {
  if (dim < 1) throw invalid_input("holder_diag_bound: dim must be >= 1");
  if (!(p > order))
    throw invalid_input("holder_diag_bound: requires p > m");
  if (std::isinf(p)) return static_cast<double>(dim);
  return std::pow(static_cast<double>(dim), (p - order) / p);
}

double weak_lq_norm_linf(const std::vector<Vector>& xs, double q) {
  if (!(q >= 1.0)) throw invalid_input("weak_lq_norm_linf: q must be >= 1");
  if (xs.empty()) return 0.0;
  const std::size_t dim = xs.front().size();
  for (const auto& x : xs)
    if (x.size() != dim) throw invalid_input("weak_lq_norm_linf: ragged sequence");
  double best = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double v;
    if (std::isinf(q)) {
      v = 0.0;
      for (const auto& x : xs) v = std::max(v, std::abs(x[i]));
    } else {
      const double s = pairwise_sum<double>(xs.size(), [&](std::size_t j) {
        return std::pow(std::abs(xs[j][i]), q);
      });
      v = std::pow(s, 1.0 / q);
    }
    best = std::max(best, v);
  }
  return best;
}

double weak_lq_norm_lp_estimate(const std::vector<Vector>& xs, double p,
                                double q, int restarts, std::uint64_t seed) {
  if (!(p > 1.0) || std::isinf(p))
    throw invalid_input("weak_lq_norm_lp_estimate: requires 1 < p < inf");
  if (!(q >= 1.0)) throw invalid_input("weak_lq_norm_lp_estimate: q must be >= 1");
  if (restarts < 1) throw invalid_input("weak_lq_norm_lp_estimate: restarts >= 1");
  if (xs.empty()) return 0.0;
  const std::size_t dim = xs.front().size();
  for (const auto& x : xs)
    if (x.size() != dim)
      throw invalid_input("weak_lq_norm_lp_estimate: ragged sequence");

  const double pstar = conjugate_exponent(p);
  const double qstar = conjugate_exponent(q);
  const std::size_t rows = xs.size();
  const bool cplx = std::any_of(xs.begin(), xs.end(), [](const Vector& v) {
    return !is_real_vector(v);
  });

  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 eng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    Vector psi = random_ball_point(static_cast<int>(rows), qstar, eng,
                                   cplx ? Field::complex : Field::real);
    double value = 0.0;
    for (int it = 0; it < 500; ++it) {
      Vector cphi(dim);
      for (std::size_t i = 0; i < dim; ++i)
        cphi[i] = pairwise_sum<Scalar>(
            rows, [&](std::size_t j) { return psi[j] * xs[j][i]; });
      auto phi = detail::lp_dual_maximizer(cphi, pstar);
      Vector cpsi(rows);
      for (std::size_t j = 0; j < rows; ++j)
        cpsi[j] = pairwise_sum<Scalar>(
            dim, [&](std::size_t i) { return phi.x[i] * xs[j][i]; });
      auto nxt = detail::lp_dual_maximizer(cpsi, qstar);
      psi = std::move(nxt.x);
      const double sweep = nxt.value;  // = ||(phi(x_j))_j||_q
      const double gain = sweep - value;
      value = std::max(value, sweep);
      if (gain <= 1e-12 * std::max(1.0, value)) break;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace mlab
