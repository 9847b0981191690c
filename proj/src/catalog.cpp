#include "mlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "mlab/numeric.hpp"

namespace mlab {

namespace {

const double sqrt2 = std::sqrt(2.0);

std::function<double(int)> unit_factor() {
  return [](int) { return 1.0; };
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Iterates over [1,N]^core in lexicographic order.
class CoreIndexWalker {
 public:
  CoreIndexWalker(int core, int dim)
      : dim_(dim), idx_(static_cast<std::size_t>(core), 1) {}

  const MultiIndex& index() const { return idx_; }

  bool advance() {
    for (int k = static_cast<int>(idx_.size()) - 1; k >= 0; --k) {
      if (++idx_[static_cast<std::size_t>(k)] <= dim_) return true;
      idx_[static_cast<std::size_t>(k)] = 1;
    }
    return false;
  }

 private:
  int dim_;
  MultiIndex idx_;
};

}  // namespace

double bh_exponent(int m) {
  if (m < 1) throw invalid_input("bh_exponent: m >= 1");
  return 2.0 * m / (m + 1.0);
}

double hl_pp_exponent(int m, double p) {
  if (m < 1) throw invalid_input("hl_pp_exponent: m >= 1");
  if (!(p >= 2.0 * m)) throw invalid_input("hl_pp_exponent: requires p >= 2m");
  if (std::isinf(p)) return bh_exponent(m);
  return 2.0 * m * p / (m * p + p - 2.0 * m);
}

double hl_dsp_exponent(int m, double p) {
  if (m < 1) throw invalid_input("hl_dsp_exponent: m >= 1");
  if (!(p > m && p <= 2.0 * m))
    throw invalid_input("hl_dsp_exponent: requires m < p <= 2m");
  return p / (p - m);
}

double bh_constant_complex(int m) {
  if (m < 1) throw invalid_input("bh_constant_complex: m >= 1");
  double v = 1.0;
  for (int j = 2; j <= m; ++j)
    v *= std::pow(std::tgamma(2.0 - 1.0 / j), j / (2.0 - 2.0 * j));
  return v;
}

double bh_constant_real(int m) {
  if (m < 1) throw invalid_input("bh_constant_real: m >= 1");
  if (m == 1) return 1.0;
  if (m <= 13) {
    double harmonic = 0.0;
    for (int j = 1; j <= m - 1; ++j) harmonic += 1.0 / j;
    return std::pow(sqrt2, harmonic);
  }
  double v = std::pow(2.0, 446381.0 / 55440.0 - m / 2.0);
  for (int j = 14; j <= m; ++j)
    v *= std::pow(std::tgamma(1.5 - 1.0 / j) / std::sqrt(M_PI),
                  j / (2.0 - 2.0 * j));
  return v;
}

double bh_constant(int m, Field field) {
  return field == Field::real ? bh_constant_real(m) : bh_constant_complex(m);
}

std::vector<std::string> instance_names() {
  return {"littlewood43", "bh",     "diag43", "diagbh", "mixed43",
          "full43",       "hl-pp",  "hl-dsp", "zalduendo"};
}

InequalityInstance make_instance(const std::string& name,
                                 const InstanceParams& params) {
  const int m = params.m;
  const int n = params.n > 0 ? params.n : m;
  const Field field = params.field;
  if (m < 1) throw invalid_input("instance core arity must be >= 1");
  if (n < m) throw invalid_input("instance arity must be >= core arity");

  InequalityInstance inst;
  inst.name = name;
  inst.field = field;
  inst.core = m;
  inst.arity = n;
  inst.dim_factor = unit_factor();

  if (name == "littlewood43") {
    if (m != 2 || n != 2)
      throw invalid_input("littlewood43 is the bilinear case (m = n = 2)");
    inst.rho = 4.0 / 3.0;
    inst.constant = bh_constant(2, field);
    inst.constant_proven = true;
    return inst;
  }
  if (name == "bh") {
    if (n != m) throw invalid_input("bh: n must equal m");
    inst.rho = bh_exponent(m);
    inst.constant = bh_constant(m, field);
    inst.constant_proven = true;
    return inst;
  }
  if (name == "diag43") {
    if (m != 2) throw invalid_input("diag43: core arity is 2");
    if (n < 3) throw invalid_input("diag43: needs arity n >= 3");
    inst.rho = 4.0 / 3.0;
    inst.constant = bh_constant(2, field);
    inst.constant_proven = true;
    return inst;
  }
  if (name == "diagbh") {
    if (n <= m) throw invalid_input("diagbh: needs arity n > core m");
    inst.rho = bh_exponent(m);
    inst.constant = bh_constant(m, field);
    inst.constant_proven = true;
    return inst;
  }
  if (name == "mixed43") {
    RepetitionPattern pat = params.pattern
                                ? *params.pattern
                                : RepetitionPattern({n - 1, 1});
    if (pat.k() != 2) throw invalid_input("mixed43: pattern must have k = 2");
    if (pat.n() != n) throw invalid_input("mixed43: pattern must sum to n");
    inst.core = 2;
    inst.lhs = LhsKind::pattern_diagonal;
    inst.pattern = std::move(pat);
    inst.rho = 4.0 / 3.0;
    inst.constant = bh_constant(2, field);
    // The repeated-index 4/3 bound is stated for complex scalars; the real
    // analogue's constant is not pinned down.
    inst.constant_proven = field == Field::complex;
    return inst;
  }
  if (name == "full43") {
    if (n != m) throw invalid_input("full43: n must equal m");
    if (m < 2) throw invalid_input("full43: needs m >= 2");
    inst.rho = 4.0 / 3.0;
    inst.constant = field == Field::complex ? bh_constant_complex(m)
                                            : bh_constant_real(m);
    inst.constant_proven = field == Field::complex || m == 2;
    inst.dim_factor = [m](int dim) {
      return std::pow(static_cast<double>(dim), (m - 2) / 4.0);
    };
    return inst;
  }
  if (name == "hl-pp") {
    if (n != m) throw invalid_input("hl-pp: n must equal m");
    inst.p = params.p;
    inst.rho = hl_pp_exponent(m, params.p);
    inst.constant = 1.0;  // existence only; the optimal value is not given
    inst.constant_proven = false;
    return inst;
  }
  if (name == "hl-dsp") {
    if (n != m) throw invalid_input("hl-dsp: n must equal m");
    inst.p = params.p;
    inst.rho = hl_dsp_exponent(m, params.p);
    inst.constant = 1.0;
    inst.constant_proven = false;
    return inst;
  }
  if (name == "zalduendo") {
    if (n != m) throw invalid_input("zalduendo: n must equal m");
    if (!(params.p > m)) throw invalid_input("zalduendo: requires p > m");
    inst.p = params.p;
    inst.lhs = LhsKind::pure_diagonal;
    inst.rho = params.p / (params.p - m);
    inst.constant = 1.0;
    inst.constant_proven = true;
    return inst;
  }
  throw invalid_input("unknown instance '" + name + "'");
}

std::string catalog_listing(const InstanceParams& params) {
  std::string out;
  for (const auto& name : instance_names()) {
    InstanceParams p = params;
    if (name == "littlewood43") {
      p.m = 2;
      p.n = 2;
    } else if (name == "diag43") {
      p.m = 2;
      p.n = std::max(3, params.n);
    } else if (name == "diagbh") {
      p.n = params.n > params.m ? params.n : params.m + 1;
    } else {
      p.n = p.m;
    }
    if (name == "hl-pp" && !(p.p >= 2.0 * p.m)) p.p = 2.0 * p.m;
    if ((name == "hl-dsp" || name == "zalduendo") &&
        !(p.p > p.m && p.p <= 2.0 * p.m))
      p.p = 2.0 * p.m;
    InequalityInstance inst;
    try {
      inst = make_instance(name, p);
    } catch (const invalid_input&) {
      continue;
    }
    out += inst.name;
    out += " m=" + std::to_string(inst.core) + " n=" + std::to_string(inst.arity);
    out += std::isinf(inst.p) ? std::string(" p=inf")
                              : " p=" + fmt(inst.p);
    out += " rho=" + fmt(inst.rho);
    out += " C=" + fmt(inst.constant);
    out += inst.constant_proven ? " proven" : " unproven";
    out += "\n";
  }
  return out;
}

double diagonal_restriction_sum(const CoefficientTensor& t, int core,
                                const std::vector<Bijection>& sigmas,
                                double r) {
  if (!(r > 0.0) || std::isinf(r))
    throw invalid_input("diagonal_restriction_sum: r must be positive");
  if (core < 1 || core > t.order())
    throw invalid_input("diagonal_restriction_sum: bad core arity");
  if (static_cast<int>(sigmas.size()) != t.order() - core)
    throw invalid_input("diagonal_restriction_sum: expected " +
                        std::to_string(t.order() - core) + " bijections");
  for (const auto& s : sigmas)
    if (s.arity() != core)
      throw invalid_input("diagonal_restriction_sum: bijection arity mismatch");

  const int dim = t.dim();
  // injectivity over the sampled part of the domain
  for (const auto& s : sigmas) {
    std::set<std::int64_t> seen;
    CoreIndexWalker w(core, dim);
    do {
      if (!s.in_domain(w.index())) continue;
      if (!seen.insert(s.pair(w.index())).second)
        throw invalid_input(
            "diagonal_restriction_sum: bijection is not injective on the "
            "sampled domain");
    } while (w.advance());
  }

  std::vector<double> terms;
  CoreIndexWalker w(core, dim);
  MultiIndex full(static_cast<std::size_t>(t.order()));
  do {
    const MultiIndex& head = w.index();
    bool inside = true;
    std::copy(head.begin(), head.end(), full.begin());
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      // finite-truncation convention: skip tuples the bijection cannot
      // place inside [1,N]
      if (!sigmas[k].in_domain(head)) {
        inside = false;
        break;
      }
      const std::int64_t image = sigmas[k].pair(head);
      if (image > dim) {
        inside = false;
        break;
      }
      full[static_cast<std::size_t>(core) + k] = static_cast<int>(image);
    }
    if (inside) terms.push_back(std::pow(std::abs(t.at(full)), r));
  } while (w.advance());

  const double s = pairwise_sum<double>(
      terms.size(), [&](std::size_t i) { return terms[i]; });
  return std::pow(s, 1.0 / r);
}

double pattern_diagonal_sum(const CoefficientTensor& t,
                            const RepetitionPattern& pattern, double r) {
  if (!(r > 0.0) || std::isinf(r))
    throw invalid_input("pattern_diagonal_sum: r must be positive");
  if (pattern.n() != t.order())
    throw invalid_input("pattern_diagonal_sum: pattern must sum to the order");
  const int dim = t.dim();
  MultiIndex full(static_cast<std::size_t>(t.order()));
  std::vector<double> terms;
  CoreIndexWalker w(pattern.k(), dim);
  do {
    std::size_t slot = 0;
    for (int l = 0; l < pattern.k(); ++l)
      for (int rep = 0; rep < pattern.parts[static_cast<std::size_t>(l)]; ++rep)
        full[slot++] = w.index()[static_cast<std::size_t>(l)];
    terms.push_back(std::pow(std::abs(t.at(full)), r));
  } while (w.advance());
  const double s = pairwise_sum<double>(
      terms.size(), [&](std::size_t i) { return terms[i]; });
  return std::pow(s, 1.0 / r);
}

namespace {

double pure_diagonal_sum(const CoefficientTensor& t, double r) {
  const int dim = t.dim();
  MultiIndex idx(static_cast<std::size_t>(t.order()));
  const double s = pairwise_sum<double>(
      static_cast<std::size_t>(dim), [&](std::size_t i) {
        std::fill(idx.begin(), idx.end(), static_cast<int>(i) + 1);
        return std::pow(std::abs(t.at(idx)), r);
      });
  return std::pow(s, 1.0 / r);
}

NormResult compute_norm(const InequalityInstance& inst,
                        const CoefficientTensor& t, const CheckOptions& opts) {
  if (opts.method == NormMethod::exact) {
    if (!std::isinf(inst.p))
      throw invalid_input("exact norms are only available over l_inf balls");
    return sup_norm_linf_exact(t, opts.guard_bits);
  }
  return sup_norm_ascent(t, BallSpec{inst.p}, opts.restarts, opts.seed);
}

}  // namespace

RatioReport check_instance(const InequalityInstance& inst,
                           const CoefficientTensor& t,
                           const std::vector<Bijection>& sigmas,
                           const CheckOptions& opts) {
  if (t.order() != inst.arity)
    throw invalid_input("check_instance: tensor order " +
                        std::to_string(t.order()) +
                        " does not match instance arity " +
                        std::to_string(inst.arity));
  if (t.field() != inst.field)
    throw invalid_input("check_instance: tensor field does not match instance");

  RatioReport rep;
  rep.instance = inst.name;
  rep.arity = inst.arity;
  rep.core = inst.core;
  rep.p = inst.p;
  rep.dim = t.dim();
  rep.seed = opts.seed;
  rep.constant = inst.constant;
  rep.dim_factor = inst.dim_factor(t.dim());
  rep.constant_proven = inst.constant_proven;

  switch (inst.lhs) {
    case LhsKind::sigma_diagonal:
      rep.lhs = diagonal_restriction_sum(t, inst.core, sigmas, inst.rho);
      break;
    case LhsKind::pattern_diagonal:
      rep.lhs = pattern_diagonal_sum(t, *inst.pattern, inst.rho);
      break;
    case LhsKind::pure_diagonal:
      rep.lhs = pure_diagonal_sum(t, inst.rho);
      break;
  }

  rep.norm = compute_norm(inst, t, opts);
  // A ratio is certified when the <= 1 claim is a theorem-check: exact norm
  // and a paper-proven constant. Ascent norms are lower bounds, so the
  // computed ratio only over-estimates and can never certify either way.
  rep.certified = rep.norm.exact && inst.constant_proven;
  const double denom = rep.constant * rep.dim_factor * rep.norm.value;
  if (rep.lhs == 0.0)
    rep.ratio = 0.0;
  else if (denom == 0.0)
    rep.ratio = std::numeric_limits<double>::infinity();
  else
    rep.ratio = rep.lhs / denom;
  return rep;
}

CoefficientTensor prop90_witness(int dim, int order,
                                 const std::vector<Bijection>& sigmas) {
  if (dim < 1) throw invalid_input("prop90_witness: N >= 1");
  if (order < 2) throw invalid_input("prop90_witness: order >= 2");
  if (static_cast<int>(sigmas.size()) != order - 2)
    throw invalid_input("prop90_witness: expected " +
                        std::to_string(order - 2) + " bijections");
  for (const auto& s : sigmas)
    if (s.arity() != 2)
      throw invalid_input("prop90_witness: bijections must have arity 2");

  CoefficientTensor t(order, dim, Field::real);
  std::vector<Scalar> entries(t.size(), Scalar(0.0));
  MultiIndex idx(static_cast<std::size_t>(order));
  std::vector<std::set<std::int64_t>> images(sigmas.size());
  for (int i = 1; i <= dim; ++i) {
    idx[0] = idx[1] = i;
    const int pair_idx[2] = {i, i};
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      const std::int64_t image = sigmas[k].pair(pair_idx);
      if (image > dim)
        throw invalid_input(
            "prop90_witness: sigma image of the diagonal exceeds N (use "
            "diagonal-first boxes)");
      if (!images[k].insert(image).second)
        throw invalid_input("prop90_witness: sigma images of the diagonal collide");
      idx[2 + k] = static_cast<int>(image);
    }
    entries[t.flat_of(idx)] = Scalar(1.0, 0.0);
  }
  return CoefficientTensor::from_entries(order, dim, Field::real,
                                         std::move(entries));
}

std::vector<Bijection> prop90_default_sigmas(int dim, int order) {
  if (order < 2) throw invalid_input("prop90_default_sigmas: order >= 2");
  std::vector<Bijection> sigmas;
  for (int k = 0; k < order - 2; ++k)
    sigmas.push_back(Bijection::box(2, dim, BoxOrder::diagonal_first));
  return sigmas;
}

RatioReport zalduendo_check(const CoefficientTensor& t, double p, int restarts,
                            std::uint64_t seed) {
  InstanceParams params;
  params.m = t.order();
  params.p = p;
  params.field = t.field();
  const InequalityInstance inst = make_instance("zalduendo", params);
  CheckOptions opts;
  opts.method = NormMethod::ascent;
  opts.restarts = restarts;
  opts.seed = seed;
  return check_instance(inst, t, {}, opts);
}

double multiple_summing_ratio(const CoefficientTensor& t, int core,
                              const std::vector<std::vector<Vector>>& core_seqs,
                              const std::vector<std::vector<Vector>>& tail_seqs,
                              double p, std::span<const double> qs, double C,
                              const CheckOptions& opts) {
  const int n = t.order();
  if (core < 1 || core > n)
    throw invalid_input("multiple_summing_ratio: bad core arity");
  if (static_cast<int>(core_seqs.size()) != core)
    throw invalid_input("multiple_summing_ratio: expected one sequence per core slot");
  if (static_cast<int>(tail_seqs.size()) != n - core)
    throw invalid_input("multiple_summing_ratio: expected one sequence per tail slot");
  if (static_cast<int>(qs.size()) != core)
    throw invalid_input("multiple_summing_ratio: expected one q per core slot");
  if (!(p >= 1.0) || std::isinf(p))
    throw invalid_input("multiple_summing_ratio: p in [1, inf)");
  if (!(C > 0.0)) throw invalid_input("multiple_summing_ratio: C > 0");

  std::size_t tuples = 1;
  for (const auto& seq : core_seqs) {
    if (seq.empty()) return 0.0;
    tuples *= seq.size();
  }
  for (const auto& seq : tail_seqs)
    if (seq.size() != tuples)
      throw invalid_input(
          "multiple_summing_ratio: tail sequences must be indexed by the core "
          "tuples");

  std::vector<Vector> args(static_cast<std::size_t>(n));
  const double lhs_pow = pairwise_sum<double>(tuples, [&](std::size_t flat) {
    std::size_t rest = flat;
    for (int k = core - 1; k >= 0; --k) {
      const auto& seq = core_seqs[static_cast<std::size_t>(k)];
      args[static_cast<std::size_t>(k)] = seq[rest % seq.size()];
      rest /= seq.size();
    }
    for (int k = core; k < n; ++k)
      args[static_cast<std::size_t>(k)] =
          tail_seqs[static_cast<std::size_t>(k - core)][flat];
    return std::pow(std::abs(t.eval(args)), p);
  });
  const double lhs = std::pow(lhs_pow, 1.0 / p);
  if (lhs == 0.0) return 0.0;

  NormResult norm;
  if (opts.method == NormMethod::exact)
    norm = sup_norm_linf_exact(t, opts.guard_bits);
  else
    norm = sup_norm_ascent(t, BallSpec{infinite_exponent}, opts.restarts,
                           opts.seed);

  double rhs = C * norm.value;
  for (int k = 0; k < core; ++k)
    rhs *= weak_lq_norm_linf(core_seqs[static_cast<std::size_t>(k)],
                             qs[static_cast<std::size_t>(k)]);
  for (const auto& seq : tail_seqs) rhs *= weak_lq_norm_linf(seq, 1.0);
  if (rhs == 0.0) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

ScanFamily prop90_family(int order, double p) {
  if (order < 2) throw invalid_input("prop90_family: order >= 2");
  ScanFamily fam;
  fam.core = 2;
  fam.order = order;
  fam.p = p;
  fam.tensor = [order](int dim) {
    return prop90_witness(dim, order, prop90_default_sigmas(dim, order));
  };
  fam.sigmas = [order](int dim) { return prop90_default_sigmas(dim, order); };
  return fam;
}

std::vector<ScanPoint> exponent_scan(const ScanFamily& family,
                                     std::span<const double> s_grid,
                                     std::span<const int> dim_grid,
                                     ScanDenominator denom,
                                     const CheckOptions& opts) {
  if (s_grid.empty()) throw invalid_input("exponent_scan: empty s grid");
  if (dim_grid.size() < 3)
    throw invalid_input("exponent_scan: need at least 3 grid points to fit");
  for (std::size_t i = 1; i < dim_grid.size(); ++i)
    if (dim_grid[i] <= dim_grid[i - 1])
      throw invalid_input("exponent_scan: N grid must be increasing");
  if (denom == ScanDenominator::exact && !std::isinf(family.p))
    throw invalid_input(
        "exponent_scan: the exact denominator needs an l_inf family; use "
        "holder or ascent");

  std::vector<double> log_dim, log_denom;
  std::vector<CoefficientTensor> tensors;
  std::vector<std::vector<Bijection>> sigmas;
  for (int dim : dim_grid) {
    tensors.push_back(family.tensor(dim));
    sigmas.push_back(family.sigmas(dim));
    log_dim.push_back(std::log(static_cast<double>(dim)));
    double d;
    switch (denom) {
      case ScanDenominator::holder:
        d = holder_diag_bound(dim, family.p, tensors.back().order());
        break;
      case ScanDenominator::exact:
        d = sup_norm_linf_exact(tensors.back(), opts.guard_bits).value;
        break;
      case ScanDenominator::ascent:
        d = sup_norm_ascent(tensors.back(), BallSpec{family.p}, opts.restarts,
                            opts.seed)
                .value;
        break;
    }
    log_denom.push_back(std::log(d));
  }

  std::vector<ScanPoint> points;
  for (double s : s_grid) {
    std::vector<double> ly(dim_grid.size());
    for (std::size_t i = 0; i < dim_grid.size(); ++i) {
      const double lhs =
          diagonal_restriction_sum(tensors[i], family.core, sigmas[i], s);
      ly[i] = std::log(lhs) - log_denom[i];
    }
    ScanPoint pt;
    pt.s = s;
    pt.slope = ls_slope(log_dim, ly);
    pt.bounded = pt.slope <= 1e-6;
    points.push_back(pt);
  }
  return points;
}

}  // namespace mlab
