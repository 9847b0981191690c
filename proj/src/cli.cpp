#include "mlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mlab/catalog.hpp"
#include "mlab/ksz.hpp"
#include "mlab/norms.hpp"
#include "mlab/pairing.hpp"
#include "mlab/tensor.hpp"

namespace mlab::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell_text(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_float()) return fmt(c.get<double>());
  if (c.is_boolean()) return c.get<bool>() ? "true" : "false";
  return c.dump();
}

// Buffers one tabular result and renders it in the requested format once.
class Emitter {
 public:
  Emitter(std::vector<std::string> columns, std::string format)
      : columns_(std::move(columns)), format_(std::move(format)) {}

  void row(std::vector<json> cells) { rows_.push_back(std::move(cells)); }

  std::string render() const {
    if (format_ == "csv") return render_csv();
    if (format_ == "json-lines") return render_jsonl();
    if (format_ == "table") return render_table();
    throw invalid_input("unknown output format '" + format_ + "'");
  }

 private:
  static std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }

  std::string render_csv() const {
    std::string out = "# schema=1\n";
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out += ",";
      out += columns_[c];
    }
    out += "\n";
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) out += ",";
        out += csv_quote(cell_text(r[c]));
      }
      out += "\n";
    }
    return out;
  }

  std::string render_jsonl() const {
    std::string out;
    for (const auto& r : rows_) {
      json obj = json::object();
      for (std::size_t c = 0; c < r.size() && c < columns_.size(); ++c)
        obj[columns_[c]] = r[c];
      out += obj.dump();
      out += "\n";
    }
    return out;
  }

  std::string render_table() const {
    std::vector<std::size_t> width(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c)
      width[c] = columns_[c].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows_) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line.push_back(cell_text(r[c]));
        if (c < width.size()) width[c] = std::max(width[c], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    std::string out;
    auto pad = [&](const std::string& s, std::size_t w) {
      std::string t = s;
      t.resize(w, ' ');
      return t;
    };
    for (std::size_t c = 0; c < columns_.size(); ++c)
      out += (c ? "  " : "") + pad(columns_[c], width[c]);
    out += "\n";
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c)
        out += (c ? "  " : "") + pad(line[c], width[c]);
      out += "\n";
    }
    return out;
  }

  std::vector<std::string> columns_;
  std::string format_;
  std::vector<std::vector<json>> rows_;
};

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinite_exponent;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw invalid_input("bad exponent '" + text + "'");
  }
}

struct TensorSourceFlags {
  std::string tensor_file;
  bool random_sign = false;
  bool random_uniform = false;
  std::string witness;  // "prop90"
};

void add_tensor_source(CLI::App* cmd, TensorSourceFlags& flags) {
  cmd->add_option("--tensor", flags.tensor_file, "tensor file (flat text format)");
  cmd->add_flag("--random-sign", flags.random_sign, "seeded random +/-1 tensor");
  cmd->add_flag("--random-uniform", flags.random_uniform,
                "seeded random uniform [-1,1] tensor");
  cmd->add_option("--witness", flags.witness, "witness generator (prop90)");
}

// One tensor per requested draw; file/witness sources yield a single tensor.
std::vector<CoefficientTensor> make_tensors(const TensorSourceFlags& flags,
                                            int arity, int dim,
                                            std::uint64_t seed, int count) {
  const int sources = (!flags.tensor_file.empty() ? 1 : 0) +
                      (flags.random_sign ? 1 : 0) +
                      (flags.random_uniform ? 1 : 0) +
                      (!flags.witness.empty() ? 1 : 0);
  if (sources != 1)
    throw invalid_input(
        "choose exactly one tensor source: --tensor, --random-sign, "
        "--random-uniform or --witness");
  std::vector<CoefficientTensor> out;
  if (!flags.tensor_file.empty()) {
    out.push_back(load_tensor(flags.tensor_file));
    return out;
  }
  if (!flags.witness.empty()) {
    if (flags.witness != "prop90")
      throw invalid_input("unknown witness '" + flags.witness + "'");
    if (arity < 2 || dim < 1)
      throw invalid_input("--witness prop90 needs --m (order) and --N");
    out.push_back(prop90_witness(dim, arity, prop90_default_sigmas(dim, arity)));
    return out;
  }
  if (arity < 1 || dim < 1)
    throw invalid_input("random tensors need --m/--n and --N");
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    out.push_back(flags.random_sign ? random_sign_tensor(arity, dim, s)
                                    : random_uniform_tensor(arity, dim, s));
  }
  return out;
}

void deliver(const std::string& text, const std::string& out_path,
             std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw invalid_input("cannot open '" + out_path + "' for writing");
  file << text;
}

struct VerifyConfig {
  std::string instance;
  TensorSourceFlags source;
  int m = 0;  // core arity (or full arity where m = n)
  int n = 0;  // tensor arity for diagonal instances
  int dim = 0;
  std::string p_text = "inf";
  std::string field_text = "real";
  std::string pattern_text;
  std::string bijection = "box";
  std::string norm_method = "exact";
  int restarts = 20;
  int guard_bits = 24;
  int count = 1;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  double constant_override = 0.0;  // 0: keep the catalog constant
  std::string format = "table";
  std::string out_path;
};

int run_verify(const VerifyConfig& cfg, std::ostream& out) {
  const Field field = parse_field(cfg.field_text);
  const double p = parse_exponent(cfg.p_text);

  // the tensor arity: from the file/witness when present, else from flags
  int arity = cfg.n > 0 ? cfg.n : cfg.m;
  std::vector<CoefficientTensor> tensors =
      make_tensors(cfg.source, arity, cfg.dim, cfg.seed, cfg.count);
  arity = tensors.front().order();

  InstanceParams params;
  params.field = field;
  params.p = p;
  if (cfg.instance == "diag43") {
    params.m = 2;
    params.n = arity;
  } else if (cfg.instance == "diagbh") {
    if (cfg.m <= 0)
      throw invalid_input("diagbh needs --m (core arity) below the tensor order");
    params.m = cfg.m;
    params.n = arity;
  } else {
    params.m = arity;
    params.n = arity;
  }
  if (!cfg.pattern_text.empty())
    params.pattern = RepetitionPattern::parse(cfg.pattern_text);

  InequalityInstance inst = make_instance(cfg.instance, params);
  if (cfg.constant_override > 0.0) inst.constant = cfg.constant_override;

  std::vector<Bijection> sigmas;
  for (int k = 0; k < inst.bijection_slots(); ++k)
    sigmas.push_back(
        Bijection::parse(cfg.bijection, inst.core, tensors.front().dim()));

  if (cfg.norm_method != "exact" && cfg.norm_method != "ascent")
    throw invalid_input("unknown norm method '" + cfg.norm_method + "'");
  CheckOptions opts;
  opts.method =
      cfg.norm_method == "ascent" ? NormMethod::ascent : NormMethod::exact;
  opts.restarts = cfg.restarts;
  opts.guard_bits = cfg.guard_bits;

  Emitter em({"instance", "field", "m", "n", "p", "N", "seed", "lhs", "norm",
              "norm_exact", "C", "F", "ratio", "certified", "pass"},
             cfg.format);
  bool violation = false;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    opts.seed = cfg.seed + static_cast<std::uint64_t>(i);
    const RatioReport rep = check_instance(inst, tensors[i], sigmas, opts);
    const bool pass = !rep.certified || rep.ratio <= 1.0 + cfg.tol;
    if (!pass) violation = true;
    em.row({rep.instance, field_name(field), rep.core, rep.arity,
            std::isinf(rep.p) ? json("inf") : json(rep.p), rep.dim,
            rep.seed, rep.lhs, rep.norm.value, rep.norm.exact, rep.constant,
            rep.dim_factor, rep.ratio, rep.certified, pass});
  }
  deliver(em.render(), cfg.out_path, out);
  return violation ? 1 : 0;
}

struct NormConfig {
  TensorSourceFlags source;
  int m = 0;
  int dim = 0;
  std::string ball_text = "inf";
  std::string method = "exact";
  int restarts = 20;
  int guard_bits = 24;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::string out_path;
};

int run_norm(const NormConfig& cfg, std::ostream& out) {
  std::vector<CoefficientTensor> tensors =
      make_tensors(cfg.source, cfg.m, cfg.dim, cfg.seed, 1);
  const CoefficientTensor& t = tensors.front();
  const double p = parse_exponent(cfg.ball_text);

  NormResult res;
  if (cfg.method == "exact") {
    if (!std::isinf(p))
      throw invalid_input("--method exact requires --ball inf");
    res = sup_norm_linf_exact(t, cfg.guard_bits);
  } else if (cfg.method == "ascent") {
    res = sup_norm_ascent(t, BallSpec{p}, cfg.restarts, cfg.seed);
  } else {
    throw invalid_input("unknown norm method '" + cfg.method + "'");
  }

  Emitter em({"value", "kind", "certificate"}, cfg.format);
  std::string cert;
  for (std::size_t s = 0; s < res.certificate.size(); ++s) {
    if (s) cert += " | ";
    for (std::size_t i = 0; i < res.certificate[s].size(); ++i) {
      if (i) cert += " ";
      const Scalar z = res.certificate[s][i];
      cert += fmt(z.real());
      if (t.field() == Field::complex) cert += "+" + fmt(z.imag()) + "i";
    }
  }
  em.row({res.value, res.exact ? "exact" : "lower-bound", cert});
  deliver(em.render(), cfg.out_path, out);
  return 0;
}

struct ConstantsConfig {
  int m_max = 20;
  std::string format = "table";
  std::string out_path;
};

int run_constants(const ConstantsConfig& cfg, std::ostream& out) {
  if (cfg.m_max < 1) throw invalid_input("--m-max must be >= 1");
  Emitter em({"m", "L_complex", "L_real", "bound_complex", "bound_real",
              "exponent"},
             cfg.format);
  for (int m = 1; m <= cfg.m_max; ++m) {
    em.row({m, bh_constant_complex(m), bh_constant_real(m),
            std::pow(static_cast<double>(m), 0.21139),
            1.3 * std::pow(static_cast<double>(m), 0.36482), bh_exponent(m)});
  }
  deliver(em.render(), cfg.out_path, out);
  return 0;
}

struct ScanConfig {
  std::string witness = "prop90";
  int m = 3;
  std::string p_text = "5";
  std::string s_text = "1.5:3.0:0.1";
  std::string dim_text = "2:64:x2";
  std::string denom = "holder";
  int restarts = 20;
  int guard_bits = 24;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;
};

int run_scan(const ScanConfig& cfg, std::ostream& out) {
  if (cfg.witness != "prop90")
    throw invalid_input("unknown scan family '" + cfg.witness + "'");
  const double p = parse_exponent(cfg.p_text);
  const ScanFamily family = prop90_family(cfg.m, p);
  const std::vector<double> s_grid = parse_double_grid(cfg.s_text);
  const std::vector<int> dim_grid = parse_int_grid(cfg.dim_text);

  ScanDenominator denom;
  if (cfg.denom == "holder")
    denom = ScanDenominator::holder;
  else if (cfg.denom == "exact")
    denom = ScanDenominator::exact;
  else if (cfg.denom == "ascent")
    denom = ScanDenominator::ascent;
  else
    throw invalid_input("unknown denominator '" + cfg.denom + "'");

  CheckOptions opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  opts.guard_bits = cfg.guard_bits;

  const auto points = exponent_scan(family, s_grid, dim_grid, denom, opts);
  Emitter em({"s", "slope", "bounded"}, cfg.format);
  for (const auto& pt : points) em.row({pt.s, pt.slope, pt.bounded});
  deliver(em.render(), cfg.out_path, out);
  return 0;
}

struct KszCliConfig {
  std::string pattern_text = "2,1";
  std::string dim_text = "4:16";
  int draws = 200;
  std::uint64_t seed = 42;
  double c_sub = 1.6329931618554521;
  int restarts = 20;
  int guard_bits = 24;
  int threads = 0;
  std::string format = "csv";
  std::string out_path;
};

int run_ksz(const KszCliConfig& cfg, std::ostream& out) {
  const RepetitionPattern pattern = RepetitionPattern::parse(cfg.pattern_text);
  const std::vector<int> dim_grid = parse_int_grid(cfg.dim_text);
  KszConfig kcfg;
  kcfg.draws = cfg.draws;
  kcfg.seed = cfg.seed;
  kcfg.c_sub = cfg.c_sub;
  kcfg.restarts = cfg.restarts;
  kcfg.guard_bits = cfg.guard_bits;
  kcfg.threads = cfg.threads;
  const KszResult result = ksz_experiment(pattern, dim_grid, kcfg);

  Emitter em({"pattern", "N", "draws", "min_sup", "bound_2R", "pass", "slope"},
             cfg.format);
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& pt = result.points[i];
    const bool last = i + 1 == result.points.size();
    em.row({pattern.to_string(), pt.dim, pt.draws, pt.min_sup, pt.bound,
            pt.pass, last ? json(result.slope) : json("")});
  }
  // the pass/fail bound depends on the subgaussian constant; report it
  std::string text = em.render();
  if (cfg.format != "json-lines") {
    const std::string note = "# c_sub=" + fmt(result.c_sub) + "\n";
    const auto schema = text.find('\n');
    if (cfg.format == "csv" && schema != std::string::npos)
      text.insert(schema + 1, note);
    else
      text.insert(0, note);
  }
  deliver(text, cfg.out_path, out);
  return 0;
}

struct CatalogConfig {
  int m = 2;
  int n = 0;
  std::string p_text = "inf";
  std::string field_text = "real";
  std::string out_path;
};

int run_catalog(const CatalogConfig& cfg, std::ostream& out) {
  InstanceParams params;
  params.m = cfg.m;
  params.n = cfg.n;
  params.p = parse_exponent(cfg.p_text);
  params.field = parse_field(cfg.field_text);
  deliver(catalog_listing(params), cfg.out_path, out);
  return 0;
}

}  // namespace

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
  }
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stoi(text));
    return out;
  }
  const auto c2 = text.find(':', c1 + 1);
  const int lo = std::stoi(text.substr(0, c1));
  const int hi = std::stoi(
      text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                  : c2 - c1 - 1));
  if (c2 == std::string::npos) {
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  const std::string step = text.substr(c2 + 1);
  if (!step.empty() && step[0] == 'x') {
    const int factor = std::stoi(step.substr(1));
    if (factor < 2) throw invalid_input("geometric grid factor must be >= 2");
    for (long long v = lo; v <= hi; v *= factor) out.push_back(static_cast<int>(v));
    return out;
  }
  const int s = std::stoi(step);
  if (s < 1) throw invalid_input("grid step must be >= 1");
  for (int v = lo; v <= hi; v += s) out.push_back(v);
  return out;
}

std::vector<double> parse_double_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
  }
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stod(text));
    return out;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw invalid_input("real grids need start:stop:step");
  const double lo = std::stod(text.substr(0, c1));
  const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(text.substr(c2 + 1));
  if (!(step > 0.0)) throw invalid_input("grid step must be positive");
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) out.push_back(lo + i * step);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"mlab: a numerical laboratory for multilinear summing inequalities"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value configuration file");

  ConstantsConfig constants_cfg;
  auto* constants = app.add_subcommand(
      "constants", "best known constants and exponents per degree");
  constants->add_option("--m-max", constants_cfg.m_max, "largest degree");
  constants->add_option("--format", constants_cfg.format,
                        "table, csv or json-lines");
  constants->add_option("--out", constants_cfg.out_path, "write to file");

  VerifyConfig verify_cfg;
  auto* verify =
      app.add_subcommand("verify", "check a catalog inequality on a tensor");
  verify->add_option("--instance", verify_cfg.instance, "catalog instance name")
      ->required();
  add_tensor_source(verify, verify_cfg.source);
  verify->add_option("--m", verify_cfg.m, "core arity (tensor order where m = n)");
  verify->add_option("--n", verify_cfg.n, "tensor arity for diagonal instances");
  verify->add_option("--N", verify_cfg.dim, "dimension");
  verify->add_option("--p", verify_cfg.p_text, "domain exponent (default inf)");
  verify->add_option("--field", verify_cfg.field_text, "real or complex");
  verify->add_option("--pattern", verify_cfg.pattern_text,
                     "repetition pattern for mixed43, e.g. 2,1");
  verify->add_option("--bijection", verify_cfg.bijection,
                     "box, box-diag or cantor");
  verify->add_option("--norm", verify_cfg.norm_method, "exact or ascent");
  verify->add_option("--restarts", verify_cfg.restarts, "ascent restarts");
  verify->add_option("--guard-bits", verify_cfg.guard_bits,
                     "enumeration guard threshold");
  verify->add_option("--count", verify_cfg.count, "number of random tensors");
  verify->add_option("--seed", verify_cfg.seed, "random seed");
  verify->add_option("--tol", verify_cfg.tol, "certified ratio tolerance");
  verify->add_option("--constant", verify_cfg.constant_override,
                     "override the instance constant");
  verify->add_option("--format", verify_cfg.format, "table, csv or json-lines");
  verify->add_option("--out", verify_cfg.out_path, "write to file");

  NormConfig norm_cfg;
  auto* norm = app.add_subcommand("norm", "sup-norm of a tensor");
  add_tensor_source(norm, norm_cfg.source);
  norm->add_option("--m", norm_cfg.m, "tensor order for generated tensors");
  norm->add_option("--N", norm_cfg.dim, "dimension");
  norm->add_option("--ball", norm_cfg.ball_text, "ball exponent (inf, 2, ...)");
  norm->add_option("--method", norm_cfg.method, "exact or ascent");
  norm->add_option("--restarts", norm_cfg.restarts, "ascent restarts");
  norm->add_option("--guard-bits", norm_cfg.guard_bits,
                   "enumeration guard threshold");
  norm->add_option("--seed", norm_cfg.seed, "random seed");
  norm->add_option("--format", norm_cfg.format, "table, csv or json-lines");
  norm->add_option("--out", norm_cfg.out_path, "write to file");

  ScanConfig scan_cfg;
  auto* scan = app.add_subcommand("scan", "exponent scan of a witness family");
  scan->add_option("--witness", scan_cfg.witness, "family (prop90)");
  scan->add_option("--m", scan_cfg.m, "witness order");
  scan->add_option("--p", scan_cfg.p_text, "domain exponent");
  scan->add_option("--s", scan_cfg.s_text, "exponent grid start:stop:step");
  scan->add_option("--N", scan_cfg.dim_text, "dimension grid");
  scan->add_option("--denom", scan_cfg.denom, "holder, exact or ascent");
  scan->add_option("--restarts", scan_cfg.restarts, "ascent restarts");
  scan->add_option("--guard-bits", scan_cfg.guard_bits,
                   "enumeration guard threshold");
  scan->add_option("--seed", scan_cfg.seed, "random seed");
  scan->add_option("--format", scan_cfg.format, "csv, table or json-lines");
  scan->add_option("--out", scan_cfg.out_path, "write to file");

  KszCliConfig ksz_cfg;
  auto* ksz = app.add_subcommand("ksz", "random multilinear growth experiment");
  ksz->add_option("--pattern", ksz_cfg.pattern_text, "repetition pattern, e.g. 2,1");
  ksz->add_option("--N", ksz_cfg.dim_text, "dimension grid");
  ksz->add_option("--draws", ksz_cfg.draws, "draws per dimension");
  ksz->add_option("--seed", ksz_cfg.seed, "master seed");
  ksz->add_option("--csub", ksz_cfg.c_sub, "subgaussian constant");
  ksz->add_option("--restarts", ksz_cfg.restarts, "ascent restarts");
  ksz->add_option("--guard-bits", ksz_cfg.guard_bits,
                  "enumeration guard threshold");
  ksz->add_option("--threads", ksz_cfg.threads,
                  "worker threads (0: MLAB_THREADS or hardware)");
  ksz->add_option("--format", ksz_cfg.format, "csv, table or json-lines");
  ksz->add_option("--out", ksz_cfg.out_path, "write to file");

  CatalogConfig catalog_cfg;
  auto* catalog = app.add_subcommand("catalog", "list the inequality catalog");
  catalog->add_option("--m", catalog_cfg.m, "core arity");
  catalog->add_option("--n", catalog_cfg.n, "arity for diagonal instances");
  catalog->add_option("--p", catalog_cfg.p_text, "domain exponent");
  catalog->add_option("--field", catalog_cfg.field_text, "real or complex");
  catalog->add_option("--out", catalog_cfg.out_path, "write to file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(constants)) return run_constants(constants_cfg, out);
    if (app.got_subcommand(verify)) return run_verify(verify_cfg, out);
    if (app.got_subcommand(norm)) return run_norm(norm_cfg, out);
    if (app.got_subcommand(scan)) return run_scan(scan_cfg, out);
    if (app.got_subcommand(ksz)) return run_ksz(ksz_cfg, out);
    if (app.got_subcommand(catalog)) return run_catalog(catalog_cfg, out);
    err << "no subcommand\n";
    return 2;
  } catch (const guard_error& e) {
    err << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

RunOutcome run_capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunOutcome outcome;
  outcome.code = run(args, out, err);
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

}  // namespace mlab::cli
