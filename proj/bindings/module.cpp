#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlab/catalog.hpp"
#include "mlab/cli.hpp"
#include "mlab/ksz.hpp"
#include "mlab/norms.hpp"
#include "mlab/pairing.hpp"
#include "mlab/tensor.hpp"

namespace py = pybind11;
using namespace mlab;

namespace {

Field field_from_string(const std::string& s) { return parse_field(s); }

CoefficientTensor tensor_from_entries(int order, int dim,
                                      const std::string& field,
                                      std::vector<Scalar> entries) {
  return CoefficientTensor::from_entries(order, dim, field_from_string(field),
                                         std::move(entries));
}

std::vector<Bijection> make_sigmas(const std::string& name, int arity, int side,
                                   int count) {
  std::vector<Bijection> out;
  for (int i = 0; i < count; ++i)
    out.push_back(Bijection::parse(name, arity, side));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coefficient tensors, sup-norms and summing-inequality checks";

  py::register_exception<guard_error>(m, "GuardError");
  py::register_exception<invalid_input>(m, "InvalidInput");

  py::class_<CoefficientTensor>(m, "CoefficientTensor")
      .def(py::init(&tensor_from_entries), py::arg("order"), py::arg("dim"),
           py::arg("field"), py::arg("entries"))
      .def_property_readonly("order", &CoefficientTensor::order)
      .def_property_readonly("dim", &CoefficientTensor::dim)
      .def_property_readonly("field",
                             [](const CoefficientTensor& t) {
                               return std::string(field_name(t.field()));
                             })
      .def("at", &CoefficientTensor::at, py::arg("index"))
      .def("entries",
           [](const CoefficientTensor& t) {
             return std::vector<Scalar>(t.entries().begin(), t.entries().end());
           })
      .def("eval", &CoefficientTensor::eval, py::arg("args"))
      .def("contract_last", &CoefficientTensor::contract_last, py::arg("v"))
      .def("scaled", &CoefficientTensor::scaled, py::arg("alpha"));

  m.def("save_tensor", &save_tensor, py::arg("path"), py::arg("tensor"));
  m.def("load_tensor", &load_tensor, py::arg("path"));
  m.def("random_sign_tensor", &random_sign_tensor, py::arg("order"),
        py::arg("dim"), py::arg("seed"));
  m.def("random_uniform_tensor", &random_uniform_tensor, py::arg("order"),
        py::arg("dim"), py::arg("seed"));

  py::class_<NormResult>(m, "NormResult")
      .def_readonly("value", &NormResult::value)
      .def_readonly("certificate", &NormResult::certificate)
      .def_readonly("exact", &NormResult::exact);

  m.def("conjugate_exponent", &conjugate_exponent, py::arg("q"));
  m.def("mixed_power_sum", &mixed_power_sum, py::arg("tensor"), py::arg("r"));
  m.def("sup_norm_linf_exact", &sup_norm_linf_exact, py::arg("tensor"),
        py::arg("guard_bits") = 24);
  m.def(
      "sup_norm_ascent",
      [](const CoefficientTensor& t, double p, int restarts,
         std::uint64_t seed) {
        return sup_norm_ascent(t, BallSpec{p}, restarts, seed);
      },
      py::arg("tensor"), py::arg("p"), py::arg("restarts") = 20,
      py::arg("seed") = 0);
  m.def("holder_diag_bound", &holder_diag_bound, py::arg("dim"), py::arg("p"),
        py::arg("order"));
  m.def("weak_lq_norm_linf", &weak_lq_norm_linf, py::arg("xs"), py::arg("q"));
  m.def("weak_lq_norm_lp_estimate", &weak_lq_norm_lp_estimate, py::arg("xs"),
        py::arg("p"), py::arg("q"), py::arg("restarts") = 20,
        py::arg("seed") = 0);

  py::class_<Bijection>(m, "Bijection")
      .def_static("cantor", &Bijection::cantor, py::arg("arity"))
      .def_static(
          "box",
          [](int arity, int side, bool diagonal_first) {
            return Bijection::box(arity, side,
                                  diagonal_first ? BoxOrder::diagonal_first
                                                 : BoxOrder::row_major);
          },
          py::arg("arity"), py::arg("side"), py::arg("diagonal_first") = false)
      .def_property_readonly("arity", &Bijection::arity)
      .def_property_readonly("name", &Bijection::name)
      .def("pair",
           [](const Bijection& b, std::vector<int> tuple) {
             return b.pair(tuple);
           },
           py::arg("tuple"))
      .def("unpair", &Bijection::unpair, py::arg("value"));

  m.def("bh_exponent", &bh_exponent, py::arg("m"));
  m.def("hl_pp_exponent", &hl_pp_exponent, py::arg("m"), py::arg("p"));
  m.def("hl_dsp_exponent", &hl_dsp_exponent, py::arg("m"), py::arg("p"));
  m.def("bh_constant_complex", &bh_constant_complex, py::arg("m"));
  m.def("bh_constant_real", &bh_constant_real, py::arg("m"));

  py::class_<RatioReport>(m, "RatioReport")
      .def_readonly("instance", &RatioReport::instance)
      .def_readonly("arity", &RatioReport::arity)
      .def_readonly("core", &RatioReport::core)
      .def_readonly("dim", &RatioReport::dim)
      .def_readonly("lhs", &RatioReport::lhs)
      .def_readonly("norm", &RatioReport::norm)
      .def_readonly("constant", &RatioReport::constant)
      .def_readonly("dim_factor", &RatioReport::dim_factor)
      .def_readonly("ratio", &RatioReport::ratio)
      .def_readonly("certified", &RatioReport::certified)
      .def_readonly("constant_proven", &RatioReport::constant_proven);

  m.def(
      "check_instance",
      [](const std::string& name, const CoefficientTensor& t, int core,
         double p, const std::string& bijection, const std::string& method,
         int restarts, std::uint64_t seed) {
        InstanceParams params;
        params.field = t.field();
        params.p = p;
        if (name == "diag43") {
          params.m = 2;
          params.n = t.order();
        } else if (name == "diagbh") {
          params.m = core;
          params.n = t.order();
        } else {
          params.m = t.order();
          params.n = t.order();
        }
        const InequalityInstance inst = make_instance(name, params);
        CheckOptions opts;
        opts.method =
            method == "ascent" ? NormMethod::ascent : NormMethod::exact;
        opts.restarts = restarts;
        opts.seed = seed;
        return check_instance(
            inst, t,
            make_sigmas(bijection, inst.core, t.dim(), inst.bijection_slots()),
            opts);
      },
      py::arg("name"), py::arg("tensor"), py::arg("core") = 2,
      py::arg("p") = infinite_exponent, py::arg("bijection") = "box",
      py::arg("method") = "exact", py::arg("restarts") = 20,
      py::arg("seed") = 0);

  m.def(
      "diagonal_restriction_sum",
      [](const CoefficientTensor& t, int core, const std::string& bijection,
         double r) {
        return diagonal_restriction_sum(
            t, core, make_sigmas(bijection, core, t.dim(), t.order() - core), r);
      },
      py::arg("tensor"), py::arg("core"), py::arg("bijection"), py::arg("r"));

  m.def(
      "prop90_witness",
      [](int dim, int order) {
        return prop90_witness(dim, order, prop90_default_sigmas(dim, order));
      },
      py::arg("dim"), py::arg("order"));

  m.def(
      "exponent_scan_prop90",
      [](int order, double p, std::vector<double> s_grid, std::vector<int> dims,
         const std::string& denom) {
        ScanDenominator d;
        if (denom == "holder")
          d = ScanDenominator::holder;
        else if (denom == "exact")
          d = ScanDenominator::exact;
        else if (denom == "ascent")
          d = ScanDenominator::ascent;
        else
          throw invalid_input("unknown denominator '" + denom + "'");
        const auto points = exponent_scan(prop90_family(order, p), s_grid, dims, d);
        std::vector<std::tuple<double, double, bool>> out;
        for (const auto& pt : points) out.emplace_back(pt.s, pt.slope, pt.bounded);
        return out;
      },
      py::arg("order"), py::arg("p"), py::arg("s_grid"), py::arg("dims"),
      py::arg("denom") = "holder");
  m.def("zalduendo_check", &zalduendo_check, py::arg("tensor"), py::arg("p"),
        py::arg("restarts") = 20, py::arg("seed") = 0);

  py::class_<RepetitionPattern>(m, "RepetitionPattern")
      .def(py::init<std::vector<int>>(), py::arg("parts"))
      .def_static("parse", &RepetitionPattern::parse, py::arg("text"))
      .def_readonly("parts", &RepetitionPattern::parts)
      .def_property_readonly("k", &RepetitionPattern::k)
      .def_property_readonly("n", &RepetitionPattern::n)
      .def("cumulative", &RepetitionPattern::cumulative)
      .def("__str__", &RepetitionPattern::to_string);

  py::class_<SignTensor>(m, "SignTensor")
      .def_readonly("dim", &SignTensor::dim)
      .def_readonly("k", &SignTensor::k)
      .def_property_readonly("signs",
                             [](const SignTensor& s) {
                               return std::vector<int>(s.signs.begin(),
                                                       s.signs.end());
                             })
      .def_readonly("seed", &SignTensor::seed);

  m.def("sample_sign_tensor", &sample_sign_tensor, py::arg("dim"), py::arg("k"),
        py::arg("seed"));
  m.def("ksz_process_tensor", &ksz_process_tensor, py::arg("eps"),
        py::arg("pattern"));
  m.def("l2_norm_bound", &l2_norm_bound, py::arg("pattern"), py::arg("dim"));
  m.def("process_second_moment", &process_second_moment, py::arg("pattern"),
        py::arg("dim"), py::arg("x"));

  py::class_<Psi2Estimate>(m, "Psi2Estimate")
      .def_readonly("value", &Psi2Estimate::value)
      .def_readonly("samples", &Psi2Estimate::samples)
      .def_readonly("bracket_width", &Psi2Estimate::bracket_width);

  m.def(
      "psi2_norm_estimate",
      [](std::vector<double> samples, double tol) {
        return psi2_norm_estimate(samples, tol);
      },
      py::arg("samples"), py::arg("tol") = 1e-12);
  m.def("net_cardinality", &net_cardinality, py::arg("n"), py::arg("dim"));
  m.def("threshold_lambda", &threshold_lambda, py::arg("n"), py::arg("dim"),
        py::arg("k"), py::arg("c_sub"));
  m.def("threshold_margin", &threshold_margin, py::arg("n"), py::arg("dim"),
        py::arg("k"), py::arg("c_sub"), py::arg("lambda_"));
  m.def("exponent_floor", &exponent_floor, py::arg("k"));

  py::class_<KszPoint>(m, "KszPoint")
      .def_readonly("dim", &KszPoint::dim)
      .def_readonly("draws", &KszPoint::draws)
      .def_readonly("min_sup", &KszPoint::min_sup)
      .def_readonly("bound", &KszPoint::bound)
      .def_readonly("pass_", &KszPoint::pass)
      .def_readonly("exact_norm", &KszPoint::exact_norm);

  py::class_<KszResult>(m, "KszResult")
      .def_readonly("points", &KszResult::points)
      .def_readonly("slope", &KszResult::slope)
      .def_readonly("c_sub", &KszResult::c_sub);

  m.def(
      "ksz_experiment",
      [](const RepetitionPattern& pattern, std::vector<int> dims, int draws,
         std::uint64_t seed, double c_sub, int threads) {
        KszConfig cfg;
        cfg.draws = draws;
        cfg.seed = seed;
        if (c_sub > 0) cfg.c_sub = c_sub;
        cfg.threads = threads;
        return ksz_experiment(pattern, dims, cfg);
      },
      py::arg("pattern"), py::arg("dims"), py::arg("draws") = 50,
      py::arg("seed") = 42, py::arg("c_sub") = 0.0, py::arg("threads") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        const auto outcome = cli::run_capture(args);
        return py::make_tuple(outcome.code, outcome.out, outcome.err);
      },
      py::arg("args"));
}
