#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cayleymix/entropic.hpp"
#include "cayleymix/error.hpp"
#include "cayleymix/harness.hpp"
#include "cayleymix/mixingstats.hpp"
#include "cayleymix/spectral.hpp"
#include "cayleymix/typdist.hpp"
#include "cayleymix/walklaw.hpp"

namespace py = pybind11;
using namespace cayleymix;
using nlohmann::json;

namespace {

std::vector<std::vector<std::int64_t>> coords_of(const GeneratorMultiset& gens) {
  std::vector<std::vector<std::int64_t>> out;
  for (const GroupElement& z : gens.elems) out.push_back(z.coords);
  return out;
}

GeneratorMultiset gens_of(const AbelianGroup& g, const std::vector<std::vector<std::int64_t>>& coords) {
  GeneratorMultiset gens;
  for (const auto& c : coords) gens.elems.push_back(g.reduce(c));
  return gens;
}

ExperimentConfig config_of(const std::string& text) {
  ExperimentConfig c = json::parse(text).get<ExperimentConfig>();
  c.validate();
  return c;
}

std::string provenance(const ExperimentConfig& c) {
  json j = c;
  j.erase("workers");
  j.erase("output");
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random walks on random Cayley graphs of finite abelian groups";

  auto base = py::register_exception<Error>(m, "CayleymixError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<LimitExceeded>(m, "LimitExceeded", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<AbelianGroup>(m, "AbelianGroup")
      .def(py::init([](const std::string& literal) { return parse_group_literal(literal); }), py::arg("literal"))
      .def_property_readonly("order", &AbelianGroup::order)
      .def_property_readonly("sides", &AbelianGroup::side_lengths)
      .def_property_readonly("invariant_factors", &AbelianGroup::invariant_factors)
      .def_property_readonly("dim", &AbelianGroup::dim)
      .def_property_readonly("min_side", &AbelianGroup::min_side)
      .def("literal", &AbelianGroup::literal)
      .def("__repr__", [](const AbelianGroup& g) { return "AbelianGroup('" + g.literal() + "')"; });

  m.def(
      "sample_generators",
      [](const AbelianGroup& g, std::size_t k, std::uint64_t seed) { return coords_of(sample_generators(g, k, seed)); },
      py::arg("group"), py::arg("k"), py::arg("seed"));

  py::class_<EntropicSchedule>(m, "Schedule")
      .def_property_readonly("kind", [](const EntropicSchedule& s) { return std::string(to_string(s.kind)); })
      .def_readonly("k", &EntropicSchedule::k)
      .def_readonly("n", &EntropicSchedule::n)
      .def_readonly("t0", &EntropicSchedule::t0)
      .def_readonly("v", &EntropicSchedule::v)
      .def_readonly("omega", &EntropicSchedule::omega)
      .def_readonly("kappa", &EntropicSchedule::kappa)
      .def("t_alpha", &solve_t_alpha, py::arg("alpha"));

  m.def(
      "solve_t0",
      [](const std::string& kind, std::int64_t k, std::uint64_t n) { return solve_t0(parse_walk_kind(kind), k, n); },
      py::arg("kind"), py::arg("k"), py::arg("n"));

  m.def(
      "entropy",
      [](const std::string& kind, double s) { return entropy(make_law(parse_walk_kind(kind), s)); },
      py::arg("kind"), py::arg("s"));
  m.def("entropy_directed_closed_form", &entropy_directed_closed_form, py::arg("s"));
  m.def(
      "law",
      [](const std::string& kind, double s) {
        const LatticeWalkLaw law = make_law(parse_walk_kind(kind), s);
        return py::make_tuple(law.lo(), std::vector<double>(law.pmf().begin(), law.pmf().end()));
      },
      py::arg("kind"), py::arg("s"), "(lo, pmf) with pmf[i] the mass at lo + i");

  m.def("psi", &psi, py::arg("alpha"));

  m.def(
      "tv_curve",
      [](const AbelianGroup& g, const std::vector<std::vector<std::int64_t>>& gens, bool directed,
         const std::vector<double>& times) {
        std::vector<std::tuple<double, double, double>> out;
        for (const CurvePoint& p : tv_curve(g, gens_of(g, gens), directed, times)) out.emplace_back(p.t, p.tv, p.l2);
        return out;
      },
      py::arg("group"), py::arg("gens"), py::arg("directed"), py::arg("times"));

  m.def(
      "walk_distribution",
      [](const AbelianGroup& g, const std::vector<std::vector<std::int64_t>>& gens, bool directed, double t) {
        return walk_distribution(eigenvalues(g, gens_of(g, gens), directed), t).probs;
      },
      py::arg("group"), py::arg("gens"), py::arg("directed"), py::arg("t"));

  m.def(
      "estimate_d_alpha",
      [](const AbelianGroup& g, std::int64_t k, bool directed, double alpha, std::size_t pairs, std::uint64_t seed,
         double omega) {
        const EntropicSchedule sch = solve_t0(directed ? WalkKind::poisson : WalkKind::srw, k, g.order());
        const DAlphaEstimate d = estimate_D_alpha(g, sch, alpha, pairs, seed, omega);
        return py::dict(py::arg("estimate") = d.estimate, py::arg("stderr") = d.std_error,
                        py::arg("p_typ") = d.p_typ, py::arg("accepted") = d.accepted,
                        py::arg("attempted") = d.attempted, py::arg("zero_fraction") = d.zero_fraction,
                        py::arg("r") = d.r);
      },
      py::arg("group"), py::arg("k"), py::arg("directed"), py::arg("alpha"), py::arg("pairs"), py::arg("seed") = 1,
      py::arg("omega") = 0.0);

  m.def(
      "ball_count",
      [](std::int64_t k, double p, double R, bool directed) {
        const BallCount c = ball_count_lp(k, p, R, directed);
        if (c.exactness == Exactness::exact) return py::int_(py::str(c.exact_count.str()));
        return py::int_(static_cast<std::int64_t>(std::llround(c.approx_count)));
      },
      py::arg("k"), py::arg("p"), py::arg("R"), py::arg("directed") = false);
  m.def("reference_radius", &reference_radius, py::arg("k"), py::arg("p"), py::arg("n"),
        py::arg("directed") = false);
  m.def(
      "minimal_radius",
      [](std::int64_t k, double p, double n, double omega, bool directed) {
        return minimal_radius(k, p, n, omega, directed).M;
      },
      py::arg("k"), py::arg("p"), py::arg("n"), py::arg("omega"), py::arg("directed") = false);

  m.def(
      "_run_csv",
      [](const std::string& experiment, const std::string& config_json) {
        const ExperimentConfig c = config_of(config_json);
        const json prov = json::parse(provenance(c));
        std::ostringstream out;
        py::gil_scoped_release release;
        if (experiment == "cutoff-profile") {
          write_rows_csv(out, prov, kCutoffSchema, run_cutoff_profile(c).rows);
        } else if (experiment == "lower-bound-audit") {
          write_rows_csv(out, prov, kAuditSchema, run_lower_bound_audit(c).rows);
        } else if (experiment == "typdist") {
          write_typdist_csv(out, prov, run_typdist_experiment(c));
        } else {
          throw InvalidArgument("unknown experiment '" + experiment + "'");
        }
        return out.str();
      },
      py::arg("experiment"), py::arg("config_json"));

  m.def(
      "validate",
      [](const std::string& config_json) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const ValidationCheck& c : run_validation_suite(config_of(config_json)).checks) {
          out.emplace_back(c.name, c.passed, c.detail);
        }
        return out;
      },
      py::arg("config_json") = "{}");
}
