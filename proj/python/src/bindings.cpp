#include <cmath>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "korobov/approx.hpp"
#include "korobov/cli.hpp"
#include "korobov/complexity.hpp"
#include "korobov/entropy.hpp"
#include "korobov/errors.hpp"
#include "korobov/spectrum.hpp"
#include "korobov/tractability.hpp"

namespace py = pybind11;
using namespace korobov;

namespace {

WeightSpec make_spec(double omega, const std::string& a, const std::string& b) {
    return WeightSpec(omega, SequenceFamily::parse(a), SequenceFamily::parse(b));
}

py::dict verdict_dict(const Verdict& v) {
    py::dict out;
    out["outcome"] = std::string(to_string(v.outcome));
    out["condition"] = v.governing_condition;
    out["condition_text"] = v.condition_text;
    py::list limits;
    for (const auto& lv : v.limit_values) limits.append(py::make_tuple(lv.expression, std::string(to_string(lv.value))));
    out["limits"] = limits;
    out["note"] = v.note;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of korobov_tract";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<UnsupportedQuery>(m, "UnsupportedQuery", domain.ptr());

    py::class_<Caps>(m, "Caps")
        .def(py::init<>())
        .def_readwrite("frontier", &Caps::frontier)
        .def_readwrite("nodes", &Caps::nodes)
        .def_readwrite("terms", &Caps::terms)
        .def_readwrite("ranks", &Caps::ranks)
        .def_readwrite("box", &Caps::box)
        .def_readwrite("points", &Caps::points)
        .def_readwrite("exact_points", &Caps::exact_points)
        .def_readwrite("search_nodes", &Caps::search_nodes)
        .def_static("from_environment", &Caps::from_environment);

    py::class_<WeightSpec>(m, "WeightSpec")
        .def(py::init(&make_spec), py::arg("omega"), py::arg("a"), py::arg("b"),
             "Build a spec from family strings such as 'power:c=1,p=1'.")
        .def_property_readonly("omega", &WeightSpec::omega)
        .def_property_readonly("b_star", &WeightSpec::b_star)
        .def("eval_a", &WeightSpec::eval_a, py::arg("k"))
        .def("eval_b", &WeightSpec::eval_b, py::arg("k"))
        .def("__repr__", [](const WeightSpec& s) {
            return "WeightSpec(omega=" + cli::format_real(s.omega()) + ", a='" + s.a().to_string() + "', b='" +
                   s.b().to_string() + "')";
        });

    m.def("load_spec", [](const std::string& path) { return cli::load_spec(path).spec; }, py::arg("path"));

    m.def(
        "eigenvalues",
        [](const WeightSpec& spec, std::size_t d, std::uint64_t n, const Caps& caps) {
            std::vector<std::pair<double, double>> out;
            for (double e : rank_exponents(spec, d, n, caps)) out.emplace_back(e, std::pow(spec.omega(), e));
            return out;
        },
        py::arg("spec"), py::arg("d"), py::arg("n"), py::arg("caps") = Caps{},
        "(exponent, eigenvalue) pairs for ranks 1..n.");

    m.def(
        "count_lattice",
        [](const WeightSpec& spec, std::size_t d, double budget, const Caps& caps) {
            return count_lattice(spec, d, Threshold{budget}, caps);
        },
        py::arg("spec"), py::arg("d"), py::arg("budget"), py::arg("caps") = Caps{});
    m.def("info_complexity_worst", &info_complexity_worst, py::arg("spec"), py::arg("d"), py::arg("eps"),
          py::arg("caps") = Caps{});
    m.def(
        "info_complexity_avg",
        [](const WeightSpec& spec, std::size_t d, double eps, const std::string& criterion, const Caps& caps) {
            return info_complexity_avg(spec, d, eps, parse_criterion(criterion), caps);
        },
        py::arg("spec"), py::arg("d"), py::arg("eps"), py::arg("criterion") = "abs", py::arg("caps") = Caps{});
    m.def("worst_error", &worst_error, py::arg("spec"), py::arg("d"), py::arg("n"), py::arg("caps") = Caps{});
    m.def("avg_error", &avg_error, py::arg("spec"), py::arg("d"), py::arg("n"), py::arg("caps") = Caps{});
    m.def("initial_avg_error", &initial_avg_error, py::arg("spec"), py::arg("d"), py::arg("caps") = Caps{});
    m.def(
        "trace",
        [](const WeightSpec& spec, std::size_t d, double tau) {
            const auto t = trace_tau(spec, d, tau);
            return py::make_tuple(t.lower, t.point, t.upper);
        },
        py::arg("spec"), py::arg("d"), py::arg("tau") = 1.0, "(lower, point, upper) for sum_j lambda_j^tau.");

    m.def(
        "mc_avg_error",
        [](const WeightSpec& spec, std::size_t d, std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
           unsigned threads) {
            py::gil_scoped_release release;
            const auto r = mc_avg_error(spec, d, n, GaussianDrawConfig{1e-6, seed, samples}, threads);
            py::gil_scoped_acquire acquire;
            py::dict out;
            out["estimate"] = r.estimate;
            out["standard_error"] = r.standard_error;
            out["oracle"] = r.oracle;
            out["z_score"] = r.z_score;
            out["consistent"] = r.consistent();
            return out;
        },
        py::arg("spec"), py::arg("d"), py::arg("n"), py::arg("samples") = 10'000, py::arg("seed") = 0,
        py::arg("threads") = 1);

    m.def(
        "grid_count",
        [](double p, double m_budget, std::size_t d) {
            return py::int_(py::str(grid_count(LpBallQuery{p, m_budget, d}).str()));
        },
        py::arg("p"), py::arg("m"), py::arg("d"), "#{h in Z^d : sum |h_k|^p <= m} as an exact integer.");
    m.def(
        "chain_check",
        [](const std::vector<std::vector<double>>& points, double eps) {
            const auto c = chain_check(FinitePointSet(points), eps);
            return py::make_tuple(c.packing_2eps.size, c.covering_eps.size, c.packing_eps.size);
        },
        py::arg("points"), py::arg("eps"), "(M_2eps, N_eps, M_eps) with the points as covering centers.");

    m.def(
        "classify",
        [](const WeightSpec& spec, const std::string& notion, const std::string& setting, double s, double t) {
            return verdict_dict(classify(spec, TractabilityQuery{parse_notion(notion), parse_setting(setting), s, t}));
        },
        py::arg("spec"), py::arg("notion"), py::arg("setting") = "worst", py::arg("s") = 1.0, py::arg("t") = 1.0);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end in-process; returns (exit code, stdout, stderr).");
}
