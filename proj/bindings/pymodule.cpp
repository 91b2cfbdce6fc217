#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stiffness_lab/certificates.hpp"
#include "stiffness_lab/closed_form.hpp"
#include "stiffness_lab/criteria.hpp"
#include "stiffness_lab/integrate.hpp"
#include "stiffness_lab/json_io.hpp"
#include "stiffness_lab/special.hpp"
#include "stiffness_lab/transform.hpp"

namespace py = pybind11;
using namespace stifflab;

namespace {

py::dict report_to_dict(const CriterionReport& r) {
    py::dict d;
    d["overall"] = to_string(r.overall);
    d["window"] = py::make_tuple(r.window.start, r.window.end);
    py::list conds;
    for (const auto& c : r.conditions) {
        py::dict jc;
        jc["label"] = c.label;
        jc["status"] = to_string(c.status);
        if (c.first_violation_time.has_value()) {
            jc["first_violation_time"] = *c.first_violation_time;
        }
        if (!c.note.empty()) {
            jc["note"] = c.note;
        }
        conds.append(jc);
    }
    d["conditions"] = conds;
    return d;
}

IntegrationConfig config_from_kwargs(double horizon, double rel_tol, double abs_tol,
                                     double escape_radius, long max_steps,
                                     double max_step, int samples, double bound_factor,
                                     const std::vector<double>& extra_sample_times) {
    IntegrationConfig cfg;
    cfg.horizon = horizon;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.escape_radius = escape_radius;
    cfg.max_steps = max_steps;
    cfg.max_step = max_step;
    cfg.samples = samples;
    cfg.bound_factor = bound_factor;
    cfg.extra_sample_times = extra_sample_times;
    return cfg;
}

} // namespace

PYBIND11_MODULE(stiffness_lab, m) {
    m.doc() = "Boundedness and instability analysis for x'' + a(t)x' - k(t)x = 0";

    // base first: translators are tried newest-first, so derived types must be
    // registered after their base to win
    py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "EvalDomainError");
    py::register_exception<stifflab::OverflowError>(m, "EvalOverflowError");
    py::register_exception<HypothesisError>(m, "HypothesisError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<CoefficientProfile>(m, "Profile")
        .def_static("constant", &CoefficientProfile::constant, py::arg("c"))
        .def_static("power_law", &CoefficientProfile::power_law, py::arg("a"),
                    py::arg("p"), py::arg("t0") = std::nullopt)
        .def_static("exponential", &CoefficientProfile::exponential, py::arg("a"),
                    py::arg("r"))
        .def_static("sum",
                    [](const std::vector<CoefficientProfile>& terms) {
                        return CoefficientProfile::sum(terms);
                    })
        .def("value", &CoefficientProfile::value)
        .def("derivative", &CoefficientProfile::derivative)
        .def("scaled", &CoefficientProfile::scaled)
        .def("to_json", [](const CoefficientProfile& p) { return profile_to_json(p).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return profile_from_json(json::parse(s)); })
        .def("__repr__",
             [](const CoefficientProfile& p) {
                 return "Profile(" + profile_to_json(p).dump() + ")";
             });

    m.def(
        "thm1_check",
        [](double beta, const CoefficientProfile& k, double start, double end) {
            return report_to_dict(thm1_check(beta, k, {start, end}));
        },
        py::arg("beta"), py::arg("k"), py::arg("start"), py::arg("end"));
    m.def(
        "thm2_check",
        [](double omega, const CoefficientProfile& alpha, double start, double end) {
            return report_to_dict(thm2_check(omega, alpha, {start, end}));
        },
        py::arg("omega"), py::arg("alpha"), py::arg("start"), py::arg("end"));
    m.def(
        "chetaev_check",
        [](double beta, const CoefficientProfile& k, double t0, double horizon) {
            const auto res = chetaev_instability_check(beta, k, t0, horizon);
            py::dict d;
            d["unstable_certified"] = res.unstable_certified;
            d["cone_slope"] = res.cone_slope;
            if (res.saddle_growth_rate.has_value()) {
                d["saddle_growth_rate"] = *res.saddle_growth_rate;
            }
            return d;
        },
        py::arg("beta"), py::arg("k"), py::arg("t0"), py::arg("horizon") = 100.0);

    m.def(
        "integrate",
        [](const CoefficientProfile& alpha, const CoefficientProfile& k,
           std::tuple<double, double, double> x0, double horizon, double rel_tol,
           double abs_tol, double escape_radius, long max_steps, double max_step,
           int samples, double bound_factor, std::vector<double> extra_sample_times) {
            const auto cfg = config_from_kwargs(horizon, rel_tol, abs_tol, escape_radius,
                                                max_steps, max_step, samples,
                                                bound_factor, extra_sample_times);
            const auto traj = integrate(
                alpha, k, {std::get<0>(x0), std::get<1>(x0), std::get<2>(x0)}, cfg);
            py::dict d;
            d["classification"] = to_string(traj.classification);
            d["steps_accepted"] = traj.stats.steps_accepted;
            d["steps_rejected"] = traj.stats.steps_rejected;
            d["max_norm"] = traj.stats.max_norm;
            if (traj.escape_time.has_value()) {
                d["escape_time"] = *traj.escape_time;
            }
            py::list states;
            for (const auto& s : traj.states) {
                states.append(py::make_tuple(s.t, s.x1, s.x2));
            }
            d["states"] = states;
            return d;
        },
        py::arg("alpha"), py::arg("k"), py::arg("x0"), py::arg("horizon") = 100.0,
        py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-12,
        py::arg("escape_radius") = 0.0, py::arg("max_steps") = 10'000'000L,
        py::arg("max_step") = 0.0, py::arg("samples") = 1000,
        py::arg("bound_factor") = 10.0,
        py::arg("extra_sample_times") = std::vector<double>{});

    m.def("bessel_i", &bessel_i, py::arg("nu"), py::arg("z"), py::arg("scaled") = false);
    m.def("bessel_k", &bessel_k, py::arg("nu"), py::arg("z"), py::arg("scaled") = false);
    m.def("gamma_fn", &gamma_fn, py::arg("x"));

    py::enum_<SolutionFamily>(m, "SolutionFamily")
        .value("Ex3m2", SolutionFamily::Ex3m2)
        .value("Ex4", SolutionFamily::Ex4)
        .value("Ex5x", SolutionFamily::Ex5x);

    py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
        .def(py::init([](SolutionFamily family, double beta, double omega, double m_,
                         double c1, double c2) {
                 return ClosedFormSolution{family, beta, omega, m_, c1, c2};
             }),
             py::arg("family"), py::arg("beta"), py::arg("omega"), py::arg("m") = 1.0,
             py::arg("c1") = 1.0, py::arg("c2") = 0.0)
        .def_readonly("c1", &ClosedFormSolution::c1)
        .def_readonly("c2", &ClosedFormSolution::c2)
        .def("eval", [](const ClosedFormSolution& s, double t) { return solution_eval(s, t); })
        .def("derivative",
             [](const ClosedFormSolution& s, double t) { return solution_derivative(s, t); })
        .def("asymptotic_limit",
             [](const ClosedFormSolution& s) { return asymptotic_limit(s); })
        .def("alpha", [](const ClosedFormSolution& s) { return family_alpha(s); })
        .def("stiffness", [](const ClosedFormSolution& s) { return family_stiffness(s); });

    m.def(
        "fit_constants",
        [](SolutionFamily family, double beta, double omega, double m_,
           std::tuple<double, double, double> x0) {
            return fit_constants(family, beta, omega, m_,
                                 {std::get<0>(x0), std::get<1>(x0), std::get<2>(x0)});
        },
        py::arg("family"), py::arg("beta"), py::arg("omega"), py::arg("m"),
        py::arg("x0"));

    py::enum_<GaugeDirection>(m, "GaugeDirection")
        .value("Thm1Base", GaugeDirection::Thm1Base)
        .value("Thm2Base", GaugeDirection::Thm2Base);

    m.def(
        "reparametrize",
        [](const CoefficientProfile& gauge, double n, GaugeDirection direction,
           double beta, double omega) {
            const auto sys = reparametrize({gauge, n, direction}, beta, omega);
            return py::make_tuple(sys.alpha, sys.k);
        },
        py::arg("gauge"), py::arg("n"), py::arg("direction"), py::arg("beta"),
        py::arg("omega"));
    m.def(
        "corollary_check",
        [](const CoefficientProfile& gauge, double n, GaugeDirection direction,
           double beta, double omega, double start, double end) {
            return report_to_dict(
                corollary_condition_check({gauge, n, direction}, beta, omega,
                                          {start, end}));
        },
        py::arg("gauge"), py::arg("n"), py::arg("direction"), py::arg("beta"),
        py::arg("omega"), py::arg("start"), py::arg("end"));
    m.def(
        "time_map",
        [](const CoefficientProfile& gauge, double n, double tau0, double tau) {
            return time_map({gauge, n, GaugeDirection::Thm1Base}, tau0, tau);
        },
        py::arg("gauge"), py::arg("n"), py::arg("tau0"), py::arg("tau"));
    m.def(
        "inverse_time_map",
        [](const CoefficientProfile& gauge, double n, double tau0, double t) {
            return inverse_time_map({gauge, n, GaugeDirection::Thm1Base}, tau0, t);
        },
        py::arg("gauge"), py::arg("n"), py::arg("tau0"), py::arg("t"));
}
