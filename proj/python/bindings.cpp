#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vortexbound/errors.hpp"
#include "vortexbound/finitesize.hpp"
#include "vortexbound/fullnumeric.hpp"
#include "vortexbound/model.hpp"
#include "vortexbound/specfun.hpp"
#include "vortexbound/spectrum.hpp"
#include "vortexbound/vortex.hpp"

namespace py = pybind11;
using namespace vortexbound;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bound states of an impurity in a 2D condensate vortex";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    auto accuracy = py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
    auto solver = py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    (void)validation;
    (void)accuracy;
    (void)solver;

    m.attr("DEFAULT_ALPHA") = default_alpha();

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double>(), py::arg("gamma2"), py::arg("alpha") = default_alpha(),
             py::arg("r_trap") = 1000.0)
        .def_property_readonly("gamma2", &ModelParams::gamma2)
        .def_property_readonly("gamma", &ModelParams::gamma)
        .def_property_readonly("alpha", &ModelParams::alpha)
        .def_property_readonly("r_trap", &ModelParams::r_trap)
        .def_property_readonly("gamma_alpha", &ModelParams::gamma_alpha)
        .def_property_readonly("r_alpha", &ModelParams::r_alpha)
        .def("with_gamma2", &ModelParams::with_gamma2)
        .def("with_r_trap", &ModelParams::with_r_trap)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(gamma2=" + std::to_string(p.gamma2()) + ", alpha=" + std::to_string(p.alpha()) +
                   ", r_trap=" + std::to_string(p.r_trap()) + ")";
        });

    // specfun
    m.def("chf_m", [](double a, double b, double x) { return specfun::chf_m(a, b, x); });
    m.def("laguerre", &specfun::laguerre);
    m.def("lower_inc_gamma_fact", &specfun::lower_inc_gamma_fact);
    m.def("chf_m_da", [](unsigned n, double beta, double x) { return specfun::chf_m_da(n, beta, x); });
    m.def("arg_gamma_phase", &specfun::arg_gamma_phase);
    m.def("bessel_k_imag", [](double lam, double x) { return specfun::bessel_k_imag(lam, x); });
    m.def("bessel_k_imag_dx", [](double lam, double x) { return specfun::bessel_k_imag_dx(lam, x); });
    m.def("k_transition", [](double lam) {
        const auto t = specfun::k_transition(lam);
        return py::make_tuple(t.k1, t.k2);
    });
    m.def("k_transition_asymptotic", &specfun::k_transition_asymptotic);
    m.def("transition_beta", &specfun::transition_beta);

    // vortex
    py::enum_<ProfileKind>(m, "ProfileKind")
        .value("Variational", ProfileKind::Variational)
        .value("NumericOde", ProfileKind::NumericOde);
    py::class_<RadialProfile>(m, "RadialProfile")
        .def_static("variational", &RadialProfile::variational, py::arg("alpha") = default_alpha(),
                    py::arg("r_table") = 40.0, py::arg("n_table") = 4000)
        .def("__call__", &RadialProfile::operator())
        .def("derivative", &RadialProfile::derivative)
        .def_property_readonly("kind", &RadialProfile::kind)
        .def_property_readonly("slope0", &RadialProfile::slope0)
        .def_property_readonly("residual", &RadialProfile::residual)
        .def_property_readonly("r", &RadialProfile::r)
        .def_property_readonly("phi", &RadialProfile::phi);
    m.def("solve_vortex_ode", &solve_vortex_ode, py::arg("r_max") = 40.0, py::arg("grid_n") = 4000);
    m.def("effective_potential", &effective_potential);

    // spectrum
    py::class_<Channel>(m, "Channel")
        .def_readonly("ell", &Channel::ell)
        .def_readonly("lambda_", &Channel::lambda)
        .def_readonly("delta", &Channel::delta)
        .def_readonly("n_deep", &Channel::n_deep);
    py::class_<BoundState>(m, "BoundState")
        .def_readonly("ell", &BoundState::ell)
        .def_readonly("p", &BoundState::p)
        .def_readonly("eps", &BoundState::eps)
        .def_readonly("q", &BoundState::q)
        .def_property_readonly("cls", [](const BoundState& s) { return std::string(to_string(s.cls)); })
        .def_readonly("e_over_n0g12", &BoundState::e_over_n0g12)
        .def_readonly("e_over_hbar_omega", &BoundState::e_over_hbar_omega)
        .def_readonly("physical", &BoundState::physical)
        .def_readonly("degeneracy", &BoundState::degeneracy);
    m.def("make_channel", &make_channel);
    m.def("region1_log_deriv", py::overload_cast<double, int, const ModelParams&>(&region1_log_deriv));
    m.def("region2_log_deriv", [](double q, int ell, const ModelParams& p) { return region2_log_deriv(q, ell, p); });
    m.def("find_states_exact", [](const Channel& ch, const ModelParams& p, double q_min) {
        return find_states_exact(ch, p, q_min);
    });
    m.def("theta_ell", py::overload_cast<int, double>(&theta_ell));
    m.def("shallow_spectrum", &shallow_spectrum);
    m.def("deep_spectrum", &deep_spectrum, py::arg("channel"), py::arg("params"), py::arg("exact_k") = false);
    m.def(
        "assemble_spectrum",
        [](const ModelParams& p, int ell_max, int p_max, const std::string& method) {
            return assemble_spectrum(p, ell_max, p_max, parse_method(method));
        },
        py::arg("params"), py::arg("ell_max"), py::arg("p_max"), py::arg("method") = "auto");

    // fullnumeric
    m.def(
        "radial_eigensolve",
        [](const RadialProfile& profile, double gamma2, int ell, double r_max, int n_grid, int n_states,
           double drift_tol) {
            std::vector<double> out;
            const auto prob = EigenProblem::from_profile(profile, gamma2, ell, r_max, n_grid);
            for (const EigenLevel& lv : radial_eigensolve(prob, n_states, drift_tol)) out.push_back(lv.eps);
            return out;
        },
        py::arg("profile"), py::arg("gamma2"), py::arg("ell"), py::arg("r_max"), py::arg("n_grid"),
        py::arg("n_states"), py::arg("drift_tol") = 1e-6);

    // finitesize
    m.def("physical_q_threshold", &physical_q_threshold);
    m.def("solve_onset", &solve_onset);
    m.def("fit_onset", [](int ell, int p, const std::vector<double>& grid) {
        const OnsetFit f = fit_onset(ell, p, grid.empty() ? default_onset_grid() : grid);
        return py::make_tuple(f.c, f.ln_inv_r, f.residual);
    }, py::arg("ell"), py::arg("p"), py::arg("r_grid") = std::vector<double>{});
    m.def("regime_count", &regime_count, py::arg("r_over_xi"), py::arg("gamma2"),
          py::arg("alpha") = default_alpha());
}
