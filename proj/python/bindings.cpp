#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl/io.hpp"

namespace py = pybind11;
using namespace qsl;

namespace {

py::dict report_to_dict(const BoundReport& r) {
    py::dict d;
    d["delta_e"] = r.delta_e;
    d["isospectral"] = r.isospectral;
    auto opt = [](const std::optional<double>& v) -> py::object {
        return v ? py::cast(*v) : py::none();
    };
    d["tau_mt"] = opt(r.tau_mt);
    d["tau_g"] = opt(r.tau_g);
    d["tau_fs"] = opt(r.tau_fs);
    d["tau_u"] = opt(r.tau_u);
    py::dict wy;
    wy["value"] = r.tau_wy.value;
    wy["valid"] = r.tau_wy.valid;
    wy["reason"] = r.tau_wy.reason;
    d["tau_wy"] = wy;
    if (r.tau_p) {
        py::dict p;
        p["lower"] = r.tau_p->lower;
        p["upper"] = r.tau_p->upper;
        p["exact"] = opt(r.tau_p->exact);
        p["upper_converged"] = r.tau_p->upper_converged;
        d["tau_p"] = p;
    } else {
        d["tau_p"] = py::none();
    }
    d["warnings"] = r.warnings;
    return d;
}

} // namespace

PYBIND11_MODULE(_qsl, m) {
    m.doc() = "Quantum speed limit bounds and state-space geometry";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def_static("validate", &DensityOperator::validate, py::arg("matrix"),
                    py::arg("tol") = 1e-10)
        .def_property_readonly("matrix", &DensityOperator::matrix)
        .def_property_readonly("dim", &DensityOperator::dim)
        .def_property_readonly("rank", &DensityOperator::rank)
        .def_property_readonly("is_pure", &DensityOperator::is_pure)
        .def_property_readonly("is_faithful", &DensityOperator::is_faithful)
        .def("support_projector", &DensityOperator::support_projector)
        .def("sqrt", &DensityOperator::sqrt);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("hamiltonians", &Trajectory::hamiltonians)
        .def("__len__", &Trajectory::size);

    m.def("expectation", &expectation);
    m.def("variance", &variance);
    m.def("skew_information", &skew_information);
    m.def("j_functional", &j_functional);
    m.def("quantum_fisher_information", &quantum_fisher_information);
    m.def(
        "split_observable",
        [](const Matrix& a, const DensityOperator& rho) {
            ObservableSplit s = split_observable(a, rho);
            return py::make_tuple(s.horizontal, s.vertical);
        },
        "Returns (horizontal, vertical) parts of the observable relative to the state");

    m.def("sqrtm_psd", &sqrtm_psd, py::arg("a"), py::arg("psd_tol") = 1e-10);
    m.def("expm_skew", &expm_skew);

    m.def(
        "grassmann_distance",
        [](const Matrix& p0, const Matrix& p1) {
            return grassmann_distance(Projector::from_matrix(p0), Projector::from_matrix(p1));
        },
        py::arg("p0"), py::arg("p1"));
    m.def(
        "principal_angles",
        [](const Matrix& p0, const Matrix& p1) {
            return principal_angles(Projector::from_matrix(p0), Projector::from_matrix(p1))
                .angles;
        },
        py::arg("p0"), py::arg("p1"));
    m.def("product_grassmann_distance", &product_grassmann_distance, py::arg("rho0"),
          py::arg("rho1"), py::arg("iso_tol") = 1e-8);
    m.def("product_plucker_distance", &product_plucker_distance, py::arg("rho0"),
          py::arg("rho1"), py::arg("iso_tol") = 1e-8);
    m.def("fidelity_sqrt", &fidelity_sqrt);
    m.def("bures_angle", &bures_angle);
    m.def("affinity", &affinity);
    m.def("wy_distance", &wy_distance);
    m.def("isospectral", &isospectral, py::arg("rho0"), py::arg("rho1"),
          py::arg("iso_tol") = 1e-8);

    m.def(
        "evolve",
        [](const DensityOperator& rho0, const Matrix& h, double t0, double t1, int steps) {
            return evolve(rho0, HamiltonianSchedule::constant(h), t0, t1, steps);
        },
        py::arg("rho0"), py::arg("hamiltonian"), py::arg("t0"), py::arg("t1"),
        py::arg("steps"), "Unitary evolution under a constant Hamiltonian");
    m.def("average_energy_uncertainty", &average_energy_uncertainty);
    m.def(
        "metric_speed",
        [](const DensityOperator& rho, const Matrix& h, const std::string& metric) {
            return metric_speed(rho, h, metric_tag_from_string(metric));
        },
        py::arg("rho"), py::arg("hamiltonian"), py::arg("metric"));
    m.def("involution_hamiltonian", &involution_hamiltonian);
    m.def("bures_geodesic_hamiltonian", &bures_geodesic_hamiltonian, py::arg("rho0"),
          py::arg("beta"));
    m.def("bures_speed", &bures_speed);

    m.def("tau_mt", &tau_mt);
    m.def("tau_g", &tau_g);
    m.def("tau_fs", &tau_fs);
    m.def("tau_u", &tau_u);
    m.def("tau_frowis", &tau_frowis);
    m.def(
        "tau_wy",
        [](const DensityOperator& rho0, const DensityOperator& rho1, double delta_e) {
            TauWyResult r = tau_wy(rho0, rho1, delta_e);
            return py::make_tuple(r.value, r.valid, r.reason);
        },
        py::arg("rho0"), py::arg("rho1"), py::arg("delta_e"),
        "Returns (value, valid, reason)");
    m.def(
        "gp_distance",
        [](const DensityOperator& rho0, const DensityOperator& rho1, int restarts,
           int steps, std::uint64_t seed) {
            GpDistanceOptions opts;
            opts.restarts = restarts;
            opts.steps = steps;
            opts.seed = seed;
            GpDistanceResult r = gp_distance_numeric(rho0, rho1, opts);
            py::dict d;
            d["lower"] = r.lower;
            d["upper"] = r.upper;
            d["converged"] = r.converged;
            d["best_defect"] = r.best_defect;
            return d;
        },
        py::arg("rho0"), py::arg("rho1"), py::arg("restarts") = 8, py::arg("steps") = 400,
        py::arg("seed") = 0);
    m.def(
        "compare_bounds",
        [](const DensityOperator& rho0, const DensityOperator& rho1, double delta_e,
           bool shoot_tau_p, std::uint64_t seed) {
            CompareOptions opts;
            opts.shoot_tau_p = shoot_tau_p;
            opts.gp.seed = seed;
            return report_to_dict(compare_bounds(rho0, rho1, delta_e, opts));
        },
        py::arg("rho0"), py::arg("rho1"), py::arg("delta_e"),
        py::arg("shoot_tau_p") = true, py::arg("seed") = 0);
}
