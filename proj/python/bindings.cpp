#include "cnoma/experiments.hpp"
#include "cnoma/special_functions.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cnoma;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ergodic capacities of cooperative NOMA downlinks with an OAM side beam "
              "over Rician fading (Monte Carlo and closed-form series)";

    // Base class first: translators run newest-first, so the derived
    // exception must be registered after its base to win.
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<series_truncation_error>(m, "SeriesTruncationError",
                                                    PyExc_ArithmeticError);

    // special functions
    m.def("upper_incomplete_gamma", &upper_incomplete_gamma, py::arg("a"), py::arg("x"));
    m.def("marcum_q1", &marcum_q1, py::arg("a"), py::arg("b"));
    m.def("exponential_integral_en", &exponential_integral_en, py::arg("n"), py::arg("x"));

    // channel statistics
    py::class_<RicianLink>(m, "RicianLink")
        .def(py::init<double, double>(), py::arg("k_factor"), py::arg("omega"))
        .def_readonly("k_factor", &RicianLink::k_factor)
        .def_readonly("omega", &RicianLink::omega);
    py::class_<LinkTriple>(m, "LinkTriple")
        .def(py::init<RicianLink, RicianLink, RicianLink>(), py::arg("bs_ccu"),
             py::arg("bs_ceu"), py::arg("ccu_ceu"))
        .def_readonly("bs_ccu", &LinkTriple::bs_ccu)
        .def_readonly("bs_ceu", &LinkTriple::bs_ceu)
        .def_readonly("ccu_ceu", &LinkTriple::ccu_ceu);
    py::class_<SeriesControl>(m, "SeriesControl")
        .def(py::init<int, double>(), py::arg("max_order") = 40,
             py::arg("tail_tolerance") = 1e-10)
        .def_readwrite("max_order", &SeriesControl::max_order)
        .def_readwrite("tail_tolerance", &SeriesControl::tail_tolerance);

    m.def(
        "sample_power_gain",
        [](const RicianLink& link, std::uint64_t seed, std::uint64_t trial) {
            auto stream = RandomStream::for_trial(seed, trial);
            return sample_power_gain(link, stream);
        },
        py::arg("link"), py::arg("seed"), py::arg("trial"));
    m.def(
        "cdf_power_gain",
        [](const RicianLink& link, double z, const SeriesControl& c) {
            return cdf_power_gain(link, z, c);
        },
        py::arg("link"), py::arg("z"), py::arg("control") = SeriesControl{});
    m.def(
        "cdf_min_pair",
        [](const RicianLink& x, const RicianLink& y, double z, const SeriesControl& c) {
            return cdf_min_pair(x, y, c, z);
        },
        py::arg("x_link"), py::arg("y_link"), py::arg("z"),
        py::arg("control") = SeriesControl{});
    m.def(
        "cdf_scaled_min",
        [](const RicianLink& w, const RicianLink& y, double p_n1, double z,
           const SeriesControl& c) { return cdf_scaled_min(w, y, p_n1, c, z); },
        py::arg("w_link"), py::arg("y_link"), py::arg("p_n1"), py::arg("z"),
        py::arg("control") = SeriesControl{});

    // OAM channel
    py::class_<OamChannel>(m, "OamChannel")
        .def_readonly("mode", &OamChannel::mode)
        .def_readonly("antennas", &OamChannel::antennas)
        .def_readonly("entries", &OamChannel::entries)
        .def_readonly("singular_values", &OamChannel::singular_values)
        .def("principal_singular_value", &OamChannel::principal_singular_value);
    m.def("build_oam_channel", &build_oam_channel, py::arg("mode"), py::arg("antennas"));
    m.def("oam_sinr", &oam_sinr, py::arg("channel"), py::arg("p_n2"), py::arg("rho"));

    // schemes and Monte Carlo
    py::enum_<Scheme>(m, "Scheme")
        .value("cnoma_oam", Scheme::cnoma_oam)
        .value("cnoma", Scheme::cnoma)
        .value("oma_oam", Scheme::oma_oam);
    py::enum_<BaselineSplit>(m, "BaselineSplit")
        .value("reuse_oam_power", BaselineSplit::reuse_oam_power)
        .value("match_pn1", BaselineSplit::match_pn1);
    py::class_<PowerAllocation>(m, "PowerAllocation")
        .def(py::init<double, double, double, double>(), py::arg("p_n1"), py::arg("p_n2"),
             py::arg("p_f"), py::arg("total") = 1.0)
        .def_readonly("p_n1", &PowerAllocation::p_n1)
        .def_readonly("p_n2", &PowerAllocation::p_n2)
        .def_readonly("p_f", &PowerAllocation::p_f)
        .def_readonly("total", &PowerAllocation::total);
    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def(py::init<double, LinkTriple, OamChannel, PowerAllocation, BaselineSplit>(),
             py::arg("rho_db"), py::arg("links"), py::arg("oam"), py::arg("power"),
             py::arg("baseline") = BaselineSplit::reuse_oam_power)
        .def_readwrite("rho_db", &OperatingPoint::rho_db)
        .def_readwrite("baseline", &OperatingPoint::baseline)
        .def("rho", &OperatingPoint::rho);
    py::class_<SchemeCapacities>(m, "SchemeCapacities")
        .def_readonly("c_ccu", &SchemeCapacities::c_ccu)
        .def_readonly("c_ceu", &SchemeCapacities::c_ceu)
        .def_readonly("c_sum", &SchemeCapacities::c_sum)
        .def_readonly("se_ccu", &SchemeCapacities::se_ccu)
        .def_readonly("se_ceu", &SchemeCapacities::se_ceu)
        .def_readonly("se_sum", &SchemeCapacities::se_sum)
        .def("__repr__", [](const SchemeCapacities& c) {
            std::ostringstream os;
            os << "SchemeCapacities(c_ccu=" << c.c_ccu << ", c_ceu=" << c.c_ceu
               << ", c_sum=" << c.c_sum << ")";
            return os.str();
        });
    m.def("ergodic_capacities", &ergodic_capacities, py::arg("scheme"), py::arg("point"),
          py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    // closed forms
    m.def(
        "d_of_rho",
        [](const RicianLink& x, const RicianLink& y, double rho, const SeriesControl& c) {
            return d_of_rho(x, y, c, rho);
        },
        py::arg("x_link"), py::arg("y_link"), py::arg("rho"),
        py::arg("control") = SeriesControl{});
    m.def(
        "c_x1_exact",
        [](const RicianLink& x, const RicianLink& y, double p_n1, double rho,
           const SeriesControl& c) { return c_x1_exact(x, y, p_n1, c, rho); },
        py::arg("x_link"), py::arg("y_link"), py::arg("p_n1"), py::arg("rho"),
        py::arg("control") = SeriesControl{});
    m.def(
        "c_x2_exact",
        [](const RicianLink& w, const RicianLink& y, double p_n1, double rho,
           const SeriesControl& c) { return c_x2_exact(w, y, p_n1, c, rho); },
        py::arg("w_link"), py::arg("y_link"), py::arg("p_n1"), py::arg("rho"),
        py::arg("control") = SeriesControl{});
    m.def("c_x3_exact", &c_x3_exact, py::arg("oam"), py::arg("p_n2"), py::arg("rho"));
    m.def(
        "exact_scheme_capacities",
        [](const OperatingPoint& point, const SeriesControl& c) {
            return exact_scheme_capacities(point, c);
        },
        py::arg("point"), py::arg("control") = SeriesControl{});

    // experiments
    m.def("reference_operating_point", &reference_operating_point,
          py::arg("rho_db") = 15.0, py::arg("antennas") = 4);
    py::class_<OptimalPn2>(m, "OptimalPn2")
        .def_readonly("p_n2", &OptimalPn2::p_n2)
        .def_readonly("c_sum", &OptimalPn2::c_sum)
        .def_readonly("on_boundary", &OptimalPn2::on_boundary)
        .def_readonly("warning", &OptimalPn2::warning);
    m.def(
        "find_optimal_pn2",
        [](double rho_db, double p_f, double grid_step, const OperatingPoint& fixed,
           const SeriesControl& c) {
            return find_optimal_pn2(rho_db, p_f, grid_step, fixed, c);
        },
        py::arg("rho_db"), py::arg("p_f"), py::arg("grid_step"), py::arg("fixed"),
        py::arg("control") = SeriesControl{});

#ifdef VERSION_INFO
#define STR2(x) #x
#define STR(x) STR2(x)
    m.attr("__version__") = STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
