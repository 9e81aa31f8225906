#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tunneldisp/amplitudes.hpp"
#include "tunneldisp/oracle.hpp"
#include "tunneldisp/pipeline.hpp"

namespace py = pybind11;
using namespace tunneldisp;

PYBIND11_MODULE(tunneldisp, m) {
    m.doc() = "Two-particle tunneling displacement toolkit";

    py::enum_<Convention>(m, "Convention")
        .value("paper", Convention::Paper)
        .value("global_", Convention::Global);
    py::enum_<Branch>(m, "Branch")
        .value("T", Branch::Transmission)
        .value("R", Branch::Reflection);

    py::class_<CaseConfig>(m, "CaseConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &CaseConfig::alpha)
        .def_readwrite("eta", &CaseConfig::eta)
        .def_readwrite("k0", &CaseConfig::k0)
        .def_readwrite("d", &CaseConfig::d)
        .def_readwrite("sigma_xp", &CaseConfig::sigma_xp)
        .def_readwrite("sigma_xb", &CaseConfig::sigma_xb)
        .def_readwrite("xp0", &CaseConfig::xp0)
        .def_readwrite("xb0", &CaseConfig::xb0)
        .def_readwrite("L", &CaseConfig::L)
        .def_readwrite("N", &CaseConfig::N)
        .def_readwrite("tau_fit_start", &CaseConfig::tau_fit_start)
        .def_readwrite("tau_fit_end", &CaseConfig::tau_fit_end)
        .def_readwrite("dtau", &CaseConfig::dtau)
        .def_readwrite("convention", &CaseConfig::convention);

    py::class_<DerivedParams>(m, "DerivedParams")
        .def_readonly("beta", &DerivedParams::beta)
        .def_readonly("sigma_kp", &DerivedParams::sigma_kp)
        .def_readonly("sigma_kb", &DerivedParams::sigma_kb)
        .def_readonly("K0", &DerivedParams::K0)
        .def_readonly("sigma_K", &DerivedParams::sigma_K)
        .def_readonly("sigma_k", &DerivedParams::sigma_k)
        .def_readonly("sigma_X", &DerivedParams::sigma_X)
        .def_readonly("sigma_x", &DerivedParams::sigma_x)
        .def_readonly("tau_max", &DerivedParams::tau_max);

    py::class_<SPPrediction>(m, "SPPrediction")
        .def_readonly("branch", &SPPrediction::branch)
        .def_readonly("K_max", &SPPrediction::K_max)
        .def_readonly("k_max", &SPPrediction::k_max)
        .def_readonly("dxb", &SPPrediction::dxb)
        .def_readonly("dxp", &SPPrediction::dxp)
        .def_readonly("vb", &SPPrediction::vb)
        .def_readonly("vp", &SPPrediction::vp);

    py::class_<BranchKinematics>(m, "BranchKinematics")
        .def_readonly("branch", &BranchKinematics::branch)
        .def_readonly("source", &BranchKinematics::source)
        .def_readonly("dxb", &BranchKinematics::dxb)
        .def_readonly("vb", &BranchKinematics::vb)
        .def_readonly("dxp", &BranchKinematics::dxp)
        .def_readonly("vp", &BranchKinematics::vp);

    py::class_<CaseResult>(m, "CaseResult")
        .def_readonly("label", &CaseResult::label)
        .def_readonly("config", &CaseResult::config)
        .def_readonly("derived", &CaseResult::derived)
        .def_readonly("numerical", &CaseResult::numerical)
        .def_readonly("predicted", &CaseResult::predicted)
        .def_readonly("T_mean", &CaseResult::T_mean)
        .def_readonly("T_spread", &CaseResult::T_spread)
        .def_readonly("norm_min", &CaseResult::norm_min);

    m.def("preset", &preset, py::arg("name"));
    m.def("preset_names", [] { return preset_names(); });
    m.def("derive", &derive, py::arg("config"));
    m.def("validate",
          [](const CaseConfig& c) {
              std::vector<std::string> out;
              for (const auto& v : validate(c)) out.push_back(v.condition);
              return out;
          },
          py::arg("config"), "Violated well-posedness conditions (empty when well posed)");
    m.def("transmission_probability", &transmission_probability, py::arg("k"), py::arg("eta"),
          py::arg("d"));
    m.def("phase_derivative", &phase_derivative, py::arg("k"), py::arg("eta"), py::arg("d"),
          py::arg("convention") = Convention::Paper);
    m.def("reflection_transmission",
          [](double k, double eta, double d, Convention conv) {
              const auto a = amplitude(k, eta, d, conv);
              return std::make_pair(a.r, a.t);
          },
          py::arg("k"), py::arg("eta"), py::arg("d"), py::arg("convention") = Convention::Paper,
          "(r, t) at one relative wavenumber");
    m.def("find_width",
          [](double eta, double k0, const std::string& feature) {
              return find_width(eta, k0, feature_from_string(feature));
          },
          py::arg("eta"), py::arg("k0"), py::arg("feature"));
    m.def("find_kmax", &find_kmax, py::arg("config"), py::arg("branch"));
    m.def("predict", &predict, py::arg("config"), py::arg("branch"));
    m.def("free_packet", &free_packet, py::arg("config"), py::arg("X"), py::arg("x"),
          py::arg("tau"));
    m.def("run_case",
          [](const CaseConfig& c, const std::string& label) { return run_case(c, label); },
          py::arg("config"), py::arg("label") = "custom",
          "Full in-memory experiment (no artifacts written)");
}
