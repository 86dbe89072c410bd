#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wl1/error.hpp"
#include "wl1/exact_geometry.hpp"
#include "wl1/exponents.hpp"
#include "wl1/io.hpp"
#include "wl1/model.hpp"
#include "wl1/recovery.hpp"
#include "wl1/thresholds.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "weighted l1 recovery: thresholds, polytope angles, and solvers";
  m.attr("__version__") = wl1::kVersion;

  auto base = py::register_exception<wl1::Error>(m, "Wl1Error");
  py::register_exception<wl1::DomainError>(m, "DomainError", base.ptr());

  py::enum_<wl1::ThresholdKind>(m, "ThresholdKind")
      .value("Weak", wl1::ThresholdKind::Weak)
      .value("Sectional", wl1::ThresholdKind::Sectional)
      .value("Strong", wl1::ThresholdKind::Strong);

  py::class_<wl1::SignalClass>(m, "SignalClass")
      .def(py::init<double, double, double>(), py::arg("gamma"),
           py::arg("p"), py::arg("omega") = 1.0)
      .def_readwrite("gamma", &wl1::SignalClass::gamma)
      .def_readwrite("p", &wl1::SignalClass::p)
      .def_readwrite("omega", &wl1::SignalClass::omega);

  py::class_<wl1::SparsityModel>(m, "SparsityModel")
      .def(py::init<std::vector<wl1::SignalClass>>(), py::arg("classes"))
      .def_property_readonly("size", &wl1::SparsityModel::size)
      .def_property_readonly("support_fraction",
                             &wl1::SparsityModel::support_fraction)
      .def_property_readonly("classes", &wl1::SparsityModel::classes);

  py::class_<wl1::ExternalExponent>(m, "ExternalExponent")
      .def_readonly("value", &wl1::ExternalExponent::value)
      .def_readonly("x0", &wl1::ExternalExponent::x0);

  py::class_<wl1::InternalExponent>(m, "InternalExponent")
      .def_readonly("value", &wl1::InternalExponent::value)
      .def_readonly("s_star", &wl1::InternalExponent::s_star)
      .def_readonly("y", &wl1::InternalExponent::y);

  py::class_<wl1::ExponentWitness>(m, "ExponentWitness")
      .def_readonly("x0", &wl1::ExponentWitness::x0)
      .def_readonly("s_star", &wl1::ExponentWitness::s_star)
      .def_readonly("y", &wl1::ExponentWitness::y)
      .def_readonly("b", &wl1::ExponentWitness::b)
      .def_readonly("omega_prime", &wl1::ExponentWitness::omega_prime)
      .def_readonly("c", &wl1::ExponentWitness::c)
      .def_readonly("lambda_", &wl1::ExponentWitness::lambda)
      .def_readonly("alpha", &wl1::ExponentWitness::alpha);

  py::class_<wl1::ExponentPoint>(m, "ExponentPoint")
      .def_readonly("psi_com", &wl1::ExponentPoint::psi_com)
      .def_readonly("psi_int", &wl1::ExponentPoint::psi_int)
      .def_readonly("psi_ext", &wl1::ExponentPoint::psi_ext)
      .def_readonly("psi_tot", &wl1::ExponentPoint::psi_tot)
      .def_readonly("witness", &wl1::ExponentPoint::witness);

  m.def("psi_com", &wl1::psi_com, py::arg("model"), py::arg("tau"),
        py::arg("kind") = wl1::ThresholdKind::Weak);
  m.def("psi_ext", &wl1::psi_ext, py::arg("model"), py::arg("tau"));
  m.def("psi_int", &wl1::psi_int, py::arg("model"), py::arg("tau"));
  m.def("psi_tot", &wl1::psi_tot, py::arg("model"), py::arg("tau"),
        py::arg("kind") = wl1::ThresholdKind::Weak);

  py::class_<wl1::ThresholdResult>(m, "ThresholdResult")
      .def_readonly("delta_c", &wl1::ThresholdResult::delta_c)
      .def_readonly("kind", &wl1::ThresholdResult::kind)
      .def_readonly("witness_tau", &wl1::ThresholdResult::witness_tau)
      .def_readonly("grid_resolution", &wl1::ThresholdResult::grid_resolution)
      .def_readonly("refine_tol", &wl1::ThresholdResult::refine_tol)
      .def_readonly("max_at_delta", &wl1::ThresholdResult::max_at_delta)
      .def_readonly("max_below_delta",
                    &wl1::ThresholdResult::max_below_delta);

  m.def("delta_c", &wl1::delta_c, py::arg("model"), py::arg("kind"),
        py::arg("grid") = 64, py::arg("tol") = 1e-6,
        py::call_guard<py::gil_scoped_release>());

  py::class_<wl1::WeightCurvePoint>(m, "WeightCurvePoint")
      .def_readonly("omega", &wl1::WeightCurvePoint::omega)
      .def_readonly("delta_c", &wl1::WeightCurvePoint::delta_c);

  py::class_<wl1::OptimalWeight>(m, "OptimalWeight")
      .def_readonly("omega_star", &wl1::OptimalWeight::omega_star)
      .def_readonly("delta_star", &wl1::OptimalWeight::delta_star)
      .def_readonly("curve", &wl1::OptimalWeight::curve);

  m.def("optimal_weight", &wl1::optimal_weight, py::arg("gamma1"),
        py::arg("p1"), py::arg("p2"), py::arg("kind"),
        py::arg("omega_range"), py::arg("search_tol") = 1e-3,
        py::arg("curve_points") = 17, py::arg("grid") = 56,
        py::call_guard<py::gil_scoped_release>());

  py::class_<wl1::RobustnessConstant>(m, "RobustnessConstant")
      .def_readonly("eps1", &wl1::RobustnessConstant::eps1)
      .def_readonly("eps2", &wl1::RobustnessConstant::eps2)
      .def_readonly("p1", &wl1::RobustnessConstant::p1)
      .def_readonly("p2", &wl1::RobustnessConstant::p2)
      .def_readonly("mu", &wl1::RobustnessConstant::mu)
      .def_readonly("value", &wl1::RobustnessConstant::value);

  m.def("robustness_constant", &wl1::robustness_constant, py::arg("eps1"),
        py::arg("eps2"), py::arg("p1"), py::arg("p2"));

  py::class_<wl1::FacePair>(m, "FacePair")
      .def(py::init([](int k1, int k2, int t1, int t2, int n1, int n2,
                       double w1, double w2) {
             return wl1::FacePair{k1, k2, t1, t2, n1, n2, w1, w2};
           }),
           py::arg("k1"), py::arg("k2"), py::arg("t1"), py::arg("t2"),
           py::arg("n1"), py::arg("n2"), py::arg("w1") = 1.0,
           py::arg("w2") = 1.0)
      .def_readwrite("k1", &wl1::FacePair::k1)
      .def_readwrite("k2", &wl1::FacePair::k2)
      .def_readwrite("t1", &wl1::FacePair::t1)
      .def_readwrite("t2", &wl1::FacePair::t2)
      .def_readwrite("n1", &wl1::FacePair::n1)
      .def_readwrite("n2", &wl1::FacePair::n2)
      .def_readwrite("w1", &wl1::FacePair::w1)
      .def_readwrite("w2", &wl1::FacePair::w2);

  py::class_<wl1::FiniteModel>(m, "FiniteModel")
      .def(py::init([](int n1, int n2, int k1, int k2, int m_, double w1,
                       double w2) {
             return wl1::FiniteModel{n1 + n2, n1, n2, k1, k2, m_, w1, w2};
           }),
           py::arg("n1"), py::arg("n2"), py::arg("k1"), py::arg("k2"),
           py::arg("m"), py::arg("w1") = 1.0, py::arg("w2") = 1.0)
      .def_readwrite("n", &wl1::FiniteModel::n)
      .def_readwrite("n1", &wl1::FiniteModel::n1)
      .def_readwrite("n2", &wl1::FiniteModel::n2)
      .def_readwrite("k1", &wl1::FiniteModel::k1)
      .def_readwrite("k2", &wl1::FiniteModel::k2)
      .def_readwrite("m", &wl1::FiniteModel::m)
      .def_readwrite("w1", &wl1::FiniteModel::w1)
      .def_readwrite("w2", &wl1::FiniteModel::w2);

  py::class_<wl1::ExternalAngle>(m, "ExternalAngle")
      .def_readonly("value", &wl1::ExternalAngle::value)
      .def_readonly("log_value", &wl1::ExternalAngle::log_value);

  py::class_<wl1::AngleEstimate>(m, "AngleEstimate")
      .def_readonly("estimate", &wl1::AngleEstimate::estimate)
      .def_readonly("std_err", &wl1::AngleEstimate::std_err)
      .def_readonly("log_estimate", &wl1::AngleEstimate::log_estimate)
      .def_readonly("log_std_err", &wl1::AngleEstimate::log_std_err);

  m.def("external_angle", &wl1::external_angle, py::arg("pair"));
  m.def("internal_angle", &wl1::internal_angle, py::arg("pair"),
        py::arg("mc_samples"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<wl1::BoundTerm>(m, "BoundTerm")
      .def_readonly("t1", &wl1::BoundTerm::t1)
      .def_readonly("t2", &wl1::BoundTerm::t2)
      .def_readonly("log_coeff", &wl1::BoundTerm::log_coeff)
      .def_readonly("log_internal", &wl1::BoundTerm::log_internal)
      .def_readonly("log_external", &wl1::BoundTerm::log_external)
      .def_readonly("log_term", &wl1::BoundTerm::log_term)
      .def_readonly("term", &wl1::BoundTerm::term)
      .def_readonly("internal_rel_err", &wl1::BoundTerm::internal_rel_err);

  py::class_<wl1::FailureBound>(m, "FailureBound")
      .def_readonly("bound", &wl1::FailureBound::bound)
      .def_readonly("raw", &wl1::FailureBound::raw)
      .def_readonly("clamped", &wl1::FailureBound::clamped)
      .def_readonly("terms", &wl1::FailureBound::terms);

  m.def("failure_bound", &wl1::failure_bound, py::arg("fm"),
        py::arg("mc_samples"), py::arg("seed"),
        py::arg("parity_restricted") = false,
        py::call_guard<py::gil_scoped_release>());

  py::enum_<wl1::NullSpaceVerdict>(m, "NullSpaceVerdict")
      .value("Holds", wl1::NullSpaceVerdict::Holds)
      .value("Violated", wl1::NullSpaceVerdict::Violated)
      .value("Undetermined", wl1::NullSpaceVerdict::Undetermined);

  py::class_<wl1::NullSpaceReport>(m, "NullSpaceReport")
      .def_readonly("verdict", &wl1::NullSpaceReport::verdict)
      .def_readonly("exact", &wl1::NullSpaceReport::exact)
      .def_readonly("worst_margin", &wl1::NullSpaceReport::worst_margin)
      .def_readonly("witness", &wl1::NullSpaceReport::witness);

  m.def("null_space_condition_check", &wl1::null_space_condition_check,
        py::arg("A"), py::arg("K"), py::arg("weights"),
        py::arg("trials") = 200, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::enum_<wl1::LpStatus>(m, "LpStatus")
      .value("Optimal", wl1::LpStatus::Optimal)
      .value("Infeasible", wl1::LpStatus::Infeasible)
      .value("Unbounded", wl1::LpStatus::Unbounded)
      .value("IterLimit", wl1::LpStatus::IterLimit);

  py::class_<wl1::ModelInstance>(m, "ModelInstance")
      .def_readonly("A", &wl1::ModelInstance::A)
      .def_readonly("x0", &wl1::ModelInstance::x0)
      .def_readonly("y", &wl1::ModelInstance::y)
      .def_readonly("weights", &wl1::ModelInstance::weights)
      .def_readonly("class_of", &wl1::ModelInstance::class_of)
      .def_readonly("support", &wl1::ModelInstance::support);

  py::class_<wl1::LpSolution>(m, "LpSolution")
      .def_readonly("status", &wl1::LpSolution::status)
      .def_readonly("x", &wl1::LpSolution::x)
      .def_readonly("objective", &wl1::LpSolution::objective)
      .def_readonly("duality_gap", &wl1::LpSolution::duality_gap)
      .def_readonly("iterations", &wl1::LpSolution::iterations);

  m.def("sample_model_instance", &wl1::sample_model_instance,
        py::arg("model"), py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("solve_weighted_l1", &wl1::solve_weighted_l1, py::arg("A"),
        py::arg("y"), py::arg("weights"), py::arg("tol") = 1e-9,
        py::call_guard<py::gil_scoped_release>());
  m.def("recovery_success", &wl1::recovery_success, py::arg("x0"),
        py::arg("xhat"), py::arg("rel_tol") = 1e-6);
}
