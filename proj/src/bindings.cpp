#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "entfb/covariance.hpp"
#include "entfb/entanglement.hpp"
#include "entfb/model.hpp"
#include "entfb/optimize.hpp"
#include "entfb/simulate.hpp"
#include "entfb/sweep.hpp"

namespace py = pybind11;
using namespace entfb;

PYBIND11_MODULE(_entfb, m) {
    m.doc() = "Steady-state entanglement of two damped, parametrically coupled bosonic "
              "modes under Markovian homodyne feedback";

    py::register_exception<Error>(m, "EntfbError");

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&make_params), py::arg("chi"), py::arg("eta"), py::arg("lambda_"),
             py::arg("alpha") = Complex{0.0, 0.0})
        .def_readonly("chi", &ModelParams::chi)
        .def_readonly("eta", &ModelParams::eta)
        .def_readonly("lambda_", &ModelParams::lambda)
        .def_readonly("alpha", &ModelParams::alpha)
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream s;
            s << "ModelParams(chi=" << p.chi << ", eta=" << p.eta << ", lambda_=" << p.lambda
              << ", alpha=(" << p.alpha.real() << (p.alpha.imag() < 0 ? "-" : "+")
              << std::abs(p.alpha.imag()) << "j))";
            return s.str();
        });

    py::class_<CovarianceState>(m, "CovarianceState")
        .def(py::init<const Mat4&>(), py::arg("gamma"))
        .def_property_readonly("matrix", &CovarianceState::matrix)
        .def("mode_block", &CovarianceState::mode_block, py::arg("mode"))
        .def("cross_block", &CovarianceState::cross_block);

    m.def("make_params", &make_params, py::arg("chi"), py::arg("eta"), py::arg("lambda_"),
          py::arg("alpha") = Complex{0.0, 0.0});
    m.def("drift_matrix", [](const ModelParams& p) { return drift_matrix(p).m; });
    m.def("diffusion_matrix", [](const ModelParams& p) { return diffusion_matrix(p).n; });
    m.def("steady_means", [](const ModelParams& p) { return steady_means(p).means; });
    m.def("stability_margin", &stability_margin);
    m.def("drift_eigenvalues", &drift_eigenvalues);

    m.def(
        "solve_lyapunov",
        [](const Mat4& drift, const Mat4& diffusion, double min_margin) {
            return solve_lyapunov(DriftMatrix{drift}, DiffusionMatrix{diffusion}, min_margin);
        },
        py::arg("drift"), py::arg("diffusion"), py::arg("min_margin") = 1e-9);
    m.def("closed_form_covariance", &closed_form_covariance, py::arg("params"),
          py::arg("min_margin") = 1e-9);
    m.def("epr_variance", &epr_variance);

    m.def("symplectic_form", [] { return symplectic_form(); });
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues);
    m.def("is_physical", &is_physical, py::arg("gamma"), py::arg("tol") = 1e-9);
    m.def("partial_transpose", &partial_transpose);
    m.def("pt_zeta", &pt_zeta);
    m.def("log_negativity", &log_negativity);

    py::class_<EntanglementReport>(m, "EntanglementReport")
        .def_readonly("zeta", &EntanglementReport::zeta)
        .def_readonly("log_negativity", &EntanglementReport::log_negativity)
        .def_readonly("nu_min", &EntanglementReport::nu_min)
        .def_readonly("epr_variance", &EntanglementReport::epr_variance);
    m.def("entanglement_report", &entanglement_report);

    py::class_<LambdaInterval>(m, "LambdaInterval")
        .def_readonly("lo", &LambdaInterval::lo)
        .def_readonly("hi", &LambdaInterval::hi);

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("grid_points", &OptimizerConfig::grid_points)
        .def_readwrite("refine_tol", &OptimizerConfig::refine_tol)
        .def_readwrite("stability_margin", &OptimizerConfig::stability_margin);

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("lambda_star", &OptimizationResult::lambda_star)
        .def_readonly("l_fb", &OptimizationResult::l_fb)
        .def_readonly("l_nofb", &OptimizationResult::l_nofb)
        .def_readonly("valid_interval", &OptimizationResult::valid_interval)
        .def_readonly("evaluations", &OptimizationResult::evaluations);

    m.def("valid_lambda_interval", &valid_lambda_interval, py::arg("chi"), py::arg("eta"),
          py::arg("margin") = 1e-9);
    m.def("maximize_log_negativity", &maximize_log_negativity, py::arg("chi"), py::arg("eta"),
          py::arg("cfg") = OptimizerConfig{});

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("burn_in", &SimConfig::burn_in)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("n_traj", &SimConfig::n_traj)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("threads", &SimConfig::threads)
        .def_readwrite("record_series", &SimConfig::record_series);

    py::class_<CurrentStats>(m, "CurrentStats")
        .def_readonly("mean", &CurrentStats::mean)
        .def_readonly("std_error", &CurrentStats::std_error);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def_readonly("time", &TimeSeries::time)
        .def_readonly("value", &TimeSeries::value);

    py::class_<Traj0Series>(m, "Traj0Series")
        .def_readonly("x1", &Traj0Series::x1)
        .def_readonly("y1", &Traj0Series::y1)
        .def_readonly("x2", &Traj0Series::x2)
        .def_readonly("y2", &Traj0Series::y2)
        .def_readonly("current", &Traj0Series::current);

    py::class_<EnsembleStats>(m, "EnsembleStats")
        .def_readonly("gamma_hat", &EnsembleStats::gamma_hat)
        .def_readonly("gamma_se", &EnsembleStats::gamma_se)
        .def_readonly("current", &EnsembleStats::current)
        .def_readonly("series", &EnsembleStats::series);

    m.def("simulate_ensemble", &simulate_ensemble, py::arg("params"), py::arg("cfg"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<CurrentSynthesis>(m, "CurrentSynthesis")
        .def_readonly("mean_current", &CurrentSynthesis::mean_current)
        .def_readonly("std_error", &CurrentSynthesis::std_error)
        .def_readonly("series", &CurrentSynthesis::series);
    m.def("synthesize_current", &synthesize_current, py::arg("params"), py::arg("cfg"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("chi", &SweepRecord::chi)
        .def_readonly("eta", &SweepRecord::eta)
        .def_readonly("lambda_star", &SweepRecord::lambda_star)
        .def_readonly("l_fb", &SweepRecord::l_fb)
        .def_readonly("l_nofb", &SweepRecord::l_nofb)
        .def_readonly("epr_variance_nofb", &SweepRecord::epr_variance_nofb)
        .def_readonly("zeta", &SweepRecord::zeta);

    m.def("evaluate_sweep_point", &evaluate_sweep_point, py::arg("chi"), py::arg("eta"),
          py::arg("cfg") = OptimizerConfig{});
    m.def("run_sweep", &run_sweep, py::arg("chi_min"), py::arg("chi_max"), py::arg("chi_steps"),
          py::arg("etas"), py::arg("cfg") = OptimizerConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_csv_header", &sweep_csv_header);
    m.def("to_csv_row", &to_csv_row);
    m.def("format_sig12", &format_sig12);

#ifdef ENTFB_VERSION
#define ENTFB_STR_IMPL(x) #x
#define ENTFB_STR(x) ENTFB_STR_IMPL(x)
    m.attr("__version__") = ENTFB_STR(ENTFB_VERSION);
#else
    m.attr("__version__") = "dev";
#endif
}
