#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracdmd/dmd.hpp"
#include "fracdmd/errors.hpp"
#include "fracdmd/fode.hpp"
#include "fracdmd/io.hpp"
#include "fracdmd/validate.hpp"

namespace py = pybind11;
using namespace fracdmd;

namespace {

Trajectory make_trajectory(double dt, const Eigen::MatrixXd& states) {
  Trajectory t{dt, states};
  validate(t);
  return t;
}

std::vector<Trajectory> as_trajectories(const py::list& items) {
  std::vector<Trajectory> out;
  for (const auto& item : items) out.push_back(item.cast<Trajectory>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Occupation-kernel DMD for time-fractional dynamical systems";

  auto base = py::register_exception<Error>(m, "FracdmdError");
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  m.def(
      "mittag_leffler",
      [](double q, std::complex<double> z, double series_radius, int max_terms, double tol) {
        return mittag_leffler(q, z, MLParams{series_radius, max_terms, tol});
      },
      py::arg("q"), py::arg("z"), py::arg("series_radius") = MLParams{}.series_radius,
      py::arg("max_terms") = MLParams{}.max_terms, py::arg("tol") = MLParams{}.tol);

  m.def(
      "rl_integral",
      [](const std::vector<double>& values, double dt, double q, double t, double t0) {
        return rl_integral(SampledSignal{t0, dt, values}, q, t);
      },
      py::arg("values"), py::arg("dt"), py::arg("q"), py::arg("t"), py::arg("t0") = 0.0);
  m.def(
      "caputo_derivative",
      [](const std::vector<double>& values, double dt, double q, double t, double t0) {
        return caputo_derivative(SampledSignal{t0, dt, values}, q, t);
      },
      py::arg("values"), py::arg("dt"), py::arg("q"), py::arg("t"), py::arg("t0") = 0.0);
  m.def("singular_weights", &singular_weights, py::arg("q"), py::arg("step"), py::arg("n_intervals"));

  m.def(
      "kernel_eval",
      [](const std::string& spec, const std::vector<double>& x, const std::vector<double>& y) {
        return kernel_eval(parse_kernel(spec), x, y);
      },
      py::arg("kernel"), py::arg("x"), py::arg("y"));

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init(&make_trajectory), py::arg("dt"), py::arg("states"))
      .def_readonly("dt", &Trajectory::dt)
      .def_readonly("states", &Trajectory::states)
      .def_property_readonly("horizon", &Trajectory::horizon)
      .def("__len__", &Trajectory::samples);

  m.def(
      "solve",
      [](double q, const std::string& rhs_json, const Eigen::VectorXd& x0, double T, double dt, int iterations) {
        FodeProblem p;
        p.q = q;
        p.rhs = parse_vector_field(rhs_json);
        p.x0 = x0;
        p.T = T;
        p.dt = dt;
        p.corrector_iterations = iterations;
        py::gil_scoped_release release;
        return solve(p);
      },
      py::arg("q"), py::arg("rhs"), py::arg("x0"), py::arg("T"), py::arg("dt"), py::arg("corrector_iterations") = 1,
      "Solve D^q x = f(x); rhs is a JSON vector-field description such as "
      "'{\"type\": \"linear-1d\", \"lambda\": -1}'.");

  m.def(
      "gram_matrix",
      [](const py::list& trajs, double q, const std::string& kernel, int refine) {
        const auto ts = as_trajectories(trajs);
        py::gil_scoped_release release;
        return gram_matrix(ts, q, parse_kernel(kernel), refine);
      },
      py::arg("trajectories"), py::arg("q"), py::arg("kernel"), py::arg("quad_refine") = 1);
  m.def(
      "interaction_matrix",
      [](const py::list& trajs, double q, const std::string& kernel, const std::string& variant, int refine) {
        const auto ts = as_trajectories(trajs);
        py::gil_scoped_release release;
        return interaction_matrix(ts, q, parse_kernel(kernel), parse_variant(variant), refine);
      },
      py::arg("trajectories"), py::arg("q"), py::arg("kernel"), py::arg("variant"), py::arg("quad_refine") = 1);

  py::class_<FiniteRankModel>(m, "Model")
      .def_property_readonly("variant", [](const FiniteRankModel& f) { return std::string(to_string(f.variant)); })
      .def_readonly("q", &FiniteRankModel::q)
      .def_property_readonly("kernel", [](const FiniteRankModel& f) { return to_string(f.kernel); })
      .def_readonly("reg", &FiniteRankModel::reg)
      .def_readonly("eigenvalues", &FiniteRankModel::eigenvalues)
      .def_readonly("coeffs", &FiniteRankModel::coeffs)
      .def_readonly("modes", &FiniteRankModel::modes)
      .def_property_readonly("gram_rcond", [](const FiniteRankModel& f) { return f.diagnostics.gram_rcond; })
      .def_property_readonly("eigvec_condition",
                             [](const FiniteRankModel& f) { return f.diagnostics.eigvec_condition; })
      .def_property_readonly("rank", &FiniteRankModel::rank)
      .def(
          "predict",
          [](const FiniteRankModel& f, const std::vector<double>& x0, const std::vector<double>& times) {
            py::gil_scoped_release release;
            const Prediction p = predict(f, x0, times);
            return std::make_pair(p.states, p.max_imag_rel);
          },
          py::arg("x0"), py::arg("times"), "Returns (states, relative max imaginary part).")
      .def(
          "eigenfunctions_at",
          [](const FiniteRankModel& f, const std::vector<double>& x0) { return eigenfunctions_at(f, x0); },
          py::arg("x0"))
      .def("training_errors", [](const FiniteRankModel& f) { return training_errors(f); })
      .def("to_json", &model_to_json)
      .def_static("from_json", &model_from_json, py::arg("text"));

  m.def(
      "decompose",
      [](const py::list& trajs, double q, const std::string& kernel, const std::string& variant, double reg,
         int quad_refine, const std::string& basis, std::optional<std::size_t> max_modes) {
        DecompositionConfig cfg;
        cfg.q = q;
        cfg.kernel = parse_kernel(kernel);
        cfg.variant = parse_variant(variant);
        cfg.reg = reg;
        cfg.quad_refine = quad_refine;
        cfg.basis = parse_basis(basis);
        cfg.max_modes = max_modes;
        const auto ts = as_trajectories(trajs);
        py::gil_scoped_release release;
        return decompose(ts, cfg);
      },
      py::arg("trajectories"), py::arg("q"), py::arg("kernel") = "gaussian:mu=1",
      py::arg("variant") = "fractional", py::arg("reg") = 0.0, py::arg("quad_refine") = 1,
      py::arg("basis") = "forward", py::arg("max_modes") = py::none());

  m.def(
      "run_validation",
      [](double perturbation) {
        py::list out;
        for (const auto& r : run_validation({perturbation})) {
          out.append(py::make_tuple(r.name, r.measured, r.tolerance, r.passed));
        }
        return out;
      },
      py::arg("weight_perturbation") = 0.0, "List of (name, measured, tolerance, passed).");
}
