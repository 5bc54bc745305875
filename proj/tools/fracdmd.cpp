// Command-line front end: simulate, decompose, predict, validate, ml-eval.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdmd/dmd.hpp"
#include "fracdmd/errors.hpp"
#include "fracdmd/io.hpp"
#include "fracdmd/validate.hpp"

namespace fs = std::filesystem;
using namespace fracdmd;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kValidation = 4 };

struct DecomposeArgs {
  std::vector<std::string> inputs;
  std::optional<std::string> kernel, variant, basis;
  std::optional<double> order, reg;
  std::optional<int> quad_refine;
  std::optional<std::size_t> max_modes;
  std::optional<std::string> out, report;
};

struct PredictArgs {
  std::string model;
  std::vector<double> x0;
  double horizon = 1.0;
  double dt = 0.01;
  std::optional<std::string> out;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string complex_text(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

int run_simulate(const std::string& config, const std::optional<std::string>& out) {
  const fs::path cfg_path(config);
  std::vector<SimulationSpec> specs = load_simulation_config(cfg_path);
  std::size_t written = 0;
  for (auto& spec : specs) {
    const fs::path dir = out ? fs::path(*out) : spec.out_dir;
    for (std::size_t i = 0; i < spec.initial_conditions.size(); ++i) {
      FodeProblem p = spec.problem;
      p.x0 = spec.initial_conditions[i];
      const Trajectory traj = solve(p);
      const fs::path file = dir / (spec.prefix + "_" + std::to_string(i) + ".csv");
      write_text(file, format_trajectory_csv(traj));
      std::cout << file.string() << '\n';
      ++written;
    }
  }
  std::cout << "wrote " << written << " trajectory file(s)\n";
  return kOk;
}

RunConfig build_run_config(const DecomposeArgs& a) {
  RunConfig rc;
  if (a.inputs.size() == 1 && fs::path(a.inputs[0]).extension() == ".json") {
    rc = load_run_config(a.inputs[0]);
  } else {
    for (const auto& p : a.inputs) {
      if (!fs::exists(p)) throw FormatError("trajectory file '" + p + "' does not exist");
      rc.trajectories.emplace_back(p);
    }
  }
  auto& d = rc.decomposition;
  if (a.kernel) d.kernel = parse_kernel(*a.kernel);
  if (a.variant) d.variant = parse_variant(*a.variant);
  if (a.basis) d.basis = parse_basis(*a.basis);
  if (a.order) d.q = *a.order;
  if (a.reg) d.reg = *a.reg;
  if (a.quad_refine) d.quad_refine = *a.quad_refine;
  if (a.max_modes) d.max_modes = *a.max_modes;
  if (a.out) rc.model_out = *a.out;
  if (a.report) rc.report_out = *a.report;
  validate(d);
  return rc;
}

int run_decompose(const DecomposeArgs& a) {
  const RunConfig rc = build_run_config(a);
  std::vector<Trajectory> trajs;
  for (const auto& p : rc.trajectories) trajs.push_back(read_trajectory_csv(p).trajectory);
  for (const auto& t : trajs) {
    if (t.dim() != trajs.front().dim()) throw FormatError("trajectory files have inconsistent state dimension");
  }

  const FiniteRankModel model = decompose(trajs, rc.decomposition);
  const std::vector<double> errors = training_errors(model);

  std::ostringstream rep;
  const auto& d = rc.decomposition;
  rep << "variant " << to_string(d.variant) << ", q " << fmt("%.17g", d.q) << ", kernel " << to_string(d.kernel)
      << ", reg " << fmt("%.3e", d.reg) << ", quad_refine " << d.quad_refine << ", basis " << to_string(d.basis)
      << "\n";
  rep << "trajectories " << trajs.size() << ", state dimension " << model.dim() << ", rank " << model.rank() << "\n";
  const double rc_g = model.diagnostics.gram_rcond;
  rep << "gram condition estimate " << fmt("%.6e", rc_g > 0.0 ? 1.0 / rc_g : INFINITY) << "\n";
  rep << "eigenvector condition " << fmt("%.6e", model.diagnostics.eigvec_condition) << "\n";
  rep << "\neigenvalues\n";
  for (Eigen::Index i = 0; i < model.eigenvalues.size(); ++i) {
    rep << "  " << i << "  " << complex_text(model.eigenvalues(i)) << "\n";
  }
  rep << "\ntraining relative L2 error\n";
  for (std::size_t k = 0; k < errors.size(); ++k) {
    rep << "  " << rc.trajectories[k].filename().string() << "  " << fmt("%.6e", errors[k]) << "\n";
  }

  write_text(rc.model_out, model_to_json(model));
  write_text(rc.report_out, rep.str());
  std::cout << rep.str() << "\nmodel written to " << rc.model_out.string() << "\nreport written to "
            << rc.report_out.string() << "\n";
  return kOk;
}

int run_predict(const PredictArgs& a) {
  const FiniteRankModel model = model_from_json(read_text(a.model));
  if (!(std::isfinite(a.dt) && a.dt > 0.0)) throw ParameterError("predict: --dt must be positive");
  if (!(std::isfinite(a.horizon) && a.horizon >= 0.0)) throw ParameterError("predict: --T must be >= 0");
  std::vector<double> times;
  const auto steps = static_cast<std::size_t>(std::floor(a.horizon / a.dt + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * a.dt);
  if (times.back() < a.horizon * (1.0 - 1e-12)) times.push_back(a.horizon);

  const Prediction p = predict(model, a.x0, times);
  const std::string csv = format_states_csv(p.times, p.states);
  const std::string diag = "max imaginary part " + fmt("%.3e", p.max_imag) + " (relative " +
                           fmt("%.3e", p.max_imag_rel) + ")\n";
  if (a.out) {
    write_text(*a.out, csv);
    std::cout << diag << "prediction written to " << *a.out << "\n";
  } else {
    std::cout << csv;
    std::cerr << diag;
  }
  return kOk;
}

int run_validate(double perturbation) {
  const auto results = run_validation({perturbation});
  std::cout << format_report(results);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kValidation;
}

int run_ml_eval(double q, double re, double im, const MLParams& params) {
  const std::complex<double> v = mittag_leffler(q, {re, im}, params);
  if (im == 0.0 && v.imag() == 0.0) {
    std::cout << fmt("%.17g", v.real()) << "\n";
  } else {
    std::cout << complex_text(v) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occupation-kernel DMD for time-fractional dynamical systems.\n"
               "Set FRACDMD_THREADS to control the worker count."};
  app.require_subcommand(1);

  std::string sim_config;
  std::optional<std::string> sim_out;
  auto* sim = app.add_subcommand("simulate", "Integrate the fractional IVPs described by a JSON config");
  sim->add_option("config", sim_config, "Simulation config (JSON)")->required();
  sim->add_option("--out", sim_out, "Output directory (overrides out_dir)");

  DecomposeArgs dec;
  auto* dcmd = app.add_subcommand("decompose", "Build a finite-rank model from trajectories");
  dcmd->add_option("inputs", dec.inputs, "Run config (.json) or trajectory CSV files")->required();
  dcmd->add_option("--kernel", dec.kernel, "gaussian:mu=<v> or expdot:mu=<v>");
  dcmd->add_option("--variant", dec.variant, "liouville|fractional");
  dcmd->add_option("--order", dec.order, "Fractional order q in (0, 1]");
  dcmd->add_option("--reg", dec.reg, "Tikhonov regularization");
  dcmd->add_option("--quad-refine", dec.quad_refine, "Quadrature refinement factor");
  dcmd->add_option("--basis", dec.basis, "forward|adjoint eigenvector basis");
  dcmd->add_option("--max-modes", dec.max_modes, "Keep the modes with the smallest |lambda|");
  dcmd->add_option("--out", dec.out, "Model output path");
  dcmd->add_option("--report", dec.report, "Report output path");

  PredictArgs pred;
  auto* pcmd = app.add_subcommand("predict", "Evaluate a model from an initial state");
  pcmd->add_option("model", pred.model, "Model file")->required();
  pcmd->add_option("--x0", pred.x0, "Initial state, comma separated")->required()->delimiter(',');
  pcmd->add_option("--T", pred.horizon, "Final time")->required();
  pcmd->add_option("--dt", pred.dt, "Output step")->required();
  pcmd->add_option("--out", pred.out, "Output CSV (stdout if omitted)");

  double perturbation = 0.0;
  auto* vcmd = app.add_subcommand("validate", "Run the built-in oracle checks");
  vcmd->add_option("--perturb-weights", perturbation, "Relative weight perturbation (negative control)");

  double ml_q = 0.5, ml_re = 0.0, ml_im = 0.0;
  MLParams ml;
  auto* mcmd = app.add_subcommand("ml-eval", "Print the Mittag-Leffler function E_q(z)");
  mcmd->add_option("q", ml_q, "Order")->required();
  mcmd->add_option("z", ml_re, "Argument (real part)")->required();
  mcmd->add_option("im", ml_im, "Imaginary part of the argument");
  mcmd->add_option("--series-radius", ml.series_radius, "Series/asymptotic switch on |z|^(1/q)");
  mcmd->add_option("--max-terms", ml.max_terms, "Series term limit");
  mcmd->add_option("--tol", ml.tol, "Relative truncation tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*sim) return run_simulate(sim_config, sim_out);
    if (*dcmd) return run_decompose(dec);
    if (*pcmd) return run_predict(pred);
    if (*vcmd) return run_validate(perturbation);
    if (*mcmd) return run_ml_eval(ml_q, ml_re, ml_im, ml);
  } catch (const ConditioningError& e) {
    std::cerr << "conditioning error: " << e.what() << "\n";
    return kNumerical;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DivergenceError& e) {
    std::cerr << "solver diverged: " << e.what() << " (last finite state at t = " << e.last_valid_time() << ")\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
