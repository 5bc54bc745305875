#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracdmd/dmd.hpp"
#include "fracdmd/fode.hpp"
#include "fracdmd/okhs.hpp"

namespace fracdmd {

// One trajectory per CSV file: header "t,x1,...,xn", strictly increasing
// uniform t (checked to 1e-9 of the time span), finite values only.
struct TrajectoryFile {
  double t0 = 0.0;
  Trajectory trajectory;
};

TrajectoryFile parse_trajectory_csv(const std::string& text);
TrajectoryFile read_trajectory_csv(const std::filesystem::path& path);

// Samples are written with 17 significant digits, so parsing reproduces the
// doubles exactly.
std::string format_trajectory_csv(const Trajectory& traj, double t0 = 0.0);
std::string format_states_csv(const std::vector<double>& times, const Eigen::MatrixXd& states);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Decomposition run configuration (JSON). Relative paths are resolved
// against the directory of the config file.
struct RunConfig {
  DecompositionConfig decomposition;
  std::vector<std::filesystem::path> trajectories;
  std::filesystem::path model_out = "model.json";
  std::filesystem::path report_out = "report.txt";
};

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

// One simulation block; every initial condition yields one output file
// named <prefix>_<index>.csv inside out_dir.
struct SimulationSpec {
  FodeProblem problem;  // x0 unused; see initial_conditions
  std::vector<Eigen::VectorXd> initial_conditions;
  std::filesystem::path out_dir = ".";
  std::string prefix = "traj";
};

std::vector<SimulationSpec> parse_simulation_config(const std::string& text, const std::filesystem::path& base_dir);
std::vector<SimulationSpec> load_simulation_config(const std::filesystem::path& path);

VectorField parse_vector_field(const std::string& json_text);

}  // namespace fracdmd
