#include "fracdmd/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fracdmd/errors.hpp"

namespace fracdmd {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
  }
  if (!std::isfinite(v)) throw FormatError("line " + std::to_string(line_no) + ": non-finite value");
  return v;
}

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

Eigen::VectorXd vector_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw FormatError(std::string(what) + ": expected a non-empty array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

VectorField field_from(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") return fields::Zero{};
  if (type == "linear-1d") return fields::Linear1d{j.at("lambda").get<double>()};
  if (type == "linear-nd") {
    const json& rows = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    fields::LinearNd f;
    f.matrix.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (static_cast<Eigen::Index>(row.size()) != n) throw FormatError("linear-nd: matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) f.matrix(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return f;
  }
  if (type == "logistic") return fields::Logistic{j.at("r").get<double>(), j.at("capacity").get<double>()};
  if (type == "polynomial") return fields::Polynomial{j.at("coeffs").get<std::vector<double>>()};
  throw FormatError("unknown vector field '" + type + "' (zero|linear-1d|linear-nd|logistic|polynomial)");
}

SimulationSpec simulation_from(const json& j, const fs::path& base) {
  SimulationSpec spec;
  FodeProblem& p = spec.problem;
  p.q = j.at("q").get<double>();
  p.T = j.at("T").get<double>();
  p.dt = j.at("dt").get<double>();
  p.rhs = field_from(j.at("rhs"));
  p.corrector_iterations = j.value("corrector_iterations", 1);
  spec.out_dir = resolve(base, j.value("out_dir", std::string(".")));
  spec.prefix = j.value("prefix", std::string("traj"));

  if (j.contains("initial_conditions")) {
    for (const json& x : j.at("initial_conditions")) spec.initial_conditions.push_back(vector_from(x, "initial_conditions"));
  } else if (j.contains("initial_grid")) {
    // `count` points evenly spaced on the segment lo -> hi.
    const json& g = j.at("initial_grid");
    const Eigen::VectorXd lo = vector_from(g.at("lo"), "initial_grid.lo");
    const Eigen::VectorXd hi = vector_from(g.at("hi"), "initial_grid.hi");
    const int count = g.at("count").get<int>();
    if (lo.size() != hi.size() || count < 1) throw FormatError("initial_grid: lo/hi size mismatch or count < 1");
    for (int k = 0; k < count; ++k) {
      const double a = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
      spec.initial_conditions.push_back(lo + a * (hi - lo));
    }
  } else if (j.contains("initial_random")) {
    const json& g = j.at("initial_random");
    const Eigen::VectorXd lo = vector_from(g.at("lo"), "initial_random.lo");
    const Eigen::VectorXd hi = vector_from(g.at("hi"), "initial_random.hi");
    const int count = g.at("count").get<int>();
    if (lo.size() != hi.size() || count < 1) throw FormatError("initial_random: lo/hi size mismatch or count < 1");
    std::mt19937_64 rng(g.at("seed").get<std::uint64_t>());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < count; ++k) {
      Eigen::VectorXd x(lo.size());
      for (Eigen::Index i = 0; i < lo.size(); ++i) x(i) = lo(i) + unit(rng) * (hi(i) - lo(i));
      spec.initial_conditions.push_back(x);
    }
  } else {
    throw FormatError("simulation block needs initial_conditions, initial_grid or initial_random");
  }

  for (const auto& x0 : spec.initial_conditions) {
    p.x0 = x0;
    try {
      validate(p);
    } catch (const ParameterError& e) {
      throw FormatError(e.what());
    }
  }
  return spec;
}

}  // namespace

TrajectoryFile parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split(trim(line));
      break;
    }
  }
  if (header.size() < 2 || header[0] != "t") throw FormatError("trajectory CSV: header must be 't,x1,...,xn'");
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c] != "x" + std::to_string(c)) {
      throw FormatError("trajectory CSV: column " + std::to_string(c + 1) + " must be named x" + std::to_string(c));
    }
  }
  const std::size_t n = header.size() - 1;

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split(t);
    if (cells.size() != n + 1) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(n + 1) + " columns");
    }
    times.push_back(parse_number(cells[0], line_no));
    for (std::size_t c = 1; c <= n; ++c) values.push_back(parse_number(cells[c], line_no));
  }
  if (times.size() < 2) throw FormatError("trajectory CSV: need at least 2 rows");

  const std::size_t rows = times.size();
  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw FormatError("trajectory CSV: t must be strictly increasing");
  const double dt = span / static_cast<double>(rows - 1);
  for (std::size_t k = 0; k < rows; ++k) {
    if (k > 0 && !(times[k] > times[k - 1])) throw FormatError("trajectory CSV: t must be strictly increasing");
    const double expected = times.front() + static_cast<double>(k) * dt;
    if (std::abs(times[k] - expected) > 1e-9 * span) {
      throw FormatError("trajectory CSV: t is not uniformly spaced at row " + std::to_string(k + 1));
    }
  }

  TrajectoryFile out;
  out.t0 = times.front();
  out.trajectory.dt = dt;
  out.trajectory.states.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t c = 0; c < n; ++c)
      out.trajectory.states(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = values[k * n + c];
  return out;
}

TrajectoryFile read_trajectory_csv(const fs::path& path) {
  try {
    return parse_trajectory_csv(read_text(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_states_csv(const std::vector<double>& times, const Eigen::MatrixXd& states) {
  if (static_cast<Eigen::Index>(times.size()) != states.rows()) {
    throw ParameterError("format_states_csv: row count mismatch");
  }
  std::string out = "t";
  for (Eigen::Index c = 0; c < states.cols(); ++c) out += ",x" + std::to_string(c + 1);
  out += '\n';
  for (Eigen::Index k = 0; k < states.rows(); ++k) {
    append_number(out, times[static_cast<std::size_t>(k)]);
    for (Eigen::Index c = 0; c < states.cols(); ++c) {
      out += ',';
      append_number(out, states(k, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_trajectory_csv(const Trajectory& traj, double t0) {
  std::vector<double> times(traj.samples());
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = t0 + static_cast<double>(k) * traj.dt;
  return format_states_csv(times, traj.states);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  try {
    const json j = json::parse(text);
    RunConfig cfg;
    DecompositionConfig& d = cfg.decomposition;
    d.kernel = parse_kernel(j.value("kernel", std::string("gaussian:mu=1")));
    d.variant = parse_variant(j.value("variant", std::string("fractional")));
    d.q = j.at("q").get<double>();
    d.reg = j.value("reg", 0.0);
    d.quad_refine = j.value("quad_refine", 1);
    d.basis = parse_basis(j.value("basis", std::string("forward")));
    if (j.contains("max_modes") && !j.at("max_modes").is_null()) d.max_modes = j.at("max_modes").get<std::size_t>();
    validate(d);

    for (const json& p : j.at("trajectories")) {
      const fs::path path = resolve(base_dir, p.get<std::string>());
      if (!fs::exists(path)) throw FormatError("trajectory file '" + path.string() + "' does not exist");
      cfg.trajectories.push_back(path);
    }
    if (cfg.trajectories.empty()) throw FormatError("config lists no trajectories");
    cfg.model_out = resolve(base_dir, j.value("model_out", std::string("model.json")));
    cfg.report_out = resolve(base_dir, j.value("report_out", std::string("report.txt")));
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("run config: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("run config: ") + e.what());
  }
}

RunConfig load_run_config(const fs::path& path) {
  return parse_run_config(read_text(path), path.parent_path());
}

std::vector<SimulationSpec> parse_simulation_config(const std::string& text, const fs::path& base_dir) {
  try {
    const json j = json::parse(text);
    std::vector<SimulationSpec> out;
    if (j.contains("problems")) {
      for (const json& block : j.at("problems")) out.push_back(simulation_from(block, base_dir));
    } else {
      out.push_back(simulation_from(j, base_dir));
    }
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("simulation config: ") + e.what());
  }
}

std::vector<SimulationSpec> load_simulation_config(const fs::path& path) {
  return parse_simulation_config(read_text(path), path.parent_path());
}

VectorField parse_vector_field(const std::string& json_text) {
  try {
    return field_from(json::parse(json_text));
  } catch (const json::exception& e) {
    throw FormatError(std::string("vector field: ") + e.what());
  }
}

}  // namespace fracdmd
